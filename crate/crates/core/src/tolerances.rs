//! Numerical tolerances and size caps shared by every computation.

use serde::{Deserialize, Serialize};

/// Algebraic identities: unitarity, homomorphism, consistency defects.
pub const TAU_ALG: f64 = 1e-10;
/// Minimum separation between eigenvalue clusters during decomposition.
pub const TAU_SPEC: f64 = 1e-7;
/// Norm comparisons between independently computed quantities.
pub const TAU_NORM: f64 = 1e-6;
/// Entrywise distance under which two matrices are the same group element.
pub const TAU_GROUP: f64 = 1e-8;

/// Largest finite group order accepted for regular-representation work.
pub const ORDER_CAP: usize = 5000;
/// Above this size spectral norms switch from dense SVD to power iteration.
pub const DENSE_SVD_LIMIT: usize = 1000;
/// Default bound on the number of matrices a closure may enumerate.
pub const CLOSURE_CAP: usize = 100_000;
pub const MAX_WORD_LENGTH: usize = 12;
pub const DECOMPOSE_RETRIES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub tau_alg: f64,
    pub tau_norm: f64,
    pub tau_spec: f64,
    pub tau_group: f64,
    pub order_cap: usize,
    pub closure_cap: usize,
    pub max_word_length: usize,
    pub decompose_retries: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tau_alg: TAU_ALG,
            tau_norm: TAU_NORM,
            tau_spec: TAU_SPEC,
            tau_group: TAU_GROUP,
            order_cap: ORDER_CAP,
            closure_cap: CLOSURE_CAP,
            max_word_length: MAX_WORD_LENGTH,
            decompose_retries: DECOMPOSE_RETRIES,
        }
    }
}

impl Config {
    /// Rejects non-positive tolerances and zero caps.
    pub fn validate(&self) -> crate::Result<()> {
        let taus = [
            ("tau_alg", self.tau_alg),
            ("tau_norm", self.tau_norm),
            ("tau_spec", self.tau_spec),
            ("tau_group", self.tau_group),
        ];
        for (name, t) in taus {
            if !(t.is_finite() && t > 0.0) {
                return Err(crate::Error::InvalidConfig(format!("{name} must be positive, got {t}")));
            }
        }
        let caps = [
            ("order_cap", self.order_cap),
            ("closure_cap", self.closure_cap),
            ("max_word_length", self.max_word_length),
            ("decompose_retries", self.decompose_retries),
        ];
        for (name, c) in caps {
            if c == 0 {
                return Err(crate::Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}
