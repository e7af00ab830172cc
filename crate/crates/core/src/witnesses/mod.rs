//! Constructive witnesses: separating finite quotients for amenable
//! residually finite groups, the finite-dimensional Heisenberg
//! representations, detection of finite range, and a free pair in `U(3)`.

mod closure;
mod rep;
mod search;
mod u3;

pub use closure::{factor_through_quotient, finite_range_check, Factorization, FiniteImage, GenWord, RangeOutcome, MAX_SIZE_BOUND};
pub use rep::{heisenberg_irrep, is_coprime, is_scalar_exact, matrix_json, GeneratorRep, HeisenbergParams, Phase};
pub use search::{heisenberg_separation, SearchRanges, SeparationOutcome};
pub use u3::{distance_from_identity, free_group_u3_check, u3_generators, u3_matrices, U3Report};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;

use crate::finite_group::{decompose_regular, FiniteFamily, FiniteGroup};
use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement};
use crate::quotients::{min_injective_quotient, FiniteQuotient};
use crate::seminorms::seminorm;
use crate::tolerances::Config;
use crate::{Error, Result};

/// A finite quotient `q` and a unit vector `η` on it with
/// `‖κ_q(b) η‖ ≥ lower_bound`.
#[derive(Clone, Debug)]
pub struct SeparationWitness {
    pub quotient: FiniteQuotient,
    /// `η`, as coefficients over quotient elements.
    pub vector: Vec<(usize, Complex64)>,
    /// `‖b ∗ ξ‖₂`.
    pub lower_bound: f64,
    /// `S·T`, sorted.
    pub st_set: Vec<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCertificate {
    pub injective: bool,
    /// `‖κ_q(b) η‖₂`.
    pub image_norm: f64,
    pub seminorm: f64,
    pub lower_bound: f64,
    pub sound: bool,
    pub exact: bool,
}

impl WitnessCertificate {
    pub fn passed(&self) -> bool {
        self.injective && self.sound && self.exact
    }
}

impl SeparationWitness {
    /// Rechecks the witness against `b`: injectivity on `S·T`, the image
    /// norm `‖π_q(b)η‖ = ‖b∗ξ‖`, and `seminorm(q, b) ≥ lower_bound`.
    pub fn certify(&self, b: &GroupAlgebraElement, cfg: &Config) -> Result<WitnessCertificate> {
        let injective = self.quotient.is_injective_on(&self.st_set);
        let eta = GroupAlgebraElement::from_terms(self.quotient.target_group(), self.vector.iter().map(|&(x, c)| (Element::Finite(x), c)))?;
        let image_norm = self.quotient.kappa(b)?.convolve(&eta)?.l2_norm();
        let value = seminorm(&self.quotient, b, cfg)?.value;
        Ok(WitnessCertificate {
            injective,
            image_norm,
            seminorm: value,
            lower_bound: self.lower_bound,
            sound: value >= self.lower_bound - cfg.tau_norm,
            exact: (image_norm - self.lower_bound).abs() <= cfg.tau_alg,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quotient": self.quotient.to_json(),
            "vector": self.vector.iter().map(|(x, c)| json!([x, [c.re, c.im]])).collect::<Vec<_>>(),
            "lower_bound": self.lower_bound,
            "st_set": self.st_set.iter().map(|g| self.quotient.source().element_json(g)).collect::<Vec<_>>(),
        })
    }
}

/// For `b` over `ℤᵈ` or the Heisenberg group: the smallest canonical
/// quotient injective on `S·T` (with `S = supp b`, `T = supp ξ`), the image
/// `η` of the normalised `ξ` (default `δ_e`), and the bound `‖b ∗ ξ‖₂`.
pub fn rf_amen_witness(b: &GroupAlgebraElement, xi: Option<&GroupAlgebraElement>, cfg: &Config) -> Result<SeparationWitness> {
    let group = b.group();
    if !matches!(group, DiscreteGroup::Lattice(_) | DiscreteGroup::Heisenberg) {
        return Err(Error::UnsupportedGroup(format!("witnesses need Z^d or the Heisenberg group, got {}", group.label())));
    }
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let xi = match xi {
        Some(x) if x.group() != group => return Err(Error::GroupMismatch),
        Some(x) if x.is_zero() => return Err(Error::ZeroElement),
        Some(x) => x.scale(Complex64::new(1.0 / x.l2_norm(), 0.0)),
        None => GroupAlgebraElement::identity(group.clone()),
    };
    let st: BTreeSet<Element> = b
        .support()
        .iter()
        .flat_map(|s| xi.support().into_iter().map(move |t| (s.clone(), t)))
        .map(|(s, t)| group.mul(&s, &t))
        .collect();
    let st_set: Vec<Element> = st.into_iter().collect();
    let quotient = min_injective_quotient(group, &st_set, cfg)?;
    let vector = quotient.kappa(&xi)?.finite_terms()?;
    let lower_bound = b.convolve(&xi)?.l2_norm();
    Ok(SeparationWitness { quotient, vector, lower_bound, st_set })
}

#[derive(Clone, Debug, Serialize)]
pub struct Z2kReport {
    pub k: usize,
    pub irreps: usize,
    pub all_one_dimensional: bool,
    /// Every matrix entry is exactly `1` or `-1`.
    pub values_exact: bool,
    pub max_image_order: usize,
    pub max_factor_defect: f64,
    pub passed: bool,
}

/// Decomposes the regular representation of `(ℤ/2)^k` and checks that each
/// irrep is a `±1` character whose image has at most two elements and
/// through which the representation factors.
pub fn z2k_range_check(k: usize, seed: u64, cfg: &Config) -> Result<Z2kReport> {
    if k > 8 {
        return Err(Error::InvalidParams("k must be at most 8".into()));
    }
    let f = std::sync::Arc::new(FiniteGroup::build_with_cap(&FiniteFamily::ElementaryAbelian2(k), cfg.order_cap)?);
    let dec = decompose_regular(&f, seed, cfg)?;
    let mut all_one_dimensional = true;
    let mut values_exact = true;
    let mut max_image_order = 0;
    let mut max_factor_defect: f64 = 0.0;
    let group = DiscreteGroup::Finite(f.clone());
    let mut rng = crate::sampling::rng(seed);
    let samples: Vec<GroupAlgebraElement> = (0..4).map(|_| crate::sampling::random_element(&mut rng, &group, 4, 0, 3)).collect();
    for irrep in dec.blocks() {
        all_one_dimensional &= irrep.dim() == 1;
        values_exact &= irrep.matrices().iter().all(|m| m.iter().all(|&c| c == Complex64::new(1.0, 0.0) || c == Complex64::new(-1.0, 0.0)));
        let rep = GeneratorRep::from_irrep(&f, irrep)?;
        match finite_range_check(&rep, 4, cfg)? {
            RangeOutcome::Finite(img) => {
                max_image_order = max_image_order.max(img.order());
                let fac = factor_through_quotient(&rep, &img, &samples, cfg)?;
                max_factor_defect = max_factor_defect.max(fac.max_defect);
            }
            RangeOutcome::Overflow { .. } => max_image_order = usize::MAX,
        }
    }
    let passed = all_one_dimensional && values_exact && max_image_order <= 2 && max_factor_defect <= cfg.tau_alg;
    Ok(Z2kReport { k, irreps: dec.blocks().len(), all_one_dimensional, values_exact, max_image_order, max_factor_defect, passed })
}
