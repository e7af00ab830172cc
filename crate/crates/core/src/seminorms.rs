//! The seminorms `‖a‖_N = ‖κ_N(a)‖`, evaluated as the operator norm of
//! `κ_N(a)` acting on `ℓ²(G/N)` by left convolution.
//!
//! The regular representation of a finite group is faithful on its group
//! algebra, so this is the C* norm of `κ_N(a)`. Every value is bounded above
//! by the `ℓ¹` norm of `a`; a running sup over a refinement chain is a
//! certified lower bound for the (generally uncomputable) norm of `a` in the
//! full group C*-algebra.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::finite_group::{left_convolution_matrix, IrrepDecomposition};
use crate::group_algebra::{DiscreteGroup, GroupAlgebraElement};
use crate::linalg::spectral_norm;
use crate::quotients::{connecting_map, FiniteQuotient};
use crate::tolerances::Config;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    Regular,
    IrrepBlocks,
}

#[derive(Clone, Debug)]
pub struct SeminormValue {
    pub quotient: FiniteQuotient,
    pub value: f64,
    pub method: NormMethod,
    pub l1_bound: f64,
}

impl SeminormValue {
    pub fn to_json(&self) -> Value {
        json!({
            "quotient": self.quotient.to_json(),
            "value": self.value,
            "method": self.method,
            "l1_bound": self.l1_bound,
        })
    }
}

/// Operator norm of an element of a finite group's algebra in the regular
/// representation.
pub fn regular_norm(a: &GroupAlgebraElement) -> Result<f64> {
    let DiscreteGroup::Finite(f) = a.group() else {
        return Err(Error::UnsupportedGroup(format!("regular norm over {}", a.group().label())));
    };
    if a.is_zero() {
        return Ok(0.0);
    }
    Ok(spectral_norm(&left_convolution_matrix(f, &a.finite_terms()?)))
}

pub fn kappa(q: &FiniteQuotient, a: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    q.kappa(a)
}

pub fn seminorm(q: &FiniteQuotient, a: &GroupAlgebraElement, cfg: &Config) -> Result<SeminormValue> {
    if q.order() > cfg.order_cap {
        return Err(Error::OrderCap { order: q.order(), cap: cfg.order_cap });
    }
    let image = q.kappa(a)?;
    Ok(SeminormValue { quotient: q.clone(), value: regular_norm(&image)?, method: NormMethod::Regular, l1_bound: a.l1_norm() })
}

/// The same seminorm computed as the largest block norm over the irreducible
/// blocks of the target.
pub fn seminorm_via_irreps(q: &FiniteQuotient, a: &GroupAlgebraElement, blocks: &IrrepDecomposition) -> Result<SeminormValue> {
    if blocks.blocks().iter().any(|b| b.matrices().len() != q.order()) {
        return Err(Error::InvalidParams("decomposition does not belong to the quotient's target".into()));
    }
    let image = q.kappa(a)?;
    Ok(SeminormValue {
        quotient: q.clone(),
        value: blocks.norm_of(&image.finite_terms()?),
        method: NormMethod::IrrepBlocks,
        l1_bound: a.l1_norm(),
    })
}

#[derive(Clone, Debug)]
pub struct SupSeminorm {
    pub values: Vec<SeminormValue>,
    pub running_sup: Vec<f64>,
    pub sup: f64,
    pub l1_bound: f64,
    /// Per-entry values nondecreasing within `tau_norm`.
    pub monotone: bool,
    /// The lower bound meets the `ℓ¹` upper bound, which pins the norm.
    pub norm_certified: bool,
}

impl SupSeminorm {
    pub fn to_json(&self) -> Value {
        json!({
            "values": self.values.iter().map(|v| json!({"order": v.quotient.order(), "quotient": v.quotient.to_json(), "value": v.value})).collect::<Vec<_>>(),
            "running_sup": self.running_sup,
            "sup": self.sup,
            "l1_bound": self.l1_bound,
            "monotone": self.monotone,
            "norm_certified": self.norm_certified,
        })
    }
}

/// Seminorms along a refinement chain. Entries are evaluated in parallel;
/// results keep schedule order.
pub fn sup_seminorm(group: &DiscreteGroup, a: &GroupAlgebraElement, schedule: &[FiniteQuotient], cfg: &Config) -> Result<SupSeminorm> {
    if a.group() != group {
        return Err(Error::GroupMismatch);
    }
    if let Some(i) = schedule.iter().position(|q| q.source() != group) {
        return Err(Error::NotAChain(i));
    }
    for i in 1..schedule.len() {
        connecting_map(&schedule[i], &schedule[i - 1]).map_err(|_| Error::NotAChain(i))?;
    }
    let values: Vec<SeminormValue> = schedule.par_iter().map(|q| seminorm(q, a, cfg)).collect::<Result<_>>()?;
    let mut running_sup = Vec::with_capacity(values.len());
    let mut sup: f64 = 0.0;
    for v in &values {
        sup = sup.max(v.value);
        running_sup.push(sup);
    }
    let monotone = values.windows(2).all(|w| w[1].value >= w[0].value - cfg.tau_norm);
    let l1_bound = a.l1_norm();
    Ok(SupSeminorm { values, running_sup, sup, l1_bound, monotone, norm_certified: (l1_bound - sup).abs() <= cfg.tau_norm })
}

/// `ℤᵈ` quotients with the uniform moduli given.
pub fn lattice_chain(d: usize, moduli: &[u64], cap: usize) -> Result<Vec<FiniteQuotient>> {
    moduli.iter().map(|&m| FiniteQuotient::modular(vec![m; d], cap)).collect()
}

pub fn heisenberg_chain(moduli: &[u64], cap: usize) -> Result<Vec<FiniteQuotient>> {
    moduli.iter().map(|&m| FiniteQuotient::heisenberg_mod(m, cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::decompose_regular;
    use crate::group_algebra::Element;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zelem(terms: &[(i64, Complex64)]) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(DiscreteGroup::Lattice(1), terms.iter().map(|&(k, v)| (Element::Lattice(vec![k]), v))).unwrap()
    }

    /// max over n-th roots of unity ζ of |Σ a_k ζ^k|.
    fn character_max(terms: &[(i64, Complex64)], n: u64) -> f64 {
        (0..n)
            .map(|j| {
                terms
                    .iter()
                    .map(|&(k, v)| v * Complex64::from_polar(1.0, std::f64::consts::TAU * (j as f64) * (k as f64) / n as f64))
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    fn zq(m: u64) -> FiniteQuotient {
        FiniteQuotient::modular(vec![m], 5000).unwrap()
    }

    #[test]
    fn identity_has_seminorm_one() {
        let cfg = Config::default();
        let e = GroupAlgebraElement::identity(DiscreteGroup::Heisenberg);
        for n in 1..=4 {
            let q = FiniteQuotient::heisenberg_mod(n, 5000).unwrap();
            assert!((seminorm(&q, &e, &cfg).unwrap().value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cyclic_examples_match_character_oracle() {
        let cfg = Config::default();
        let t1 = [(1, c(1.0, 0.0)), (0, c(-1.0, 0.0))];
        let t2 = [(1, c(1.0, 0.0)), (0, c(0.0, 1.0))];
        assert!((character_max(&t1, 4) - 2.0).abs() < 1e-12);
        assert!((character_max(&t2, 4) - 2.0).abs() < 1e-12);
        assert!((seminorm(&zq(4), &zelem(&t1), &cfg).unwrap().value - 2.0).abs() < 1e-12);
        assert!((seminorm(&zq(4), &zelem(&t2), &cfg).unwrap().value - 2.0).abs() < 1e-12);
        for n in 1..=9 {
            let t = [(2, c(1.0, -1.0)), (-1, c(0.5, 0.0)), (5, c(0.0, 2.0))];
            let v = seminorm(&zq(n), &zelem(&t), &cfg).unwrap().value;
            assert!((v - character_max(&t, n)).abs() < 1e-10, "mod {n}");
        }
    }

    #[test]
    fn irrep_method_agrees_on_s3() {
        use crate::finite_group::{build_finite_group, permutation_index, FiniteFamily};
        use std::sync::Arc;
        let s3 = Arc::new(build_finite_group(&FiniteFamily::Symmetric(3)).unwrap());
        let q = FiniteQuotient::by_normal_subgroup(s3.clone(), &[s3.identity()]).unwrap();
        let g = DiscreteGroup::Finite(s3.clone());
        let a = GroupAlgebraElement::from_terms(
            g,
            [(Element::Finite(permutation_index(&[1, 0, 2])), c(1.0, 0.0)), (Element::Finite(permutation_index(&[1, 2, 0])), c(1.0, 0.0))],
        )
        .unwrap();
        let dec = decompose_regular(q.target(), 0, &Config::default()).unwrap();
        let reg = seminorm(&q, &a, &Config::default()).unwrap().value;
        let irr = seminorm_via_irreps(&q, &a, &dec).unwrap().value;
        assert!((reg - irr).abs() < 1e-6);
    }

    #[test]
    fn sup_over_power_of_two_chain() {
        let cfg = Config::default();
        let a = zelem(&[(1, c(1.0, 0.0)), (0, c(0.0, 1.0))]);
        let chain = lattice_chain(1, &[2, 4, 8, 16, 32, 64], 5000).unwrap();
        let s = sup_seminorm(&DiscreteGroup::Lattice(1), &a, &chain, &cfg).unwrap();
        assert!((s.values[0].value - 2f64.sqrt()).abs() < 1e-12);
        assert!((s.running_sup[1] - 2.0).abs() < 1e-12);
        assert!((s.sup - 2.0).abs() < 1e-9);
        assert!(s.monotone && s.norm_certified);

        let b = zelem(&[(1, c(1.0, 0.0)), (0, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        let s = sup_seminorm(&DiscreteGroup::Lattice(1), &b, &lattice_chain(1, &[3, 6, 12], 5000).unwrap(), &cfg).unwrap();
        assert!(s.values.iter().all(|v| (v.value - 3.0).abs() < 1e-12));
    }

    #[test]
    fn non_chain_rejected() {
        let a = zelem(&[(0, c(1.0, 0.0))]);
        let sched = lattice_chain(1, &[4, 6], 5000).unwrap();
        assert!(matches!(sup_seminorm(&DiscreteGroup::Lattice(1), &a, &sched, &Config::default()), Err(Error::NotAChain(1))));
    }

    #[test]
    fn order_cap_enforced() {
        let cfg = Config { order_cap: 10, ..Config::default() };
        let a = zelem(&[(0, c(1.0, 0.0))]);
        assert!(matches!(seminorm(&zq(11), &a, &cfg), Err(Error::OrderCap { .. })));
    }
}
