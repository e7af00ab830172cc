use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::closure::{finite_range_check, FiniteImage, RangeOutcome};
use super::rep::{gcd, heisenberg_closed_form, heisenberg_irrep, GeneratorRep, HeisenbergParams, Phase};
use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement};
use crate::linalg::{spectral_norm, CMatrix};
use crate::tolerances::Config;
use crate::{Error, Result};

/// Parameter grid for [`heisenberg_separation`]: `n ≤ max_n`, every `k`
/// prime to `n`, and `α, β` roots of unity of order at most
/// `max_root_order` on the arc `[0, 1/n)` turns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchRanges {
    pub max_n: usize,
    pub max_root_order: usize,
    /// Success means `‖π(a)‖ > threshold`; `None` uses `tau_norm`.
    pub threshold: Option<f64>,
    pub size_bound: usize,
}

impl Default for SearchRanges {
    fn default() -> Self {
        SearchRanges { max_n: 12, max_root_order: 24, threshold: None, size_bound: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub enum SeparationOutcome {
    Found { rep: GeneratorRep, norm: f64, image: FiniteImage, tuples_checked: usize },
    NotFound { tuples_checked: usize, threshold: f64 },
}

impl SeparationOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            SeparationOutcome::Found { rep, norm, image, tuples_checked } => json!({
                "status": "found",
                "params": rep.params(),
                "norm": norm,
                "image_order": image.order(),
                "tuples_checked": tuples_checked,
            }),
            SeparationOutcome::NotFound { tuples_checked, threshold } => json!({
                "status": "not_found",
                "tuples_checked": tuples_checked,
                "threshold": threshold,
            }),
        }
    }
}

/// Reduced fractions `p/q` with `q ≤ max_order` in `[0, 1/n)`, by value.
fn arc_roots(n: usize, max_order: usize) -> Vec<Phase> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for q in 1..=max_order as i64 {
        for p in 0..q {
            if gcd(p, q) == 1 && (p as usize) * n < q as usize {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out.into_iter().map(|(p, q)| Phase::root(p, q)).collect()
}

fn grid(r: &SearchRanges) -> Vec<HeisenbergParams> {
    let mut out = Vec::new();
    for n in 1..=r.max_n {
        let roots = arc_roots(n, r.max_root_order);
        for k in (1..=n).filter(|&k| gcd(k as i64, n as i64) == 1) {
            for &alpha in &roots {
                for &beta in &roots {
                    out.push(HeisenbergParams { n, k, alpha, beta });
                }
            }
        }
    }
    out
}

fn norm_at(p: &HeisenbergParams, terms: &[([i64; 3], num_complex::Complex64)]) -> f64 {
    let mut m = CMatrix::zeros(p.n, p.n);
    for (x, c) in terms {
        m += heisenberg_closed_form(p, *x) * *c;
    }
    spectral_norm(&m)
}

/// The least grid tuple `(n, k, α, β)` with `‖π^(n,k,α,β)(a)‖` above the
/// threshold, together with the finite image of that representation.
pub fn heisenberg_separation(a: &GroupAlgebraElement, ranges: &SearchRanges, cfg: &Config) -> Result<SeparationOutcome> {
    if a.group() != &DiscreteGroup::Heisenberg {
        return Err(Error::UnsupportedGroup(format!("expected the Heisenberg group, got {}", a.group().label())));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if ranges.max_n == 0 || ranges.max_root_order == 0 {
        return Err(Error::InvalidParams("search ranges must be positive".into()));
    }
    let threshold = ranges.threshold.unwrap_or(cfg.tau_norm);
    let terms: Vec<([i64; 3], num_complex::Complex64)> = a
        .terms()
        .map(|(x, c)| match x {
            Element::Heisenberg(t) => (*t, *c),
            _ => unreachable!(),
        })
        .collect();
    let tuples = grid(ranges);
    let hit = tuples.par_iter().enumerate().find_first(|(_, p)| norm_at(p, &terms) > threshold);
    let Some((i, p)) = hit else {
        return Ok(SeparationOutcome::NotFound { tuples_checked: tuples.len(), threshold });
    };
    let rep = heisenberg_irrep(p.n, p.k, p.alpha, p.beta)?;
    let norm = spectral_norm(&rep.evaluate_algebra(a)?);
    match finite_range_check(&rep, ranges.size_bound, cfg)? {
        RangeOutcome::Finite(image) => Ok(SeparationOutcome::Found { rep, norm, image, tuples_checked: i + 1 }),
        RangeOutcome::Overflow { explored, .. } => Err(Error::Precision(format!(
            "root-of-unity parameters produced an image larger than {explored} elements"
        ))),
    }
}
