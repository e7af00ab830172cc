//! Finite truncations of the inverse system `(C*(G/N))_N`: consistent
//! families, bounded families, and probes of faithfulness and fullness.
//!
//! All checks hold only at the truncation they were run on.

use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::group_algebra::{DiscreteGroup, GroupAlgebraElement};
use crate::linalg::CMatrix;
use crate::quotients::{connecting_map, pushforward, FiniteQuotient};
use crate::seminorms::{regular_norm, seminorm};
use crate::tolerances::Config;
use crate::{Error, Result};

/// A finite poset of quotients of one group, ordered by refinement, with a
/// connecting surjection for every comparable pair.
#[derive(Clone, Debug)]
pub struct SystemTruncation {
    nodes: Vec<FiniteQuotient>,
    /// `(fine, coarse)` node indices → map `fine.target → coarse.target`.
    connecting: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SystemTruncation {
    pub fn new(nodes: Vec<FiniteQuotient>) -> Result<SystemTruncation> {
        if nodes.is_empty() {
            return Err(Error::InvalidParams("a truncation needs at least one node".into()));
        }
        if nodes.iter().any(|q| q.source() != nodes[0].source()) {
            return Err(Error::GroupMismatch);
        }
        let mut connecting = BTreeMap::new();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if i == j {
                    continue;
                }
                match connecting_map(&nodes[i], &nodes[j]) {
                    Ok(map) => {
                        connecting.insert((i, j), map);
                    }
                    Err(Error::NotRefinement(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(SystemTruncation { nodes, connecting })
    }

    /// A truncation whose nodes must form a chain, each refining the one
    /// before.
    pub fn chain(nodes: Vec<FiniteQuotient>) -> Result<SystemTruncation> {
        let sys = SystemTruncation::new(nodes)?;
        for i in 1..sys.nodes.len() {
            if !sys.connecting.contains_key(&(i, i - 1)) {
                return Err(Error::NotAChain(i));
            }
        }
        Ok(sys)
    }

    pub fn nodes(&self) -> &[FiniteQuotient] {
        &self.nodes
    }

    pub fn source(&self) -> &DiscreteGroup {
        self.nodes[0].source()
    }

    /// `coarse ≤ fine`: `fine` refines `coarse`.
    pub fn leq(&self, coarse: usize, fine: usize) -> bool {
        coarse == fine || self.connecting.contains_key(&(fine, coarse))
    }

    pub fn connecting(&self, fine: usize, coarse: usize) -> Option<&[usize]> {
        self.connecting.get(&(fine, coarse)).map(Vec::as_slice)
    }

    /// Comparable pairs `(fine, coarse)` with distinct indices.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.connecting.keys().copied()
    }

    /// A node refining every node, if any.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.nodes.len()).find(|&m| (0..self.nodes.len()).all(|l| self.leq(l, m)))
    }

    pub fn is_directed(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.leq(a, c) && self.leq(b, c))))
    }

    /// `conn(μ→λ) ∘ conn(ν→μ) = conn(ν→λ)` for all `λ ≤ μ ≤ ν`, checked on
    /// every basis element.
    pub fn check_functoriality(&self) -> bool {
        let n = self.nodes.len();
        for nu in 0..n {
            for mu in 0..n {
                for la in 0..n {
                    if nu == mu || mu == la || nu == la {
                        continue;
                    }
                    let (Some(a), Some(b), Some(c)) = (self.connecting(nu, mu), self.connecting(mu, la), self.connecting(nu, la)) else {
                        continue;
                    };
                    if (0..a.len()).any(|x| b[a[x]] != c[x]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Pushes an element of node `fine`'s algebra down to node `coarse`.
    pub fn push(&self, a: &GroupAlgebraElement, fine: usize, coarse: usize) -> Result<GroupAlgebraElement> {
        if fine == coarse {
            return Ok(a.clone());
        }
        let map = self
            .connecting(fine, coarse)
            .ok_or_else(|| Error::NotRefinement(format!("node {fine} does not refine node {coarse}")))?;
        pushforward(a, map, self.nodes[coarse].target())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
            "pairs": self.pairs().map(|(f, c)| [f, c]).collect::<Vec<_>>(),
        })
    }
}

/// One element per node, entry `i` in the group algebra of node `i`'s target.
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistentFamily {
    pub entries: Vec<GroupAlgebraElement>,
}

impl ConsistentFamily {
    pub fn scale(&self, t: num_complex::Complex64) -> ConsistentFamily {
        ConsistentFamily { entries: self.entries.iter().map(|e| e.scale(t)).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!({"entries": self.entries.iter().map(|e| e.to_json()).collect::<Vec<_>>()})
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub passed: bool,
    pub max_defect: f64,
    pub pairs_checked: usize,
    pub scope: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundedFamilyReport {
    pub sup_norm: f64,
    pub node_norms: Vec<f64>,
    pub bound: f64,
    pub is_bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProbeOutcome {
    ZeroInput,
    Separated { index: usize, order: usize, value: f64 },
    Unseparated { checked: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct FullnessReport {
    pub top: usize,
    pub exact: bool,
    pub max_defect: f64,
    pub scope: &'static str,
}

fn check_shape(fam: &ConsistentFamily, sys: &SystemTruncation) -> Result<()> {
    if fam.entries.len() != sys.nodes.len() {
        return Err(Error::InvalidParams(format!("family has {} entries for {} nodes", fam.entries.len(), sys.nodes.len())));
    }
    for (e, q) in fam.entries.iter().zip(&sys.nodes) {
        if e.group() != &q.target_group() {
            return Err(Error::GroupMismatch);
        }
    }
    Ok(())
}

/// Largest `‖push(entry_μ) − entry_λ‖` over comparable pairs; passes when
/// it is at most `tau_alg`.
pub fn check_consistent(fam: &ConsistentFamily, sys: &SystemTruncation, cfg: &Config) -> Result<ConsistencyReport> {
    check_shape(fam, sys)?;
    let mut max_defect: f64 = 0.0;
    let mut pairs_checked = 0;
    for (fine, coarse) in sys.pairs() {
        let diff = sys.push(&fam.entries[fine], fine, coarse)?.sub(&fam.entries[coarse])?;
        max_defect = max_defect.max(regular_norm(&diff)?);
        pairs_checked += 1;
    }
    Ok(ConsistencyReport { passed: max_defect <= cfg.tau_alg, max_defect, pairs_checked, scope: "at truncation" })
}

/// The family `(κ_N(a))_N` over the nodes.
pub fn phi_truncated(a: &GroupAlgebraElement, sys: &SystemTruncation) -> Result<ConsistentFamily> {
    if a.group() != sys.source() {
        return Err(Error::GroupMismatch);
    }
    Ok(ConsistentFamily { entries: sys.nodes.iter().map(|q| q.kappa(a)).collect::<Result<_>>()? })
}

pub fn bounded_check(fam: &ConsistentFamily, sys: &SystemTruncation, bound: f64) -> Result<BoundedFamilyReport> {
    check_shape(fam, sys)?;
    let node_norms: Vec<f64> = fam.entries.iter().map(regular_norm).collect::<Result<_>>()?;
    let sup_norm = node_norms.iter().copied().fold(0.0, f64::max);
    Ok(BoundedFamilyReport { sup_norm, node_norms, bound, is_bounded: sup_norm <= bound })
}

/// For each element, the first schedule entry whose seminorm exceeds
/// `tau_norm`.
pub fn faithfulness_probe(
    group: &DiscreteGroup,
    elements: &[GroupAlgebraElement],
    schedule: &[FiniteQuotient],
    cfg: &Config,
) -> Result<Vec<ProbeOutcome>> {
    elements
        .iter()
        .map(|a| {
            if a.group() != group {
                return Err(Error::GroupMismatch);
            }
            if a.is_zero() {
                return Ok(ProbeOutcome::ZeroInput);
            }
            for (index, q) in schedule.iter().enumerate() {
                let v = seminorm(q, a, cfg)?.value;
                if v > cfg.tau_norm {
                    return Ok(ProbeOutcome::Separated { index, order: q.order(), value: v });
                }
            }
            Ok(ProbeOutcome::Unseparated { checked: schedule.len() })
        })
        .collect()
}

/// Rebuilds the family from its entry at the maximum node and compares
/// coefficients exactly.
pub fn reconstruct_from_top(fam: &ConsistentFamily, sys: &SystemTruncation) -> Result<FullnessReport> {
    check_shape(fam, sys)?;
    let top = sys.maximum().ok_or_else(|| Error::InvalidParams("truncation has no maximum node".into()))?;
    let mut max_defect: f64 = 0.0;
    for i in 0..sys.nodes.len() {
        let rebuilt = sys.push(&fam.entries[top], top, i)?;
        max_defect = max_defect.max(rebuilt.max_abs_diff(&fam.entries[i])?);
    }
    Ok(FullnessReport { top, exact: max_defect == 0.0, max_defect, scope: "at truncation" })
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub name: String,
    pub converges_pointwise: bool,
    /// Coordinates at which the sequence fails to converge.
    pub failing_coordinates: Vec<usize>,
    /// Subset seminorms (by index into `subsets`) in which it fails.
    pub failing_subsets: Vec<usize>,
    /// Failing subsets are exactly those meeting a failing coordinate.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointwiseReport {
    pub size: usize,
    pub subsets: Vec<Vec<usize>>,
    pub sequences: Vec<SequenceReport>,
    /// Every subset seminorm equals the max of its coordinate seminorms.
    pub dominated: bool,
    pub passed: bool,
}

const DEMO_STEPS: usize = 4096;
const DEMO_TOL: f64 = 1e-3;

/// `C(X)` for a finite set `X`: coordinate seminorms `|f(x)|` against the
/// C*-seminorms of the quotients `C(X) → C(S)`, on fixed test sequences.
pub fn pointwise_topology_demo(size: usize) -> Result<PointwiseReport> {
    if size == 0 || size > 64 {
        return Err(Error::InvalidParams(format!("|X| must be in 1..=64, got {size}")));
    }
    let x0 = size / 2;
    type Seq = Box<dyn Fn(usize, usize) -> f64>;
    let sequences: Vec<(&str, Seq)> = vec![
        ("constant_convergent", Box::new(|k, _| 1.0 + 1.0 / (k + 1) as f64)),
        ("constant_divergent", Box::new(|k, _| if k % 2 == 0 { 1.0 } else { -1.0 })),
        ("scaled_indicator", Box::new(move |k, x| if x == x0 { 1.0 / (k + 1) as f64 } else { 0.0 })),
        ("oscillating_at_one_point", Box::new(move |k, x| if x == x0 && k % 2 == 1 { 1.0 } else { 0.0 })),
    ];
    let mut subsets: Vec<Vec<usize>> = vec![(0..size).collect()];
    for m in 2..=3.min(size) {
        for r in 0..m {
            subsets.push((0..size).filter(|x| x % m == r).collect());
        }
    }
    subsets.push(vec![0]);
    subsets.retain(|s| !s.is_empty());

    // quotient seminorm: norm of f|_S as a diagonal operator on ℂ^S
    let subset_norm = |f: &dyn Fn(usize) -> f64, s: &[usize]| {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(s.len(), s.iter().map(|&x| f(x).into())));
        crate::linalg::spectral_norm(&d)
    };

    let mut dominated = true;
    let mut reports = Vec::new();
    for (name, f) in &sequences {
        let last = DEMO_STEPS;
        let tail = DEMO_STEPS / 2..=DEMO_STEPS;
        let cauchy_at = |x: usize| tail.clone().map(|k| (f(k, x) - f(last, x)).abs()).fold(0.0, f64::max);
        let failing_coordinates: Vec<usize> = (0..size).filter(|&x| cauchy_at(x) > DEMO_TOL).collect();
        let mut failing_subsets = Vec::new();
        for (i, s) in subsets.iter().enumerate() {
            let defect = tail
                .clone()
                .map(|k| subset_norm(&|x| f(k, x) - f(last, x), s))
                .fold(0.0, f64::max);
            if defect > DEMO_TOL {
                failing_subsets.push(i);
            }
            for k in [0, 1, last] {
                let by_coords = s.iter().map(|&x| f(k, x).abs()).fold(0.0, f64::max);
                dominated &= (subset_norm(&|x| f(k, x), s) - by_coords).abs() <= 1e-12;
            }
        }
        let expected: Vec<usize> = (0..subsets.len())
            .filter(|&i| subsets[i].iter().any(|x| failing_coordinates.contains(x)))
            .collect();
        reports.push(SequenceReport {
            name: name.to_string(),
            converges_pointwise: failing_coordinates.is_empty(),
            consistent: expected == failing_subsets,
            failing_coordinates,
            failing_subsets,
        });
    }
    let passed = dominated && reports.iter().all(|r| r.consistent);
    Ok(PointwiseReport { size, subsets, sequences: reports, dominated, passed })
}
