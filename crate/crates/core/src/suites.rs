//! Named verification suites, one per checked property. Each returns a
//! report with per-check detail; the CLI `verify` command and the
//! acceptance tests both run these.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

use crate::finite_group::{decompose_regular, FiniteFamily, FiniteGroup};
use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement};
use crate::linalg::root_of_unity;
use crate::prostructure::{check_consistent, phi_truncated, reconstruct_from_top, ConsistentFamily, SystemTruncation};
use crate::quotients::{connecting_map, free2_catalog_targets, pushforward, FiniteQuotient};
use crate::sampling::{random_element, rng};
use crate::seminorms::{heisenberg_chain, lattice_chain, regular_norm, seminorm, sup_seminorm};
use crate::tolerances::Config;
use crate::witnesses::{
    factor_through_quotient, finite_range_check, free_group_u3_check, heisenberg_irrep, heisenberg_separation, is_scalar_exact, rf_amen_witness,
    z2k_range_check, Phase, RangeOutcome, SearchRanges, SeparationOutcome,
};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> SuiteReport {
        SuiteReport { suite: suite.into(), passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

/// Suite names with the property each verifies.
pub const SUITES: &[(&str, &str)] = &[
    ("circle-norm", "seminorm sups over cyclic chains recover the circle sup-norm"),
    ("peter-weyl", "regular-representation norm equals the largest irrep block norm"),
    ("rf-amen-witness", "separation witnesses are injective on S·T and sound"),
    ("heisenberg-family", "Heisenberg representations satisfy the relations and have finite range"),
    ("compatibility", "pushforward along connecting maps commutes with kappa"),
    ("seminorm-axioms", "C*-identity, l1 domination and monotonicity under refinement"),
    ("z2k-range", "irreps of (Z/2)^k are +-1 characters"),
    ("free-group-u3", "no short relation between the two U(3) generators"),
    ("truncated-fullness", "consistent families are pushforwards of their top entry"),
    ("heisenberg-separation", "finite-range Heisenberg representations separate random elements"),
    ("seminorm-monotonicity", "seminorms are nondecreasing along refinement chains"),
    ("heisenberg-relations", "relations of the Heisenberg representation grid"),
];

pub fn run_suite(name: &str, seed: u64, cfg: &Config) -> Result<SuiteReport> {
    match name {
        "circle-norm" => circle_norm(cfg),
        "peter-weyl" => peter_weyl(seed, cfg),
        "rf-amen-witness" => rf_amen(seed, cfg),
        "heisenberg-family" => heisenberg_family(cfg, true),
        "compatibility" => compatibility(seed, cfg),
        "seminorm-axioms" => seminorm_axioms(seed, cfg),
        "z2k-range" => z2k_range(seed, cfg),
        "free-group-u3" => free_group_u3(),
        "truncated-fullness" => truncated_fullness(seed, cfg),
        "heisenberg-separation" => heisenberg_sep(seed, cfg),
        "seminorm-monotonicity" => seminorm_monotonicity(seed, cfg),
        "heisenberg-relations" => heisenberg_family(cfg, false),
        _ => Err(Error::NotFound(format!("unknown suite {name:?}"))),
    }
}

fn gaussian_z(terms: &[(i64, Complex64)]) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(DiscreteGroup::Lattice(1), terms.iter().map(|&(k, v)| (Element::Lattice(vec![k]), v))).expect("lattice element")
}

fn circle_norm(cfg: &Config) -> Result<SuiteReport> {
    let z = DiscreteGroup::Lattice(1);
    let mut checks = Vec::new();
    let a = gaussian_z(&[(1, Complex64::new(1.0, 0.0)), (0, Complex64::new(0.0, 1.0))]);
    let chain = lattice_chain(1, &[2, 4, 8, 16, 32, 64], cfg.order_cap)?;
    let s = sup_seminorm(&z, &a, &chain, cfg)?;
    let first = s.values.iter().position(|v| (v.value - 2.0).abs() <= 1e-9).map(|i| s.values[i].quotient.order());
    checks.push(check(
        "delta_1 + i delta_0 over mod 2..64",
        (s.sup - 2.0).abs() <= 1e-9 && first == Some(4),
        json!({"sup": s.sup, "values": s.values.iter().map(|v| v.value).collect::<Vec<_>>(), "first_maximal_order": first}),
    ));
    let a = gaussian_z(&[(1, Complex64::new(1.0, 0.0)), (0, root_of_unity(-1, 3))]);
    let chain = lattice_chain(1, &[3, 6, 12, 24, 48], cfg.order_cap)?;
    let s = sup_seminorm(&z, &a, &chain, cfg)?;
    checks.push(check(
        "delta_1 + e^(-2 pi i/3) delta_0 over mod 3..48",
        (s.sup - 2.0).abs() <= 1e-9,
        json!({"sup": s.sup, "values": s.values.iter().map(|v| v.value).collect::<Vec<_>>()}),
    ));
    Ok(SuiteReport::new("circle-norm", checks))
}

fn peter_weyl(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let families = [
        FiniteFamily::Symmetric(3),
        FiniteFamily::Dihedral(4),
        FiniteFamily::HeisenbergMod(3),
        FiniteFamily::ElementaryAbelian2(3),
    ];
    let checks = families
        .par_iter()
        .enumerate()
        .map(|(i, fam)| {
            let f = Arc::new(FiniteGroup::build_with_cap(fam, cfg.order_cap)?);
            let dec = decompose_regular(&f, seed + i as u64, cfg)?;
            let group = DiscreteGroup::Finite(f.clone());
            let mut r = rng(seed ^ (i as u64 + 1));
            let mut worst: f64 = 0.0;
            for _ in 0..25 {
                let a = random_element(&mut r, &group, 5, 0, 3);
                worst = worst.max((regular_norm(&a)? - dec.norm_of(&a.finite_terms()?)).abs());
            }
            let report = dec.verify(&f, cfg.tau_alg.max(1e-8));
            Ok(check(
                fam.label(),
                worst <= 1e-6 && report.passed,
                json!({"max_difference": worst, "elements": 25, "dims": dec.dims(), "decomposition_verified": report.passed}),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("peter-weyl", checks))
}

fn rf_amen(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let mut r = rng(seed);
    let h = DiscreteGroup::Heisenberg;
    let elements: Vec<GroupAlgebraElement> = (0..20).map(|i| random_element(&mut r, &h, 1 + i % 6, 2, 3)).collect();
    let checks = elements
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let w = rf_amen_witness(b, None, cfg)?;
            let cert = w.certify(b, cfg)?;
            let sound = cert.seminorm >= w.lower_bound - 1e-9;
            Ok(check(
                format!("element {i}"),
                cert.injective && sound && cert.exact,
                json!({"order": w.quotient.order(), "lower_bound": w.lower_bound, "seminorm": cert.seminorm, "image_norm": cert.image_norm, "injective": cert.injective}),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("rf-amen-witness", checks))
}

fn heisenberg_family(cfg: &Config, with_range: bool) -> Result<SuiteReport> {
    let mut grid = Vec::new();
    for n in 1..=6usize {
        for k in (1..=n).filter(|&k| crate::witnesses::is_coprime(k, n)) {
            for a in 0..12 {
                for b in 0..12 {
                    grid.push((n, k, a, b));
                }
            }
        }
    }
    let results: Vec<(f64, bool, Option<usize>)> = grid
        .par_iter()
        .map(|&(n, k, a, b)| {
            let rep = heisenberg_irrep(n, k, Phase::root(a, 12), Phase::root(b, 12))?;
            let exact = is_scalar_exact(&rep.generator_matrices()[2], root_of_unity(k as i64, n as i64));
            let order = if with_range {
                match finite_range_check(&rep, 100_000, cfg)? {
                    RangeOutcome::Finite(img) => Some(img.order()),
                    RangeOutcome::Overflow { .. } => None,
                }
            } else {
                Some(0)
            };
            Ok((rep.relation_defect(), exact, order))
        })
        .collect::<Result<_>>()?;
    let max_defect = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let mut checks = vec![
        check("relations within 1e-12", max_defect <= 1e-12, json!({"max_defect": max_defect, "representations": grid.len()})),
        check("pi(z) exactly scalar", results.iter().all(|r| r.1), json!({"representations": grid.len()})),
    ];
    if with_range {
        let finite = results.iter().filter(|r| r.2.is_some()).count();
        let largest = results.iter().filter_map(|r| r.2).max();
        checks.push(check("finite range", finite == grid.len(), json!({"finite": finite, "largest_image": largest})));
    }
    Ok(SuiteReport::new(if with_range { "heisenberg-family" } else { "heisenberg-relations" }, checks))
}

fn compatibility(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let mut r = rng(seed);
    let cap = cfg.order_cap;
    let pairs = [
        ("Z mod 12 -> mod 4", FiniteQuotient::modular(vec![12], cap)?, FiniteQuotient::modular(vec![4], cap)?),
        ("Z mod 6 -> mod 3", FiniteQuotient::modular(vec![6], cap)?, FiniteQuotient::modular(vec![3], cap)?),
        ("Heisenberg mod 6 -> mod 3", FiniteQuotient::heisenberg_mod(6, cap)?, FiniteQuotient::heisenberg_mod(3, cap)?),
    ];
    let mut checks = Vec::new();
    for (name, fine, coarse) in &pairs {
        let map = connecting_map(fine, coarse)?;
        let mut worst: f64 = 0.0;
        for _ in 0..25 {
            let a = random_element(&mut r, fine.source(), 5, 20, 5);
            let lhs = pushforward(&fine.kappa(&a)?, &map, coarse.target())?;
            worst = worst.max(lhs.max_abs_diff(&coarse.kappa(&a)?)?);
        }
        checks.push(check(*name, worst == 0.0, json!({"max_difference": worst, "elements": 25})));
    }
    Ok(SuiteReport::new("compatibility", checks))
}

/// Quotients, and `(fine, coarse)` index pairs among them.
type Grid = (Vec<FiniteQuotient>, Vec<(usize, usize)>);

/// Quotients and refinement pairs the seminorm properties are checked on.
fn test_grid(cfg: &Config) -> Result<Grid> {
    let cap = cfg.order_cap;
    let mut qs = Vec::new();
    for m in [1u64, 2, 3, 4, 5, 6, 8, 12] {
        qs.push(FiniteQuotient::modular(vec![m], cap)?);
    }
    for m in [2u64, 3, 4, 6] {
        qs.push(FiniteQuotient::modular(vec![m, m], cap)?);
    }
    for m in [2u64, 3, 4, 6] {
        qs.push(FiniteQuotient::heisenberg_mod(m, cap)?);
    }
    // F₂ onto catalog targets, through two fixed generator choices
    for fam in free2_catalog_targets().into_iter().filter(|f| f.order().unwrap() <= 24) {
        let t = FiniteGroup::build_with_cap(&fam, cap)?;
        let g = t.generators();
        let first = g.first().copied().unwrap_or(t.identity());
        let images = [first, g.get(1).copied().unwrap_or(first)];
        qs.push(FiniteQuotient::from_generator_images(DiscreteGroup::Free2, &t, &images)?);
    }
    let mut pairs = Vec::new();
    for i in 0..qs.len() {
        for j in 0..qs.len() {
            if i != j && qs[i].source() == qs[j].source() && qs[i].order() > qs[j].order() && connecting_map(&qs[i], &qs[j]).is_ok() {
                pairs.push((i, j));
            }
        }
    }
    Ok((qs, pairs))
}

fn seminorm_axioms(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let (qs, pairs) = test_grid(cfg)?;
    let mut r = rng(seed);
    let groups = [DiscreteGroup::Lattice(1), DiscreteGroup::Lattice(2), DiscreteGroup::Heisenberg, DiscreteGroup::Free2];
    let elements: Vec<GroupAlgebraElement> = groups.iter().flat_map(|g| (0..6).map(|_| random_element(&mut r, g, 4, 3, 3)).collect::<Vec<_>>()).collect();
    let rows = qs
        .par_iter()
        .map(|q| {
            let mut cstar: f64 = 0.0;
            let mut dom: f64 = f64::NEG_INFINITY;
            let mut values = Vec::new();
            for a in elements.iter().filter(|a| a.group() == q.source()) {
                let v = seminorm(q, a, cfg)?.value;
                let aa = a.involution().convolve(a)?;
                cstar = cstar.max((seminorm(q, &aa, cfg)?.value - v * v).abs());
                dom = dom.max(v - a.l1_norm());
                values.push(v);
            }
            Ok((cstar, dom, values))
        })
        .collect::<Result<Vec<_>>>()?;
    let cstar = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let dom = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let mono = pairs
        .iter()
        .flat_map(|&(f, c)| rows[c].2.iter().zip(&rows[f].2).map(|(vc, vf)| vc - vf))
        .fold(f64::NEG_INFINITY, f64::max);
    let checks = vec![
        check("C*-identity within 2e-6", cstar <= 2e-6, json!({"max_defect": cstar, "quotients": qs.len()})),
        check("seminorm <= l1 + 1e-6", dom <= 1e-6, json!({"max_excess": dom})),
        check("monotone under refinement within 1e-6", mono <= 1e-6, json!({"max_increase_to_coarse": mono, "pairs": pairs.len()})),
    ];
    Ok(SuiteReport::new("seminorm-axioms", checks))
}

fn z2k_range(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let checks = (0..=8usize)
        .into_par_iter()
        .map(|k| {
            let rep = z2k_range_check(k, seed + k as u64, cfg)?;
            Ok(check(format!("k = {k}"), rep.passed, serde_json::to_value(&rep).expect("report")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("z2k-range", checks))
}

fn free_group_u3() -> Result<SuiteReport> {
    let rep = free_group_u3_check(8, 1e-6)?;
    let len8 = 4 * 3usize.pow(7);
    Ok(SuiteReport::new(
        "free-group-u3",
        vec![check(
            "reduced words of length <= 8",
            rep.passed,
            json!({"words_checked": rep.words_checked, "words_of_length_8": len8, "min_distance": rep.min_distance, "argmin_word": rep.argmin_word}),
        )],
    ))
}

fn truncated_fullness(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let cap = cfg.order_cap;
    let systems = [
        ("Z mod 2|4|8|16", SystemTruncation::chain(lattice_chain(1, &[2, 4, 8, 16], cap)?)?),
        ("Z mod 2, 3, 6", SystemTruncation::new(lattice_chain(1, &[2, 3, 6], cap)?)?),
        ("Heisenberg mod 2|4", SystemTruncation::chain(heisenberg_chain(&[2, 4], cap)?)?),
    ];
    let mut r = rng(seed);
    let mut checks = Vec::new();
    for (name, sys) in &systems {
        let mut phi_defect: f64 = 0.0;
        let mut exact = true;
        let mut families = 0;
        for _ in 0..10 {
            let a = random_element(&mut r, sys.source(), 4, 6, 3);
            let phi = phi_truncated(&a, sys)?;
            phi_defect = phi_defect.max(check_consistent(&phi, sys, cfg)?.max_defect);
            // norm ≤ 1 families: a normalised phi family, and the pushdown of
            // a random normalised top entry
            let top = sys.maximum().expect("systems here have a maximum");
            let sup = phi.entries.iter().map(regular_norm).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
            let scaled = phi.scale(Complex64::new(pow2_below_inverse(sup), 0.0));
            let t = random_element(&mut r, &sys.nodes()[top].target_group(), 6, 0, 3);
            let t = t.scale(Complex64::new(pow2_below_inverse(regular_norm(&t)?), 0.0));
            let pushed = ConsistentFamily { entries: (0..sys.nodes().len()).map(|i| sys.push(&t, top, i)).collect::<Result<_>>()? };
            for fam in [&scaled, &pushed] {
                let cons = check_consistent(fam, sys, &Config { tau_alg: 1e-12, ..cfg.clone() })?;
                exact &= cons.passed && reconstruct_from_top(fam, sys)?.exact;
                families += 1;
            }
        }
        checks.push(check(
            *name,
            exact && phi_defect == 0.0,
            json!({"families": families, "phi_max_defect": phi_defect, "reconstructed_exactly": exact, "scope": "at truncation"}),
        ));
    }
    Ok(SuiteReport::new("truncated-fullness", checks))
}

/// The largest power of two `s` with `s·x ≤ 1`, so scaling stays exact.
fn pow2_below_inverse(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    (-x.log2().ceil()).exp2()
}

fn heisenberg_sep(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let h = DiscreteGroup::Heisenberg;
    let mut r = rng(seed);
    let elements: Vec<GroupAlgebraElement> = (0..10).map(|i| random_element(&mut r, &h, 1 + i % 4, 2, 3)).collect();
    let samples: Vec<GroupAlgebraElement> = (0..10).map(|_| random_element(&mut r, &h, 4, 3, 3)).collect();
    let mut checks = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        let lb = rf_amen_witness(a, None, cfg)?.lower_bound;
        let ranges = SearchRanges { threshold: Some(0.5 * lb), ..SearchRanges::default() };
        let outcome = heisenberg_separation(a, &ranges, cfg)?;
        let c = match &outcome {
            SeparationOutcome::Found { rep, norm, image, .. } => {
                let mut with_a = samples.clone();
                with_a.push(a.clone());
                let fac = factor_through_quotient(rep, image, &with_a, cfg)?;
                check(
                    format!("element {i}"),
                    *norm >= 0.5 * lb && fac.max_defect <= 1e-10,
                    json!({"support": a.len(), "lower_bound": lb, "norm": norm, "params": rep.params(), "image_order": image.order(), "factor_defect": fac.max_defect}),
                )
            }
            SeparationOutcome::NotFound { .. } => check(format!("element {i}"), false, outcome.to_json()),
        };
        checks.push(c);
    }
    Ok(SuiteReport::new("heisenberg-separation", checks))
}

fn seminorm_monotonicity(seed: u64, cfg: &Config) -> Result<SuiteReport> {
    let cap = cfg.order_cap;
    let mut r = rng(seed);
    let chains = [
        ("Z mod 2^j", DiscreteGroup::Lattice(1), lattice_chain(1, &[1, 2, 4, 8, 16, 32, 64], cap)?),
        ("Z mod j!", DiscreteGroup::Lattice(1), lattice_chain(1, &[1, 2, 6, 24, 120], cap)?),
        ("Z^2 mod 2^j", DiscreteGroup::Lattice(2), lattice_chain(2, &[2, 4, 8, 16], cap)?),
        ("Heisenberg mod 2^j", DiscreteGroup::Heisenberg, heisenberg_chain(&[1, 2, 4, 8], cap)?),
        ("Heisenberg mod 3^j", DiscreteGroup::Heisenberg, heisenberg_chain(&[3, 9], cap)?),
    ];
    let mut checks = Vec::new();
    for (name, g, chain) in &chains {
        let mut monotone = true;
        let mut below_l1 = true;
        for _ in 0..5 {
            let a = random_element(&mut r, g, 4, 4, 3);
            let s = sup_seminorm(g, &a, chain, cfg)?;
            monotone &= s.monotone;
            below_l1 &= s.sup <= s.l1_bound + cfg.tau_norm;
        }
        checks.push(check(*name, monotone && below_l1, json!({"monotone": monotone, "sup_below_l1": below_l1})));
    }
    Ok(SuiteReport::new("seminorm-monotonicity", checks))
}
