//! Seminorm values against oracles that do not use the regular
//! representation.

use num_complex::Complex64;
use procstar::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement};
use procstar::linalg::{root_of_unity, spectral_norm};
use procstar::quotients::FiniteQuotient;
use procstar::sampling::{random_element, rng};
use procstar::seminorms::{seminorm, sup_seminorm, lattice_chain};
use procstar::tolerances::Config;
use procstar::witnesses::{heisenberg_irrep, Phase};
use proptest::prelude::*;

/// `max_ζ |Σ a_k ζ^k|` over the `n`-th roots of unity.
fn circulant_oracle(a: &GroupAlgebraElement, n: i64) -> f64 {
    (0..n)
        .map(|j| {
            a.terms()
                .map(|(x, c)| match x {
                    Element::Lattice(v) => *c * root_of_unity(j * v[0], n),
                    _ => unreachable!(),
                })
                .sum::<Complex64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Largest norm over the irreps of `H₃(ℤ/p)`, `p` prime: the `p²`
/// characters `(a, b, c) ↦ ω^{ia + jb}` and the `p`-dimensional
/// representations with central character `ω^k`.
fn heisenberg_mod_p_oracle(a: &GroupAlgebraElement, p: usize) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..p as i64 {
        for j in 0..p as i64 {
            let v: Complex64 = a
                .terms()
                .map(|(x, c)| match x {
                    Element::Heisenberg([n, m, _]) => *c * root_of_unity(i * n + j * m, p as i64),
                    _ => unreachable!(),
                })
                .sum();
            best = best.max(v.norm());
        }
    }
    for k in 1..p {
        let rep = heisenberg_irrep(p, k, Phase::ONE, Phase::ONE).unwrap();
        best = best.max(spectral_norm(&rep.evaluate_algebra(a).unwrap()));
    }
    best
}

#[test]
fn heisenberg_congruence_quotients_match_irreps() {
    let cfg = Config::default();
    let mut r = rng(17);
    for p in [2usize, 3, 5] {
        let q = FiniteQuotient::heisenberg_mod(p as u64, cfg.order_cap).unwrap();
        for _ in 0..8 {
            let a = random_element(&mut r, &DiscreteGroup::Heisenberg, 4, 3, 3);
            let v = seminorm(&q, &a, &cfg).unwrap().value;
            assert!((v - heisenberg_mod_p_oracle(&a, p)).abs() < 1e-9, "p = {p}");
        }
    }
}

#[test]
fn circle_recovery_values() {
    let cfg = Config::default();
    let z = DiscreteGroup::Lattice(1);
    let a = GroupAlgebraElement::from_terms(
        z.clone(),
        [(Element::Lattice(vec![1]), Complex64::new(1.0, 0.0)), (Element::Lattice(vec![0]), Complex64::new(0.0, 1.0))],
    )
    .unwrap();
    let s = sup_seminorm(&z, &a, &lattice_chain(1, &[2, 4, 8, 16, 32, 64], cfg.order_cap).unwrap(), &cfg).unwrap();
    // |ζ + i| at ζ = ±1 is √2, and 2 once ζ = i is available
    assert!((s.values[0].value - 2f64.sqrt()).abs() < 1e-12);
    assert!((s.values[1].value - 2.0).abs() < 1e-12);
    assert!((s.sup - 2.0).abs() < 1e-9);
    assert!(s.norm_certified);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_seminorm_is_character_max(
        n in 1i64..40,
        terms in prop::collection::vec((-30i64..30, -4i32..5, -4i32..5), 1..6),
    ) {
        let cfg = Config::default();
        let a = GroupAlgebraElement::from_terms(
            DiscreteGroup::Lattice(1),
            terms.iter().map(|&(k, re, im)| (Element::Lattice(vec![k]), Complex64::new(re as f64, im as f64))),
        ).unwrap();
        let q = FiniteQuotient::modular(vec![n as u64], cfg.order_cap).unwrap();
        let v = seminorm(&q, &a, &cfg).unwrap().value;
        prop_assert!((v - circulant_oracle(&a, n)).abs() < 1e-9);
    }
}
