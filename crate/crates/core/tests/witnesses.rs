use num_complex::Complex64;
use procstar::finite_group::FiniteGroup;
use procstar::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement, HEIS_G, HEIS_H, HEIS_Z};
use procstar::linalg::{max_abs_diff, root_of_unity, spectral_norm, CMatrix};
use procstar::quotients::QuotientKind;
use procstar::sampling::{random_element, rng};
use procstar::tolerances::Config;
use procstar::witnesses::*;
use procstar::Error;
use std::sync::Arc;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn heis(terms: &[([i64; 3], Complex64)]) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(DiscreteGroup::Heisenberg, terms.iter().map(|&(x, v)| (Element::Heisenberg(x), v))).unwrap()
}

fn z1(terms: &[(i64, f64)]) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(DiscreteGroup::Lattice(1), terms.iter().map(|&(k, v)| (Element::Lattice(vec![k]), c(v)))).unwrap()
}

#[test]
fn witness_on_integers() {
    let cfg = Config::default();
    let b = z1(&[(1, 1.0), (0, -1.0)]);
    let w = rf_amen_witness(&b, None, &cfg).unwrap();
    assert!((w.lower_bound - 2f64.sqrt()).abs() < 1e-12);
    // S·T = {0, 1} is already separated mod 2
    assert_eq!(w.quotient.kind(), &QuotientKind::Modular { moduli: vec![2] });
    let cert = w.certify(&b, &cfg).unwrap();
    assert!(cert.passed(), "{cert:?}");
    assert!((cert.seminorm - 2.0).abs() < 1e-12);
}

#[test]
fn witness_identity_and_errors() {
    let cfg = Config::default();
    let e = GroupAlgebraElement::identity(DiscreteGroup::Lattice(2));
    let w = rf_amen_witness(&e, None, &cfg).unwrap();
    assert!((w.lower_bound - 1.0).abs() < 1e-15);
    assert!(w.certify(&e, &cfg).unwrap().passed());
    assert!(matches!(rf_amen_witness(&GroupAlgebraElement::zero(DiscreteGroup::Heisenberg), None, &cfg), Err(Error::ZeroElement)));
    let f2 = GroupAlgebraElement::identity(DiscreteGroup::Free2);
    assert!(matches!(rf_amen_witness(&f2, None, &cfg), Err(Error::UnsupportedGroup(_))));
}

#[test]
fn witness_heisenberg_three_generators() {
    let cfg = Config::default();
    let b = heis(&[(HEIS_G, c(1.0)), (HEIS_H, c(1.0)), (HEIS_Z, c(1.0))]);
    let w = rf_amen_witness(&b, None, &cfg).unwrap();
    assert!((w.lower_bound - 3f64.sqrt()).abs() < 1e-12);
    let cert = w.certify(&b, &cfg).unwrap();
    assert!(cert.passed());
    assert!(cert.seminorm >= 3f64.sqrt() - 1e-9);
}

#[test]
fn witness_with_richer_xi() {
    let cfg = Config::default();
    let b = z1(&[(1, 1.0), (0, -1.0)]);
    let xi = z1(&[(0, 1.0), (1, 1.0), (2, 1.0)]);
    let w = rf_amen_witness(&b, Some(&xi), &cfg).unwrap();
    // b∗ξ = δ₃ − δ₀, normalised by √3
    assert!((w.lower_bound - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!(w.certify(&b, &cfg).unwrap().passed());
}

#[test]
fn irrep_small_cases() {
    let one = heisenberg_irrep(1, 1, Phase::ONE, Phase::ONE).unwrap();
    assert_eq!(one.dim(), 1);
    assert!(one.generator_matrices().iter().all(|m| m[(0, 0)] == c(1.0)));

    let two = heisenberg_irrep(2, 1, Phase::ONE, Phase::ONE).unwrap();
    let m = two.generator_matrices();
    assert_eq!(m[0], CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]));
    assert_eq!(m[1], CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]));
    assert!(is_scalar_exact(&m[2], c(-1.0)));
    assert!(max_abs_diff(&(&m[0] * &m[1]), &(&m[2] * &m[1] * &m[0])) == 0.0);

    let three = heisenberg_irrep(3, 2, Phase::ONE, Phase::ONE).unwrap();
    assert!(is_scalar_exact(&three.generator_matrices()[2], root_of_unity(2, 3)));
}

#[test]
fn irrep_homomorphism_on_random_words() {
    use rand::Rng;
    let rep = heisenberg_irrep(3, 2, Phase::root(1, 5), Phase::root(2, 7)).unwrap();
    let mut r = rng(11);
    for _ in 0..20 {
        let x = [0; 3].map(|_| r.random_range(-4..=4i64));
        let y = [0; 3].map(|_| r.random_range(-4..=4i64));
        let xy = DiscreteGroup::Heisenberg.mul(&Element::Heisenberg(x), &Element::Heisenberg(y));
        let lhs = rep.evaluate(&Element::Heisenberg(x)) * rep.evaluate(&Element::Heisenberg(y));
        assert!(max_abs_diff(&lhs, &rep.evaluate(&xy)) < 1e-12);
    }
}

#[test]
fn irrep_rejects_bad_parameters() {
    assert!(heisenberg_irrep(4, 2, Phase::ONE, Phase::ONE).is_err());
    assert!(heisenberg_irrep(0, 1, Phase::ONE, Phase::ONE).is_err());
    assert!(heisenberg_irrep(2, 1, Phase::Radians { angle: f64::NAN }, Phase::ONE).is_err());
}

#[test]
fn finite_range_of_heisenberg_reps() {
    let cfg = Config::default();
    let rep = heisenberg_irrep(2, 1, Phase::ONE, Phase::ONE).unwrap();
    let img = finite_range_check(&rep, 1000, &cfg).unwrap();
    let img = img.finite().unwrap();
    assert_eq!(img.order(), 8);
    assert!(!img.group.is_abelian());
    assert!(!img.kernel_words.is_empty());
    for w in &img.kernel_words {
        let m = w.iter().fold(CMatrix::identity(2, 2), |acc, &(g, e)| {
            let g = &rep.generator_matrices()[g];
            acc * if e > 0 { g.clone() } else { g.adjoint() }
        });
        assert!(max_abs_diff(&m, &CMatrix::identity(2, 2)) < 1e-12);
    }
    let rep = heisenberg_irrep(3, 1, Phase::root(1, 4), Phase::root(1, 6)).unwrap();
    let order = finite_range_check(&rep, 100_000, &cfg).unwrap().finite().unwrap().order();
    // n² translations times the scalar subgroup generated by ω, α³, β³
    assert_eq!(order, 9 * 12);
}

#[test]
fn irrational_phase_overflows() {
    let rep = heisenberg_irrep(2, 1, Phase::Radians { angle: 1.0 }, Phase::ONE).unwrap();
    let out = finite_range_check(&rep, 5000, &Config::default()).unwrap();
    assert!(matches!(out, RangeOutcome::Overflow { explored: 5000, .. }));
}

#[test]
fn trivial_rep_has_trivial_image() {
    let cfg = Config::default();
    let rep = GeneratorRep::trivial(DiscreteGroup::Heisenberg);
    let img = finite_range_check(&rep, 10, &cfg).unwrap().finite().unwrap().clone();
    assert_eq!(img.order(), 1);
    let a = heis(&[([1, 2, 3], c(2.0)), ([0, 0, 0], Complex64::new(0.0, 1.0))]);
    let fac = factor_through_quotient(&rep, &img, std::slice::from_ref(&a), &cfg).unwrap();
    assert!(fac.passed);
    assert_eq!(fac.quotient.kappa(&a).unwrap().coefficient(&Element::Finite(0)), Complex64::new(2.0, 1.0));
}

#[test]
fn factorization_round_trip() {
    let cfg = Config::default();
    let rep = heisenberg_irrep(2, 1, Phase::ONE, Phase::ONE).unwrap();
    let img = finite_range_check(&rep, 1000, &cfg).unwrap().finite().unwrap().clone();
    let mut r = rng(5);
    let samples: Vec<_> = (0..10).map(|_| random_element(&mut r, &DiscreteGroup::Heisenberg, 4, 3, 3)).collect();
    let fac = factor_through_quotient(&rep, &img, &samples, &cfg).unwrap();
    assert!(fac.passed && fac.max_defect < 1e-10);
    assert_eq!(fac.quotient.order(), 8);
}

#[test]
fn lattice_rep_factors() {
    let cfg = Config::default();
    let d = |v: Complex64| CMatrix::from_diagonal_element(1, 1, v);
    let rep = GeneratorRep::new(DiscreteGroup::Lattice(2), vec![d(root_of_unity(1, 3)), d(root_of_unity(1, 4))]).unwrap();
    let img = finite_range_check(&rep, 100, &cfg).unwrap().finite().unwrap().clone();
    assert_eq!(img.order(), 12);
    let mut r = rng(8);
    let samples: Vec<_> = (0..5).map(|_| random_element(&mut r, &DiscreteGroup::Lattice(2), 3, 5, 2)).collect();
    assert!(factor_through_quotient(&rep, &img, &samples, &cfg).unwrap().passed);
}

#[test]
fn generator_rep_validation() {
    let m = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
    assert!(GeneratorRep::new(DiscreteGroup::Lattice(1), vec![m]).is_err());
    let a = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let b = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    assert!(GeneratorRep::new(DiscreteGroup::Lattice(2), vec![a.clone(), b.clone()]).is_err());
    assert!(GeneratorRep::new(DiscreteGroup::Free2, vec![a, b]).is_ok());
}

#[test]
fn separation_examples() {
    let cfg = Config::default();
    let ranges = SearchRanges::default();
    let w = root_of_unity(1, 3);
    let a = heis(&[(HEIS_Z, c(1.0)), ([0, 0, 0], -w)]);
    let SeparationOutcome::Found { rep, norm, .. } = heisenberg_separation(&a, &ranges, &cfg).unwrap() else { panic!() };
    // the first grid tuple already has π(z) = 1 ≠ ω
    assert_eq!(rep.params().unwrap().n, 1);
    assert!((norm - (c(1.0) - w).norm()).abs() < 1e-12);

    let e = GroupAlgebraElement::identity(DiscreteGroup::Heisenberg);
    let SeparationOutcome::Found { norm, .. } = heisenberg_separation(&e, &ranges, &cfg).unwrap() else { panic!() };
    assert!((norm - 1.0).abs() < 1e-12);

    // δ_g − δ_e vanishes on every one-dimensional rep with α = 1, the
    // first two-dimensional candidate gives ‖diag(1, −1) − 1‖ = 2
    let a = heis(&[(HEIS_G, c(1.0)), ([0, 0, 0], c(-1.0))]);
    let only_trivial_alpha = SearchRanges { max_root_order: 1, ..ranges };
    let SeparationOutcome::Found { rep, norm, .. } = heisenberg_separation(&a, &only_trivial_alpha, &cfg).unwrap() else { panic!() };
    let p = rep.params().unwrap();
    assert_eq!((p.n, p.k, p.alpha, p.beta), (2, 1, Phase::ONE, Phase::ONE));
    assert!((norm - 2.0).abs() < 1e-12);
}

#[test]
fn separation_not_found_is_reported() {
    let cfg = Config::default();
    // δ_z − δ_e vanishes whenever π(z) = 1, i.e. for n = 1
    let a = heis(&[(HEIS_Z, c(1.0)), ([0, 0, 0], c(-1.0))]);
    let ranges = SearchRanges { max_n: 1, ..SearchRanges::default() };
    assert!(matches!(heisenberg_separation(&a, &ranges, &cfg).unwrap(), SeparationOutcome::NotFound { .. }));
    assert!(heisenberg_separation(&GroupAlgebraElement::zero(DiscreteGroup::Heisenberg), &ranges, &cfg).is_err());
}

#[test]
fn separation_is_deterministic() {
    let cfg = Config::default();
    let mut r = rng(2);
    let a = random_element(&mut r, &DiscreteGroup::Heisenberg, 4, 2, 3);
    let ranges = SearchRanges { threshold: Some(0.5 * a.l2_norm()), ..SearchRanges::default() };
    let p1 = heisenberg_separation(&a, &ranges, &cfg).unwrap().to_json();
    let p2 = heisenberg_separation(&a, &ranges, &cfg).unwrap().to_json();
    assert_eq!(p1, p2);
}

#[test]
fn u3_generators_and_short_words() {
    let (a, b) = u3_generators();
    assert!(distance_from_identity(&a) > 0.1);
    assert!(distance_from_identity(&b) > 0.1);
    let rep = free_group_u3_check(0, 1e-9).unwrap();
    assert_eq!(rep.words_checked, 0);
    let rep = free_group_u3_check(4, 1e-9).unwrap();
    assert_eq!(rep.words_checked, 4 + 12 + 36 + 108);
    assert!(rep.passed);
    assert!(free_group_u3_check(13, 1e-9).is_err());
}

#[test]
fn u3_generator_orthogonality() {
    let (u, v) = u3_matrices();
    let id = nalgebra::Matrix3::<f64>::identity();
    assert!((u.transpose() * u - id).abs().max() < 1e-15);
    assert!((v.transpose() * v - id).abs().max() < 1e-15);
}

#[test]
fn z2k_characters() {
    let cfg = Config::default();
    for k in 0..=4 {
        let rep = z2k_range_check(k, 3, &cfg).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.irreps, 1 << k);
    }
}

#[test]
fn rep_evaluates_finite_groups() {
    let s3 = Arc::new(FiniteGroup::build_with_cap(&procstar::finite_group::FiniteFamily::Symmetric(3), 100).unwrap());
    let dec = procstar::finite_group::decompose_regular(&s3, 1, &Config::default()).unwrap();
    let two = dec.blocks().iter().find(|b| b.dim() == 2).unwrap();
    let rep = GeneratorRep::from_irrep(&s3, two).unwrap();
    for x in 0..6 {
        assert!(max_abs_diff(&rep.evaluate(&Element::Finite(x)), two.matrix(x)) < 1e-9);
    }
    let a = GroupAlgebraElement::delta(DiscreteGroup::Finite(s3.clone()), Element::Finite(1)).unwrap();
    assert!((spectral_norm(&rep.evaluate_algebra(&a).unwrap()) - 1.0).abs() < 1e-9);
}
