//! Seeded random group-algebra elements with Gaussian-integer coefficients.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement, Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a + bi` with integers `a, b ∈ [-bound, bound]`, not both zero.
pub fn gaussian_integer<R: Rng>(rng: &mut R, bound: i64) -> Complex64 {
    loop {
        let re = rng.random_range(-bound..=bound);
        let im = rng.random_range(-bound..=bound);
        if re != 0 || im != 0 {
            return Complex64::new(re as f64, im as f64);
        }
    }
}

/// A random group element. Infinite groups draw from a box of the given
/// radius (words of length at most `radius` for `F₂`).
pub fn random_group_element<R: Rng>(rng: &mut R, group: &DiscreteGroup, radius: i64) -> Element {
    match group {
        DiscreteGroup::Lattice(d) => Element::Lattice((0..*d).map(|_| rng.random_range(-radius..=radius)).collect()),
        DiscreteGroup::Heisenberg => Element::Heisenberg([0; 3].map(|_| rng.random_range(-radius..=radius))),
        DiscreteGroup::Free2 => {
            let len = rng.random_range(0..=radius.max(0) as usize);
            let letters = (0..len).map(|_| Letter::ALL[rng.random_range(0..4)]).collect();
            Element::Word(Word::from_letters(letters).reduced())
        }
        DiscreteGroup::Finite(f) => Element::Finite(rng.random_range(0..f.order())),
    }
}

/// A nonzero element with at most `support` terms.
pub fn random_element<R: Rng>(rng: &mut R, group: &DiscreteGroup, support: usize, radius: i64, coeff_bound: i64) -> GroupAlgebraElement {
    loop {
        let terms: Vec<(Element, Complex64)> = (0..support.max(1))
            .map(|_| (random_group_element(rng, group, radius), gaussian_integer(rng, coeff_bound)))
            .collect();
        let a = GroupAlgebraElement::from_terms(group.clone(), terms).expect("sampled elements belong to the group");
        if !a.is_zero() {
            return a;
        }
    }
}
