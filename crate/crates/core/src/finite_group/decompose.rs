//! Splitting the regular representation into irreducible blocks.
//!
//! The isotypic components are the joint eigenspaces of the centre of the
//! group algebra, found as the eigenspaces of one random Hermitian
//! combination of class sums. Each component of dimension `d²` is then cut
//! into `d` equivalent irreducible pieces by diagonalising a random Hermitian
//! element of the commutant (the right regular representation). Every block
//! is certified after the fact.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{left_convolution_matrix, FiniteGroup};
use crate::linalg::{cluster_sorted, hermitian_eigen, max_abs_diff, root_of_unity, unitarity_defect, CMatrix, ZERO};
use crate::tolerances::Config;
use crate::{Error, Result};

/// A unitary representation of a finite group, one matrix per element.
#[derive(Clone, Debug)]
pub struct Irrep {
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Irrep {
    /// Wraps explicit matrices, indexed by element.
    pub fn new(matrices: Vec<CMatrix>) -> Result<Irrep> {
        let dim = matrices.first().map(|m| m.nrows()).ok_or_else(|| Error::InvalidParams("no matrices".into()))?;
        if matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidParams("matrices must be square of equal size".into()));
        }
        Ok(Irrep { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// `Σ_g c_g ρ(g)`.
    pub fn evaluate(&self, coeffs: &[(usize, Complex64)]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for &(g, c) in coeffs {
            out += &self.matrices[g] * c;
        }
        out
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.matrices.iter().map(unitarity_defect).fold(0.0, f64::max)
    }

    /// Largest entry of `ρ(xy) - ρ(x)ρ(y)` over all pairs.
    pub fn homomorphism_defect(&self, group: &FiniteGroup) -> f64 {
        let n = group.order();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let prod = &self.matrices[x] * &self.matrices[y];
                worst = worst.max(max_abs_diff(&prod, &self.matrices[group.mul(x, y)]));
            }
        }
        worst
    }

    /// Same check restricted to `x` a generator, which suffices for a
    /// homomorphism but costs `|F|·|gens|` products instead of `|F|²`.
    pub fn generator_homomorphism_defect(&self, group: &FiniteGroup) -> f64 {
        let mut worst: f64 = 0.0;
        for &s in group.generators() {
            for y in 0..group.order() {
                let prod = &self.matrices[s] * &self.matrices[y];
                worst = worst.max(max_abs_diff(&prod, &self.matrices[group.mul(s, y)]));
            }
        }
        worst
    }

    /// Distance of the commutant from the scalars. The averaging map
    /// `X ↦ |F|⁻¹ Σ ρ(g) X ρ(g)*` projects onto the commutant, so applying it
    /// to every matrix unit `E_ij` and comparing with `δ_ij/d · 1` certifies
    /// irreducibility when the result is small.
    pub fn irreducibility_defect(&self) -> f64 {
        let d = self.dim;
        let n = self.matrices.len() as f64;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut avg = CMatrix::zeros(d, d);
                for m in &self.matrices {
                    let ci = m.column(i);
                    let cj = m.column(j);
                    avg += ci * cj.adjoint();
                }
                avg /= Complex64::from(n);
                for r in 0..d {
                    avg[(r, r)] -= if i == j { Complex64::from(1.0 / d as f64) } else { ZERO };
                }
                worst = worst.max(avg.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }
}

/// `|F|⁻¹ Σ χ(g) conj(ψ(g))`, the dimension of the intertwiner space.
pub fn character_inner(chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let s: Complex64 = chi.iter().zip(psi).map(|(a, b)| a * b.conj()).sum();
    s / chi.len() as f64
}

#[derive(Clone, Debug)]
pub struct IrrepDecomposition {
    blocks: Vec<Irrep>,
    multiplicities: Vec<usize>,
    attempts: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub peter_weyl_sum: usize,
    pub order: usize,
    pub unitarity_defect: f64,
    pub homomorphism_defect: f64,
    pub irreducibility_defect: f64,
    /// Largest `|⟨χ_i, χ_j⟩|` over distinct blocks.
    pub max_intertwiner: f64,
    pub passed: bool,
}

/// Serializable view: block dimensions and character vectors.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub group: String,
    pub order: usize,
    pub dims: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub characters: Vec<Vec<[f64; 2]>>,
}

impl IrrepDecomposition {
    pub fn blocks(&self) -> &[Irrep] {
        &self.blocks
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    /// Number of seeds tried before the split succeeded.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// `max_i ‖Σ_g c_g ρ_i(g)‖`.
    pub fn norm_of(&self, coeffs: &[(usize, Complex64)]) -> f64 {
        self.blocks.iter().map(|b| crate::linalg::spectral_norm(&b.evaluate(coeffs))).fold(0.0, f64::max)
    }

    pub fn verify(&self, group: &FiniteGroup, tau: f64) -> DecompositionReport {
        let peter_weyl_sum = self.blocks.iter().map(|b| b.dim * b.dim).sum();
        let unitarity = self.blocks.iter().map(|b| b.unitarity_defect()).fold(0.0, f64::max);
        let hom = self.blocks.iter().map(|b| b.generator_homomorphism_defect(group)).fold(0.0, f64::max);
        let irr = self.blocks.iter().map(|b| b.irreducibility_defect()).fold(0.0, f64::max);
        let chars: Vec<Vec<Complex64>> = self.blocks.iter().map(|b| b.character()).collect();
        let mut inter: f64 = 0.0;
        for i in 0..chars.len() {
            for j in 0..i {
                inter = inter.max(character_inner(&chars[i], &chars[j]).norm());
            }
        }
        let passed = peter_weyl_sum == group.order() && unitarity <= tau && hom <= tau && irr <= tau && inter <= tau;
        DecompositionReport {
            peter_weyl_sum,
            order: group.order(),
            unitarity_defect: unitarity,
            homomorphism_defect: hom,
            irreducibility_defect: irr,
            max_intertwiner: inter,
            passed,
        }
    }

    pub fn summary(&self, group: &FiniteGroup) -> DecompositionSummary {
        DecompositionSummary {
            group: group.label().to_string(),
            order: group.order(),
            dims: self.dims(),
            multiplicities: self.multiplicities.clone(),
            characters: self
                .blocks
                .iter()
                .map(|b| b.character().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

/// Splits the regular representation of `group` into one representative
/// of each irreducible, each occurring with multiplicity equal to its
/// dimension. Randomness comes only from `seed`; a degenerate split is
/// retried with derived seeds up to `cfg.decompose_retries` times.
pub fn decompose_regular(group: &FiniteGroup, seed: u64, cfg: &Config) -> Result<IrrepDecomposition> {
    if group.order() > cfg.order_cap {
        return Err(Error::OrderCap { order: group.order(), cap: cfg.order_cap });
    }
    for attempt in 0..cfg.decompose_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        if let Some(mut blocks) = try_decompose(group, &mut rng, cfg) {
            blocks.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| character_key(a).cmp(&character_key(b))));
            let multiplicities = blocks.iter().map(|b| b.dim).collect();
            return Ok(IrrepDecomposition { blocks, multiplicities, attempts: attempt + 1 });
        }
    }
    Err(Error::DegenerateSplit { retries: cfg.decompose_retries })
}

fn character_key(b: &Irrep) -> Vec<(i64, i64)> {
    b.character().iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect()
}

fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
}

fn try_decompose(group: &FiniteGroup, rng: &mut ChaCha8Rng, cfg: &Config) -> Option<Vec<Irrep>> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    let mut class_of = vec![0; n];
    for (k, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = k;
        }
    }
    // Hermitian central element: w_K C_K + conj(w_K) C_K*.
    let weights: Vec<Complex64> = classes.iter().map(|_| random_unit(rng)).collect();
    let mut coeffs: Vec<(usize, Complex64)> =
        (0..n).map(|g| (g, weights[class_of[g]] + weights[class_of[group.inv(g)]].conj())).collect();
    normalize(&mut coeffs);
    let central = left_convolution_matrix(group, &coeffs);
    let (values, vectors) = hermitian_eigen(&central);
    let (ranges, gap) = cluster_sorted(&values, cfg.tau_spec);
    if ranges.len() != classes.len() || gap <= cfg.tau_spec {
        return None;
    }

    let mut blocks = Vec::with_capacity(ranges.len());
    for range in ranges {
        let size = range.len();
        let d = (size as f64).sqrt().round() as usize;
        if d * d != size {
            return None;
        }
        let v = vectors.columns(range.start, size).into_owned();
        let w = if d == 1 { v } else { split_isotypic(group, &v, d, rng, cfg)? };
        let matrices: Vec<CMatrix> = (0..n).map(|g| restrict(group, &w, g)).collect();
        let mut irrep = Irrep { dim: d, matrices };
        if d == 1 {
            snap_to_roots(&mut irrep, n);
        }
        if irrep.unitarity_defect() > cfg.tau_alg || irrep.generator_homomorphism_defect(group) > cfg.tau_alg {
            return None;
        }
        let chi = irrep.character();
        if (character_inner(&chi, &chi) - 1.0).norm() > cfg.tau_alg {
            return None;
        }
        blocks.push(irrep);
    }
    Some(blocks)
}

fn normalize(coeffs: &mut [(usize, Complex64)]) {
    let l1: f64 = coeffs.iter().map(|(_, c)| c.norm()).sum();
    if l1 > 0.0 {
        for (_, c) in coeffs.iter_mut() {
            *c /= l1;
        }
    }
}

/// Picks one of the `d` irreducible pieces of an isotypic component spanned
/// by the orthonormal columns of `v`.
fn split_isotypic(group: &FiniteGroup, v: &CMatrix, d: usize, rng: &mut ChaCha8Rng, cfg: &Config) -> Option<CMatrix> {
    let n = group.order();
    // b_{g⁻¹} = conj(b_g) makes Σ b_g R(g) Hermitian.
    let mut b = vec![ZERO; n];
    for g in 0..n {
        let gi = group.inv(g);
        if gi < g {
            continue;
        }
        let c = random_unit(rng);
        if gi == g {
            b[g] = Complex64::from(c.re);
        } else {
            b[g] = c;
            b[gi] = c.conj();
        }
    }
    let l1: f64 = b.iter().map(|c| c.norm()).sum();
    // (Σ_g b_g R(g) V)[x] = Σ_g b_g V[x·g]
    let cols = v.ncols();
    let mut bv = CMatrix::zeros(n, cols);
    for x in 0..n {
        for g in 0..n {
            if b[g] == ZERO {
                continue;
            }
            let xg = group.mul(x, g);
            let coef = b[g] / l1;
            for c in 0..cols {
                bv[(x, c)] += coef * v[(xg, c)];
            }
        }
    }
    let mut m = v.adjoint() * bv;
    m = (&m + m.adjoint()) * Complex64::from(0.5);
    let (values, vectors) = hermitian_eigen(&m);
    let (ranges, gap) = cluster_sorted(&values, cfg.tau_spec);
    if ranges.len() != d || gap <= cfg.tau_spec || ranges.iter().any(|r| r.len() != d) {
        return None;
    }
    Some(v * vectors.columns(0, d))
}

/// `W* L(g) W` for orthonormal columns `W` spanning an invariant subspace.
fn restrict(group: &FiniteGroup, w: &CMatrix, g: usize) -> CMatrix {
    let d = w.ncols();
    let mut out = CMatrix::zeros(d, d);
    for x in 0..group.order() {
        let gx = group.mul(g, x);
        for a in 0..d {
            let left = w[(gx, a)].conj();
            if left == ZERO {
                continue;
            }
            for c in 0..d {
                out[(a, c)] += left * w[(x, c)];
            }
        }
    }
    out
}

/// One-dimensional representations take values in the `|F|`-th roots of
/// unity; replace numerically computed values by the exact root.
fn snap_to_roots(irrep: &mut Irrep, order: usize) {
    for m in irrep.matrices.iter_mut() {
        let z = m[(0, 0)];
        let turns = z.arg() / std::f64::consts::TAU * order as f64;
        let root = root_of_unity(turns.round() as i64, order as i64);
        if (z - root).norm() < 1e-8 {
            m[(0, 0)] = root;
        }
    }
}
