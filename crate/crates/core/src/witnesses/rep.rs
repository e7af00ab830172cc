use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::finite_group::{FiniteGroup, Irrep};
use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement};
use crate::linalg::{max_abs_diff, root_of_unity, unitarity_defect, CMatrix};
use crate::tolerances::TAU_ALG;
use crate::{Error, Result};

/// A unimodular scalar, kept as an exact fraction of a turn when it is a
/// root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Phase {
    Root { num: i64, den: i64 },
    Radians { angle: f64 },
}

impl Phase {
    pub const ONE: Phase = Phase::Root { num: 0, den: 1 };

    pub fn root(num: i64, den: i64) -> Phase {
        assert!(den > 0, "root of unity needs a positive order");
        let num = num.rem_euclid(den);
        let g = gcd(num, den);
        Phase::Root { num: num / g, den: den / g }
    }

    pub fn value(&self) -> Complex64 {
        match *self {
            Phase::Root { num, den } => root_of_unity(num, den),
            Phase::Radians { angle } => Complex64::from_polar(1.0, angle),
        }
    }

    /// Position on the circle in turns, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        match *self {
            Phase::Root { num, den } => num as f64 / den as f64,
            Phase::Radians { angle } => (angle / std::f64::consts::TAU).rem_euclid(1.0),
        }
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeisenbergParams {
    pub n: usize,
    pub k: usize,
    pub alpha: Phase,
    pub beta: Phase,
}

/// A unitary representation given by one matrix per generator of its group
/// (in [`DiscreteGroup::generators`] order).
#[derive(Clone, Debug)]
pub struct GeneratorRep {
    group: DiscreteGroup,
    dim: usize,
    generator_matrices: Vec<CMatrix>,
    params: Option<HeisenbergParams>,
}

impl GeneratorRep {
    /// Validates unitarity and the defining relations within `TAU_ALG`.
    pub fn new(group: DiscreteGroup, generator_matrices: Vec<CMatrix>) -> Result<GeneratorRep> {
        let want = group.generators().len();
        if generator_matrices.len() != want {
            return Err(Error::InvalidParams(format!("{} needs {want} generator matrices", group.label())));
        }
        let dim = generator_matrices.first().map_or(1, |m| m.nrows());
        if dim == 0 || generator_matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::InvalidParams("generator matrices must be square of one common size".into()));
        }
        let rep = GeneratorRep { group, dim, generator_matrices, params: None };
        if rep.unitarity_defect() > TAU_ALG {
            return Err(Error::InvalidParams(format!("generator matrices are not unitary (defect {:e})", rep.unitarity_defect())));
        }
        let rel = rep.relation_defect();
        if rel > TAU_ALG {
            return Err(Error::InvalidParams(format!("generator matrices violate the group relations (defect {rel:e})")));
        }
        Ok(rep)
    }

    pub fn trivial(group: DiscreteGroup) -> GeneratorRep {
        let gens = group.generators().len();
        GeneratorRep { group, dim: 1, generator_matrices: vec![CMatrix::identity(1, 1); gens], params: None }
    }

    /// An irreducible representation of a finite group, restricted to its
    /// generators.
    pub fn from_irrep(group: &std::sync::Arc<FiniteGroup>, irrep: &Irrep) -> Result<GeneratorRep> {
        let mats = group.generators().iter().map(|&g| irrep.matrix(g).clone()).collect();
        GeneratorRep::new(DiscreteGroup::Finite(group.clone()), mats)
    }

    pub fn group(&self) -> &DiscreteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[CMatrix] {
        &self.generator_matrices
    }

    pub fn params(&self) -> Option<&HeisenbergParams> {
        self.params.as_ref()
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.generator_matrices.iter().map(unitarity_defect).fold(0.0, f64::max)
    }

    /// Largest entrywise defect in the defining relations: commutators for
    /// `ℤᵈ`, `gh = zhg` with `z` central for the Heisenberg group, and the
    /// full multiplication table for a finite group.
    pub fn relation_defect(&self) -> f64 {
        let m = &self.generator_matrices;
        match &self.group {
            DiscreteGroup::Lattice(_) => {
                let mut d: f64 = 0.0;
                for a in m {
                    for b in m {
                        d = d.max(max_abs_diff(&(a * b), &(b * a)));
                    }
                }
                d
            }
            DiscreteGroup::Heisenberg => {
                let (g, h, z) = (&m[0], &m[1], &m[2]);
                max_abs_diff(&(g * h), &(z * h * g))
                    .max(max_abs_diff(&(z * g), &(g * z)))
                    .max(max_abs_diff(&(z * h), &(h * z)))
            }
            DiscreteGroup::Free2 => 0.0,
            DiscreteGroup::Finite(f) => {
                let images: Vec<CMatrix> = (0..f.order()).map(|x| self.evaluate(&Element::Finite(x))).collect();
                let mut d: f64 = 0.0;
                for x in 0..f.order() {
                    for (i, &s) in f.generators().iter().enumerate() {
                        d = d.max(max_abs_diff(&(&images[x] * &m[i]), &images[f.mul(x, s)]));
                    }
                }
                d
            }
        }
    }

    fn power(&self, gen: usize, e: i64) -> CMatrix {
        let base = if e < 0 { self.generator_matrices[gen].adjoint() } else { self.generator_matrices[gen].clone() };
        matrix_power(&base, e.unsigned_abs())
    }

    /// `π(x)`. A Heisenberg element `(n, m, l)` is evaluated as `z^l h^m g^n`.
    pub fn evaluate(&self, x: &Element) -> CMatrix {
        self.group.check(x).expect("element of the representation's group");
        let mut out = CMatrix::identity(self.dim, self.dim);
        match x {
            Element::Lattice(v) => {
                for (i, &e) in v.iter().enumerate() {
                    out *= self.power(i, e);
                }
            }
            Element::Heisenberg([n, m, l]) => {
                out = self.power(2, *l) * self.power(1, *m) * self.power(0, *n);
            }
            Element::Word(w) => {
                for l in w.letters() {
                    let (i, pos) = l.generator();
                    out *= self.power(i, if pos { 1 } else { -1 });
                }
            }
            Element::Finite(g) => {
                let f = self.group.finite().expect("finite group");
                for &i in &f.words()[*g] {
                    out *= &self.generator_matrices[i];
                }
            }
        }
        out
    }

    /// `Σ a(w) π(w)`.
    pub fn evaluate_algebra(&self, a: &GroupAlgebraElement) -> Result<CMatrix> {
        if a.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (x, c) in a.terms() {
            out += self.evaluate(x) * *c;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.descriptor(),
            "dim": self.dim,
            "generator_matrices": self.generator_matrices.iter().map(matrix_json).collect::<Vec<_>>(),
            "params": self.params,
        })
    }
}

fn matrix_power(base: &CMatrix, mut e: u64) -> CMatrix {
    let n = base.nrows();
    let mut acc = CMatrix::identity(n, n);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Rows of `[re, im]` pairs.
pub fn matrix_json(m: &CMatrix) -> Value {
    json!((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// The representation `π^(n,k,α,β)` of the Heisenberg group on `ℂⁿ`:
/// `π(g) = α·diag(1, ω^k, …, ω^{(n−1)k})`, `π(h) = β·s` with `s δ_j = δ_{j+1}`,
/// and `π(z) = ω^k·1`, where `ω = e^{2πi/n}`.
pub fn heisenberg_irrep(n: usize, k: usize, alpha: Phase, beta: Phase) -> Result<GeneratorRep> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    if gcd(k as i64, n as i64) != 1 {
        return Err(Error::InvalidParams(format!("gcd({k}, {n}) must be 1")));
    }
    for (name, p) in [("alpha", alpha), ("beta", beta)] {
        let ok = match p {
            Phase::Root { den, .. } => den > 0,
            Phase::Radians { angle } => angle.is_finite(),
        };
        if !ok {
            return Err(Error::InvalidParams(format!("{name} is not a unimodular scalar")));
        }
    }
    let (a, b) = (alpha.value(), beta.value());
    let g = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, (0..n).map(|j| a * root_of_unity((j * k) as i64, n as i64))));
    let mut h = CMatrix::zeros(n, n);
    for j in 0..n {
        h[((j + 1) % n, j)] = b;
    }
    let z = CMatrix::identity(n, n) * root_of_unity(k as i64, n as i64);
    Ok(GeneratorRep {
        group: DiscreteGroup::Heisenberg,
        dim: n,
        generator_matrices: vec![g, h, z],
        params: Some(HeisenbergParams { n, k, alpha, beta }),
    })
}

/// `π^(n,k,α,β)(x)` in closed form: `(a, b, c) ↦ ω^{kc} β^b α^a s^b D^a`.
pub(crate) fn heisenberg_closed_form(p: &HeisenbergParams, x: [i64; 3]) -> CMatrix {
    let n = p.n;
    let [a, b, c] = x;
    let scalar = root_of_unity(p.k as i64 * c, n as i64) * p.alpha.value().powi(a as i32) * p.beta.value().powi(b as i32);
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        let row = (j as i64 + b).rem_euclid(n as i64) as usize;
        m[(row, j)] = scalar * root_of_unity(p.k as i64 * j as i64 * a, n as i64);
    }
    m
}

/// `m == s·1` with exact floating-point equality.
pub fn is_scalar_exact(m: &CMatrix, s: Complex64) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| m[(i, j)] == if i == j { s } else { Complex64::new(0.0, 0.0) }))
}

pub fn is_coprime(a: usize, b: usize) -> bool {
    gcd(a as i64, b as i64) == 1
}
