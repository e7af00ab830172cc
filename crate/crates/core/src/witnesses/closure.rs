use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Arc;

use super::rep::{matrix_json, GeneratorRep};
use crate::finite_group::FiniteGroup;
use crate::group_algebra::GroupAlgebraElement;
use crate::linalg::{max_abs_diff, CMatrix};
use crate::quotients::FiniteQuotient;
use crate::tolerances::Config;
use crate::{Error, Result};

pub const MAX_SIZE_BOUND: usize = 1_000_000;
const KERNEL_WORD_LIMIT: usize = 64;
const BUCKET: f64 = 1e-4;

/// A word in the generators of a representation: `(generator index, ±1)`.
pub type GenWord = Vec<(usize, i8)>;

/// The finite image of a representation, with element `i` acting by
/// `matrices[i]`. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteImage {
    pub group: Arc<FiniteGroup>,
    pub matrices: Vec<CMatrix>,
    pub generator_images: Vec<usize>,
    /// Nontrivial reduced words found to act as the identity, shortest first.
    pub kernel_words: Vec<GenWord>,
}

impl FiniteImage {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `Σ c(x) M_x` for an element of the image group's algebra.
    pub fn evaluate(&self, a: &GroupAlgebraElement) -> Result<CMatrix> {
        let d = self.matrices[0].nrows();
        let mut out = CMatrix::zeros(d, d);
        for (x, c) in a.finite_terms()? {
            out += &self.matrices[x] * c;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "generator_images": self.generator_images,
            "kernel_words": self.kernel_words,
            "matrices": self.matrices.iter().map(matrix_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub enum RangeOutcome {
    Finite(FiniteImage),
    Overflow { explored: usize, bound: usize },
}

impl RangeOutcome {
    pub fn finite(&self) -> Option<&FiniteImage> {
        match self {
            RangeOutcome::Finite(img) => Some(img),
            RangeOutcome::Overflow { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RangeOutcome::Finite(img) => json!({"status": "finite", "image": img.to_json()}),
            RangeOutcome::Overflow { explored, bound } => json!({"status": "overflow", "explored": explored, "bound": bound}),
        }
    }
}

struct MatrixIndex {
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    buckets: HashMap<i64, Vec<usize>>,
}

impl MatrixIndex {
    fn new(dim: usize) -> MatrixIndex {
        let mut rng = crate::sampling::rng(0x5eed_c105);
        let mut draw = || (0..dim).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        MatrixIndex { u: draw(), v: draw(), buckets: HashMap::new() }
    }

    fn key(&self, m: &CMatrix) -> i64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                s += self.u[i].conj() * m[(i, j)] * self.v[j];
            }
        }
        ((s.re + 0.5 * s.im) / BUCKET).floor() as i64
    }

    /// Index of a stored matrix within `tau` of `m`, or `None`. Distances
    /// in `(tau, 10·tau]` are ambiguous and fail.
    fn find(&self, m: &CMatrix, stored: &[CMatrix], tau: f64) -> Result<Option<usize>> {
        let key = self.key(m);
        for k in key - 1..=key + 1 {
            for &i in self.buckets.get(&k).into_iter().flatten() {
                let d = max_abs_diff(m, &stored[i]);
                if d <= tau {
                    return Ok(Some(i));
                }
                if d <= 10.0 * tau {
                    return Err(Error::Precision(format!("two products at distance {d:e}, between tau_group and 10·tau_group")));
                }
            }
        }
        Ok(None)
    }

    fn insert(&mut self, m: &CMatrix, i: usize) {
        self.buckets.entry(self.key(m)).or_default().push(i);
    }
}

fn reduce(word: GenWord) -> GenWord {
    let mut out: GenWord = Vec::with_capacity(word.len());
    for l in word {
        if out.last().is_some_and(|&(g, e)| g == l.0 && e == -l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Closes the generator matrices under right multiplication, identifying
/// matrices within `tau_group`. Returns the image group with its
/// multiplication table, or `Overflow` once more than `size_bound`
/// distinct matrices appear.
pub fn finite_range_check(rep: &GeneratorRep, size_bound: usize, cfg: &Config) -> Result<RangeOutcome> {
    if size_bound == 0 || size_bound > MAX_SIZE_BOUND {
        return Err(Error::InvalidParams(format!("size bound must be in 1..={MAX_SIZE_BOUND}")));
    }
    let gens = rep.generator_matrices();
    let dim = rep.dim();
    let tau = cfg.tau_group;
    let mut index = MatrixIndex::new(dim);
    let mut mats = vec![CMatrix::identity(dim, dim)];
    index.insert(&mats[0], 0);
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut kernel_words: Vec<GenWord> = Vec::new();
    let word_of = |parent: &[(usize, usize)], mut x: usize| {
        let mut w = Vec::new();
        while x != 0 {
            let (p, s) = parent[x];
            w.push((s, 1i8));
            x = p;
        }
        w.reverse();
        w
    };
    let mut x = 0;
    while x < mats.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            let y = &mats[x] * g;
            let idx = match index.find(&y, &mats, tau)? {
                Some(i) => {
                    if kernel_words.len() < KERNEL_WORD_LIMIT && parent[i] != (x, s) {
                        let mut w = word_of(&parent, x);
                        w.push((s, 1));
                        w.extend(word_of(&parent, i).into_iter().rev().map(|(g, _)| (g, -1)));
                        let w = reduce(w);
                        if !w.is_empty() && !kernel_words.contains(&w) {
                            kernel_words.push(w);
                        }
                    }
                    i
                }
                None => {
                    if mats.len() >= size_bound {
                        return Ok(RangeOutcome::Overflow { explored: mats.len(), bound: size_bound });
                    }
                    let i = mats.len();
                    index.insert(&y, i);
                    mats.push(y);
                    parent.push((x, s));
                    i
                }
            };
            row.push(idx as u32);
        }
        right.push(row);
        x += 1;
    }
    let order = mats.len();
    if order > cfg.order_cap {
        return Err(Error::OrderCap { order, cap: cfg.order_cap });
    }
    // table[x][y] = table[x][parent(y)] · s(y), filled in breadth-first order
    let mut table = vec![0u32; order * order];
    for xx in 0..order {
        table[xx * order] = xx as u32;
        for y in 1..order {
            let (p, s) = parent[y];
            table[xx * order + y] = right[table[xx * order + p] as usize][s];
        }
    }
    let generator_images: Vec<usize> = right[0].iter().map(|&i| i as usize).collect();
    kernel_words.sort_by_key(|w| w.len());
    let label = format!("image of a {}-dim rep of {}", dim, rep.group().label());
    let group = FiniteGroup::from_table(label, order, table, generator_images.clone())?;
    Ok(RangeOutcome::Finite(FiniteImage { group: Arc::new(group), matrices: mats, generator_images, kernel_words }))
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub quotient: FiniteQuotient,
    /// The tautological representation of the quotient: `x ↦ matrices[x]`.
    pub image: FiniteImage,
    pub max_defect: f64,
    pub samples: usize,
    pub passed: bool,
}

impl Factorization {
    pub fn to_json(&self) -> Value {
        json!({
            "quotient": self.quotient.to_json(),
            "max_defect": self.max_defect,
            "samples": self.samples,
            "passed": self.passed,
        })
    }
}

/// Builds `G → image` from the generator images and checks that
/// evaluating the representation on `a` agrees with evaluating the
/// tautological representation on `κ(a)`, for every sample `a`.
pub fn factor_through_quotient(rep: &GeneratorRep, image: &FiniteImage, samples: &[GroupAlgebraElement], cfg: &Config) -> Result<Factorization> {
    let quotient = FiniteQuotient::from_generator_images(rep.group().clone(), &image.group, &image.generator_images)?;
    if !Arc::ptr_eq(quotient.target(), &image.group) && quotient.target().as_ref() != image.group.as_ref() {
        return Err(Error::InvalidParams("generator images do not generate the enumerated image".into()));
    }
    let mut max_defect: f64 = 0.0;
    for a in samples {
        if a.group() != rep.group() {
            return Err(Error::GroupMismatch);
        }
        let direct = rep.evaluate_algebra(a)?;
        let via = image.evaluate(&quotient.kappa(a)?)?;
        max_defect = max_defect.max(max_abs_diff(&direct, &via));
    }
    Ok(Factorization { passed: max_defect <= cfg.tau_alg, quotient, image: image.clone(), max_defect, samples: samples.len() })
}
