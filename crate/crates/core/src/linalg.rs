//! Dense complex linear algebra used by the norm and decomposition code.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tolerances::DENSE_SVD_LIMIT;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

const POWER_REL_TOL: f64 = 1e-8;
const POWER_MAX_ITER: usize = 10_000;

/// Largest singular value. Dense SVD up to [`DENSE_SVD_LIMIT`], power
/// iteration on `M*M` above it.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.iter().all(|z| *z == ZERO) {
        return 0.0;
    }
    if m.nrows().max(m.ncols()) <= DENSE_SVD_LIMIT {
        m.singular_values().max()
    } else {
        power_spectral_norm(m, POWER_REL_TOL, POWER_MAX_ITER)
    }
}

/// Power iteration for the top eigenvalue of `M*M`. The start vector is drawn
/// from a fixed seed so the result is deterministic.
pub fn power_spectral_norm(m: &CMatrix, rel_tol: f64, max_iter: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = m.ncols();
    let mut v = CVector::from_fn(n, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let norm = v.norm();
    if norm == 0.0 {
        return 0.0;
    }
    v /= Complex64::from(norm);
    let adj = m.adjoint();
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let w = &adj * (m * &v);
        let next = w.norm();
        if next == 0.0 {
            return 0.0;
        }
        v = w / Complex64::from(next);
        if (next - lambda).abs() <= rel_tol * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending with the
/// matching eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Groups sorted values into clusters of consecutive entries closer than
/// `within`. Returns the half-open index ranges and the smallest gap seen
/// between neighbouring clusters.
pub fn cluster_sorted(values: &[f64], within: f64) -> (Vec<std::ops::Range<usize>>, f64) {
    let mut ranges = Vec::new();
    let mut min_gap = f64::INFINITY;
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > within {
            if i < values.len() {
                min_gap = min_gap.min(values[i] - values[i - 1]);
            }
            ranges.push(start..i);
            start = i;
        }
    }
    (ranges, min_gap)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entry of `U*U - 1`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(n, n))
}

/// `exp(2πi·num/den)`, exact on multiples of a quarter turn.
pub fn root_of_unity(num: i64, den: i64) -> Complex64 {
    assert!(den > 0);
    let r = num.rem_euclid(den);
    if (4 * r) % den == 0 {
        match 4 * r / den {
            0 => return ONE,
            1 => return I,
            2 => return -ONE,
            _ => return -I,
        }
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / den as f64)
}
