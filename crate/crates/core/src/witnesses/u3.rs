use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use crate::{Error, Result};

const LETTERS: [&str; 4] = ["A", "A^-1", "B", "B^-1"];

#[derive(Clone, Debug, Serialize)]
pub struct U3Report {
    pub max_word_length: usize,
    pub words_checked: usize,
    pub min_distance: f64,
    pub argmin_word: String,
    /// Smallest distance among words of each length `1..=max_word_length`.
    pub min_distance_by_length: Vec<f64>,
    pub threshold: f64,
    pub passed: bool,
    pub u: [[f64; 3]; 3],
    pub v: [[f64; 3]; 3],
    pub a: [[f64; 3]; 3],
    pub b: [[f64; 3]; 3],
}

pub fn u3_matrices() -> (Matrix3<f64>, Matrix3<f64>) {
    let r2 = std::f64::consts::SQRT_2 / 2.0;
    let r3 = 3f64.sqrt() / 2.0;
    let u = Matrix3::new(r2, 0.0, -r2, 0.0, 1.0, 0.0, r2, 0.0, r2);
    let v = Matrix3::new(1.0, 0.0, 0.0, 0.0, r3, -0.5, 0.0, 0.5, r3);
    (u, v)
}

/// `A = (uv)²`, `B = (uv²)²`.
pub fn u3_generators() -> (Matrix3<f64>, Matrix3<f64>) {
    let (u, v) = u3_matrices();
    let uv = u * v;
    let uv2 = u * v * v;
    (uv * uv, uv2 * uv2)
}

/// Spectral norm of `W − 1`.
pub fn distance_from_identity(w: &Matrix3<f64>) -> f64 {
    let d = w - Matrix3::identity();
    let eig = SymmetricEigen::new(d.transpose() * d);
    eig.eigenvalues.max().max(0.0).sqrt()
}

fn rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

/// Evaluates every nontrivial reduced word of length at most `max_len` in
/// `A`, `B` and reports the smallest distance from the identity.
pub fn free_group_u3_check(max_len: usize, threshold: f64) -> Result<U3Report> {
    if max_len > crate::tolerances::MAX_WORD_LENGTH {
        return Err(Error::InvalidParams(format!("word length must be at most {}", crate::tolerances::MAX_WORD_LENGTH)));
    }
    let (u, v) = u3_matrices();
    let (a, b) = u3_generators();
    let gens = [a, a.transpose(), b, b.transpose()];
    let mut by_len = vec![f64::INFINITY; max_len];
    let mut best = (f64::INFINITY, Vec::new());
    let mut count = 0usize;
    // depth-first over reduced words, last letter index on the stack
    let mut stack: Vec<(Matrix3<f64>, Vec<usize>)> = Vec::new();
    if max_len > 0 {
        for l in (0..4).rev() {
            stack.push((gens[l], vec![l]));
        }
    }
    while let Some((m, word)) = stack.pop() {
        count += 1;
        let d = distance_from_identity(&m);
        let len = word.len();
        by_len[len - 1] = by_len[len - 1].min(d);
        if d < best.0 {
            best = (d, word.clone());
        }
        if len < max_len {
            let last = *word.last().unwrap();
            for l in (0..4).rev() {
                if l == last ^ 1 {
                    continue;
                }
                let mut w = word.clone();
                w.push(l);
                stack.push((m * gens[l], w));
            }
        }
    }
    let min_distance = best.0;
    Ok(U3Report {
        max_word_length: max_len,
        words_checked: count,
        min_distance,
        argmin_word: best.1.iter().map(|&l| LETTERS[l]).collect::<Vec<_>>().join(" "),
        min_distance_by_length: by_len,
        threshold,
        passed: count == 0 || min_distance > threshold,
        u: rows(&u),
        v: rows(&v),
        a: rows(&a),
        b: rows(&b),
    })
}
