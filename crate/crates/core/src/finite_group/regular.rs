use num_complex::Complex64;

use super::FiniteGroup;
use crate::linalg::{CMatrix, ONE};

/// Left translation `δ_h ↦ δ_{gh}` on `ℓ²(F)`.
#[derive(Clone, Copy, Debug)]
pub struct RegularRepresentation<'a> {
    group: &'a FiniteGroup,
}

pub fn regular_representation(group: &FiniteGroup) -> RegularRepresentation<'_> {
    RegularRepresentation { group }
}

impl<'a> RegularRepresentation<'a> {
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// The permutation `h ↦ gh`.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.group.order()).map(|h| self.group.mul(g, h)).collect()
    }

    pub fn matrix(&self, g: usize) -> CMatrix {
        let n = self.group.order();
        let mut m = CMatrix::zeros(n, n);
        for h in 0..n {
            m[(self.group.mul(g, h), h)] = ONE;
        }
        m
    }
}

/// Matrix of left convolution by `Σ c_g δ_g`: `M[x][y] = c(x·y⁻¹)`.
pub fn left_convolution_matrix(group: &FiniteGroup, coeffs: &[(usize, Complex64)]) -> CMatrix {
    let n = group.order();
    let mut m = CMatrix::zeros(n, n);
    for &(g, c) in coeffs {
        for y in 0..n {
            m[(group.mul(g, y), y)] += c;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{build_finite_group, FiniteFamily};

    #[test]
    fn trivial_group_regular_is_one() {
        let g = build_finite_group(&FiniteFamily::Cyclic(1)).unwrap();
        assert_eq!(regular_representation(&g).matrix(0), CMatrix::identity(1, 1));
    }

    #[test]
    fn cyclic_generator_is_shift() {
        let n = 5;
        let g = build_finite_group(&FiniteFamily::Cyclic(n)).unwrap();
        let m = regular_representation(&g).matrix(1);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == (j + 1) % n { ONE } else { Complex64::new(0.0, 0.0) };
                assert_eq!(m[(i, j)], expect);
            }
        }
    }

    #[test]
    fn symmetric_3_regular_is_faithful_homomorphism() {
        let g = build_finite_group(&FiniteFamily::Symmetric(3)).unwrap();
        let reg = regular_representation(&g);
        let mats: Vec<CMatrix> = (0..6).map(|x| reg.matrix(x)).collect();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(&mats[x] * &mats[y], mats[g.mul(x, y)]);
                if x != y {
                    assert_ne!(mats[x], mats[y]);
                }
            }
        }
    }

    #[test]
    fn convolution_matrix_is_sum_of_translations() {
        let g = build_finite_group(&FiniteFamily::Dihedral(3)).unwrap();
        let reg = regular_representation(&g);
        let coeffs = [(1, Complex64::new(2.0, 1.0)), (4, Complex64::new(-1.0, 0.0))];
        let expect = reg.matrix(1) * coeffs[0].1 + reg.matrix(4) * coeffs[1].1;
        assert_eq!(left_convolution_matrix(&g, &coeffs), expect);
    }
}
