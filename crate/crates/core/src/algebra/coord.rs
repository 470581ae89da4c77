use std::collections::HashMap;

use num_traits::{One, Zero};

use super::poly::{Poly, Q};
use crate::error::{Error, Result};

/// An invertible linear substitution `x_i ↦ Σ_j c_ij x_j` of the fibre
/// variables. Base variables are never touched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    matrix: Vec<Vec<Q>>,
}

impl CoordChange {
    pub fn new(matrix: Vec<Vec<Q>>) -> Result<Self> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        if rational_determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(CoordChange { matrix })
    }

    pub fn from_integers(matrix: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            matrix
                .iter()
                .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        CoordChange { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    /// Substitutes the fibre variables of `f`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let ring = f.ring();
        let offset = ring.base_split().unwrap_or(0);
        let n = ring.arity() - offset;
        if n != self.size() {
            return Err(Error::ArityMismatch {
                expected: n,
                found: self.size(),
            });
        }
        let images: Vec<Poly> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Poly::zero(ring), |acc, (j, c)| {
                        &acc + &Poly::var(ring, offset + j).scalar_mul(c)
                    })
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(ring);
        for t in f.terms() {
            let mut base_part = t.exponent.clone();
            let mut term = Poly::one(ring);
            for (i, image) in images.iter().enumerate() {
                let k = t.exponent.entries()[offset + i];
                base_part.entries_mut()[offset + i] = 0;
                if k > 0 {
                    let pw = powers.entry((i, k)).or_insert_with(|| image.pow(k));
                    term = &term * pw;
                }
            }
            out = &out + &term.mul_term(&base_part, &t.coefficient);
        }
        Ok(out)
    }
}

/// Determinant of a rational matrix by fraction-exact Gaussian elimination.
pub(crate) fn rational_determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            let (upper, lower) = a.split_at_mut(r);
            for (dst, src) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                *dst -= &factor * src;
            }
        }
    }
    det
}
