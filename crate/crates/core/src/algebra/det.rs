use super::poly::Poly;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by cofactor expansion.
///
/// The empty matrix is rejected since it carries no ring.
pub fn determinant(rows: &[Vec<Poly>]) -> Result<Poly> {
    let n = rows.len();
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NonSquare {
                rows: n,
                row,
                len: r.len(),
            });
        }
    }
    let Some(first) = rows.first().and_then(|r| r.first()) else {
        return Err(Error::NonSquare {
            rows: 0,
            row: 0,
            len: 0,
        });
    };
    let ring = first.ring().clone();
    for f in rows.iter().flatten() {
        if !super::poly::same_ring(f.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(rows, 0, &cols))
}

// Laplace expansion along row `row` over the remaining columns.
fn expand(rows: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    let ring = rows[0][0].ring();
    if cols.len() == 1 {
        return rows[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let minor = expand(rows, row + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}
