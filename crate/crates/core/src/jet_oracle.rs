//! Independent check on the standard-basis engine.
//!
//! Below a weighted length `N` the diagram of `I` is read off from the row
//! space spanned by the truncations of `x^γ·g_i`: an element of `I + m^N`
//! whose initial exponent has length `< N` has the same initial exponent as
//! an element of `I`. Rows are reduced on their order-minimal entry, so the
//! pivot columns are exactly the slice of the diagram.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Exponent, OrderSpec, Poly, Q};
use crate::diagram::{Diagram, DiagramSlice};
use crate::error::{Error, Result};
use crate::par;
use crate::standard_basis::{diagram_of_ideal_with, SbOptions};

type Row = Vec<(usize, Q)>;

/// Reduced row echelon data of the truncated ideal.
#[derive(Clone, Debug)]
pub struct TruncationBasis {
    pub n: u32,
    /// All exponents of weighted length `< n`, ascending in the order.
    pub monomials: Vec<Exponent>,
    /// Pivot rows keyed by pivot column, pivots normalized to one.
    pub rows: Vec<Row>,
}

impl TruncationBasis {
    pub fn pivots(&self) -> impl Iterator<Item = &Exponent> {
        self.rows.iter().map(|r| &self.monomials[r[0].0])
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Exponents of weighted length `< n`, sorted by `ord`.
pub fn monomials_below(ord: &OrderSpec, n: u32) -> Vec<Exponent> {
    fn go(ord: &OrderSpec, i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == ord.arity() {
            out.push(Exponent::new(cur.iter().copied()));
            return;
        }
        let w = u64::from(ord.weights()[i]);
        let mut k = 0u32;
        while u64::from(k) * w <= left {
            cur.push(k);
            go(ord, i + 1, left - u64::from(k) * w, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(ord, 0, u64::from(n) - 1, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| ord.cmp(a, b));
    out
}

fn sub_scaled(a: &Row, b: &Row, c: &Q) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-reduces the truncated multiples of `gens` below weighted length `n`.
pub fn truncation_basis(gens: &[Poly], n: u32, ord: &OrderSpec) -> Result<TruncationBasis> {
    let monomials = monomials_below(ord, n);
    let index: HashMap<&Exponent, usize> =
        monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut pivots: Vec<Option<Row>> = vec![None; monomials.len()];
    let limit = u64::from(n);

    for g in gens {
        if g.ring().arity() != ord.arity() {
            return Err(Error::ArityMismatch {
                expected: ord.arity(),
                found: g.ring().arity(),
            });
        }
        let Ok(lead) = g.initial_exponent_in(ord) else {
            continue;
        };
        let lead_len = ord.weighted_length(lead);
        for shift in &monomials {
            if ord.weighted_length(shift) + lead_len >= limit {
                continue;
            }
            let mut row: Row = g
                .terms()
                .iter()
                .filter_map(|t| {
                    let e = &t.exponent + shift;
                    index.get(&e).map(|&c| (c, t.coefficient.clone()))
                })
                .collect();
            row.sort_unstable_by_key(|(c, _)| *c);
            while let Some((col, coef)) = row.first().cloned() {
                match &pivots[col] {
                    Some(p) => row = sub_scaled(&row, p, &coef),
                    None => {
                        let inv = coef.recip();
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                        pivots[col] = Some(row);
                        break;
                    }
                }
            }
        }
    }

    // back substitution: clear every pivot column from the other rows
    let cols: Vec<usize> = (0..pivots.len()).filter(|&c| pivots[c].is_some()).collect();
    for &pc in cols.iter().rev() {
        let p = pivots[pc].clone().expect("pivot");
        for &other in cols.iter().filter(|&&c| c < pc) {
            let r = pivots[other].as_ref().expect("pivot");
            if let Some((_, v)) = r.iter().find(|(c, _)| *c == pc) {
                let v = v.clone();
                pivots[other] = Some(sub_scaled(r, &p, &v));
            }
        }
    }
    let rows: Vec<Row> = pivots.into_iter().flatten().collect();
    debug_assert!(rows.iter().all(|r| r[0].1.is_one()));
    Ok(TruncationBasis { n, monomials, rows })
}

/// The slice `{β : L(β) < n}` of the diagram of the ideal generated by `gens`.
pub fn truncated_diagram(gens: &[Poly], n: u32, ord: &OrderSpec) -> Result<DiagramSlice> {
    if n == 0 {
        return Err(Error::InvalidRange(
            "truncation order must be at least 1".into(),
        ));
    }
    let tb = truncation_basis(gens, n, ord)?;
    Ok(DiagramSlice {
        diagram: Diagram::from_exponents(ord.arity(), tb.pivots())?,
        length_bound: n - 1,
        order: ord.clone(),
        certified: true,
    })
}

/// `H_I(n-1)`: exponents of length `< n` outside the slice.
pub fn truncated_quotient_dim(gens: &[Poly], n: u32) -> Result<u64> {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return Err(Error::InvalidRange(
            "no generators to infer the ring from".into(),
        ));
    };
    truncated_quotient_dim_in(gens, n, &OrderSpec::standard(ring.arity()))
}

pub fn truncated_quotient_dim_in(gens: &[Poly], n: u32, ord: &OrderSpec) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidRange(
            "truncation order must be at least 1".into(),
        ));
    }
    let tb = truncation_basis(gens, n, ord)?;
    Ok((tb.monomials.len() - tb.rank()) as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub n: u32,
    pub agree: bool,
    pub first_difference: Option<Exponent>,
    pub engine_vertices: Vec<Exponent>,
    pub oracle_vertices: Vec<Exponent>,
}

/// Runs the standard-basis engine and the oracle and compares their diagrams
/// on every exponent of weighted length `< n`.
pub fn oracle_cross_check(gens: &[Poly], n: u32, ord: &OrderSpec) -> Result<CrossCheckReport> {
    oracle_cross_check_with(gens, n, ord, &SbOptions::default())
}

pub fn oracle_cross_check_with(
    gens: &[Poly],
    n: u32,
    ord: &OrderSpec,
    opts: &SbOptions,
) -> Result<CrossCheckReport> {
    let engine = diagram_of_ideal_with(gens, ord, opts)?;
    let slice = truncated_diagram(gens, n, ord)?;
    let first_difference = monomials_below(ord, n)
        .into_iter()
        .find(|e| engine.contains_unchecked(e) != slice.diagram.contains_unchecked(e));
    let short = |d: &Diagram| -> Vec<Exponent> {
        d.vertices()
            .iter()
            .filter(|v| ord.weighted_length(v) < u64::from(n))
            .cloned()
            .collect()
    };
    Ok(CrossCheckReport {
        n,
        agree: first_difference.is_none(),
        first_difference,
        engine_vertices: short(&engine),
        oracle_vertices: slice.diagram.vertices().to_vec(),
    })
}

/// Cross-checks many ideals; runs on the rayon pool when enabled.
pub fn cross_check_batch(
    instances: &[Vec<Poly>],
    n: u32,
    ord: &OrderSpec,
    opts: &SbOptions,
) -> Vec<Result<CrossCheckReport>> {
    par::map(instances, |gens| {
        oracle_cross_check_with(gens, n, ord, opts)
    })
}
