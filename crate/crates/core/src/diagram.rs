//! Staircases `Γ ⊆ ℕ^m` with `Γ + ℕ^m = Γ`, stored by their vertices.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Exponent, OrderSpec};
use crate::error::{Error, Result};

/// A staircase, stored as the antichain of its vertices sorted in the
/// standard order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Diagram {
    arity: usize,
    vertices: Vec<Exponent>,
}

impl Diagram {
    /// The empty staircase, i.e. the diagram of the zero ideal.
    pub fn empty(arity: usize) -> Self {
        Diagram {
            arity,
            vertices: Vec::new(),
        }
    }

    /// The whole of `ℕ^m`, i.e. the diagram of the unit ideal.
    pub fn full(arity: usize) -> Self {
        Diagram {
            arity,
            vertices: vec![Exponent::zero(arity)],
        }
    }

    /// Keeps the componentwise-minimal elements of `exps`.
    pub fn from_exponents<'a>(
        arity: usize,
        exps: impl IntoIterator<Item = &'a Exponent>,
    ) -> Result<Self> {
        let mut all: Vec<&Exponent> = Vec::new();
        for e in exps {
            if e.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: e.arity(),
                });
            }
            all.push(e);
        }
        // by length first, so any divisor of an element precedes it
        let ord = OrderSpec::standard(arity);
        all.sort_by(|a, b| ord.cmp(a, b));
        all.dedup();
        let mut vertices: Vec<Exponent> = Vec::new();
        for e in all {
            if !vertices.iter().any(|v| v.divides(e)) {
                vertices.push(e.clone());
            }
        }
        Ok(Diagram { arity, vertices })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `Γ = ℕ^m`.
    pub fn is_full(&self) -> bool {
        self.vertices.iter().any(Exponent::is_zero)
    }

    pub fn contains(&self, b: &Exponent) -> Result<bool> {
        self.check_arity(b.arity())?;
        Ok(self.contains_unchecked(b))
    }

    pub(crate) fn contains_unchecked(&self, b: &Exponent) -> bool {
        self.vertices.iter().any(|v| v.divides(b))
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found == self.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.arity,
                found,
            })
        }
    }

    /// All exponents of length `≤ l` outside the staircase, in the standard
    /// order.
    pub fn complement_upto(&self, l: u32) -> Vec<Exponent> {
        exponents_upto(self.arity, l)
            .into_iter()
            .filter(|e| !self.contains_unchecked(e))
            .collect()
    }

    /// `H(k)`: the number of complement points of length `≤ k`.
    pub fn hilbert_samuel(&self, k: u32) -> u64 {
        self.complement_upto(k).len() as u64
    }

    /// Krull dimension of `K{x}` modulo the monomial ideal of the staircase:
    /// the largest set of variables containing the support of no vertex.
    ///
    /// Equivalently `m` minus the size of a smallest set of variables that
    /// meets every vertex support, found here by branch and bound.
    pub fn quotient_dimension(&self) -> usize {
        if self.is_full() {
            // the unit ideal; report the dimension of the empty set as 0
            return 0;
        }
        let supports: Vec<u64> = self
            .vertices
            .iter()
            .map(|v| v.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        self.arity - min_hitting_set(&supports, 0, self.arity)
    }

    /// Largest vertex length `l_0`.
    pub fn max_vertex_length(&self) -> Result<u32> {
        self.vertices
            .iter()
            .map(Exponent::length)
            .max()
            .ok_or(Error::EmptyDiagram)
    }

    /// Least `k` with every exponent of length `k` inside the staircase, when
    /// the complement is finite.
    pub fn power_of_maximal(&self) -> Option<u32> {
        let box_sides = self.axis_powers()?;
        // the complement lies in the box spanned by the pure-power vertices
        let longest = box_points(&box_sides)
            .filter(|e| !self.contains_unchecked(e))
            .map(|e| e.length() + 1)
            .max();
        Some(longest.unwrap_or(0))
    }

    /// Smallest `K` such that every exponent of weighted length `≥ K` lies in
    /// the staircase, when the complement is finite.
    pub fn weighted_corner(&self, ord: &OrderSpec) -> Option<u64> {
        let box_sides = self.axis_powers()?;
        let longest = box_points(&box_sides)
            .filter(|e| !self.contains_unchecked(e))
            .map(|e| ord.weighted_length(&e) + 1)
            .max();
        Some(longest.unwrap_or(0))
    }

    /// Number of complement points, when finite.
    pub fn complement_size(&self) -> Option<u64> {
        let box_sides = self.axis_powers()?;
        Some(
            box_points(&box_sides)
                .filter(|e| !self.contains_unchecked(e))
                .count() as u64,
        )
    }

    /// For each axis, the smallest pure power in the staircase, if any.
    pub fn axis_vertices(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.arity];
        for v in &self.vertices {
            if v.is_zero() {
                return vec![Some(0); self.arity];
            }
            if let Some(axis) = v.pure_power_axis() {
                out[axis] = Some(v.entries()[axis]);
            }
        }
        out
    }

    fn axis_powers(&self) -> Option<Vec<u32>> {
        self.axis_vertices().into_iter().collect()
    }

    /// Whether the staircases agree on every exponent of length `≤ l`.
    pub fn equal_upto(&self, other: &Diagram, l: u32) -> Result<bool> {
        self.check_arity(other.arity)?;
        // both sets are closed upwards, so comparing short vertices suffices
        let covered = |a: &Diagram, b: &Diagram| {
            a.vertices
                .iter()
                .filter(|v| v.length() <= l)
                .all(|v| b.contains_unchecked(v))
        };
        Ok(covered(self, other) && covered(other, self))
    }

    /// `self ⊆ other` on exponents of length `≤ l`.
    pub fn subset_upto(&self, other: &Diagram, l: u32) -> Result<bool> {
        self.check_arity(other.arity)?;
        Ok(self
            .vertices
            .iter()
            .filter(|v| v.length() <= l)
            .all(|v| other.contains_unchecked(v)))
    }

    /// The staircase restricted to exponents of length `≤ l`, re-expanded.
    pub fn truncate(&self, l: u32) -> Diagram {
        Diagram {
            arity: self.arity,
            vertices: self
                .vertices
                .iter()
                .filter(|v| v.length() <= l)
                .cloned()
                .collect(),
        }
    }
}

fn min_hitting_set(supports: &[u64], chosen: u64, arity: usize) -> usize {
    // first support not yet hit decides the branching
    let Some(&open) = supports.iter().find(|&&s| s & chosen == 0) else {
        return chosen.count_ones() as usize;
    };
    let mut best = arity;
    for i in 0..arity {
        if open & (1 << i) != 0 {
            best = best.min(min_hitting_set(supports, chosen | (1 << i), arity));
        }
    }
    best
}

/// All exponents of length `≤ l`, in the standard order.
pub fn exponents_upto(arity: usize, l: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for d in 0..=l {
        exponents_of_length(arity, d, &mut out);
    }
    let ord = OrderSpec::standard(arity);
    out.sort_by(|a, b| ord.cmp(a, b));
    out
}

fn exponents_of_length(arity: usize, d: u32, out: &mut Vec<Exponent>) {
    fn go(prefix: &mut Vec<u32>, arity: usize, left: u32, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == arity {
            prefix.push(left);
            out.push(Exponent::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            go(prefix, arity, left - k, out);
            prefix.pop();
        }
    }
    if arity == 0 {
        if d == 0 {
            out.push(Exponent::zero(0));
        }
        return;
    }
    go(&mut Vec::with_capacity(arity), arity, d, out);
}

fn box_points(sides: &[u32]) -> impl Iterator<Item = Exponent> + '_ {
    let total: u64 = sides.iter().map(|&s| u64::from(s)).product();
    (0..total).map(move |mut idx| {
        Exponent::new(sides.iter().map(|&s| {
            let v = (idx % u64::from(s)) as u32;
            idx /= u64::from(s);
            v
        }))
    })
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{self}")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A diagram known to be correct only on `{β : L(β) ≤ length_bound}`, where
/// `L` is the weighted length of `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSlice {
    pub diagram: Diagram,
    pub length_bound: u32,
    pub order: OrderSpec,
    pub certified: bool,
}

impl DiagramSlice {
    /// Whether `b` lies in the certified region.
    pub fn covers(&self, b: &Exponent) -> bool {
        self.order.weighted_length(b) <= u64::from(self.length_bound)
    }

    /// Membership, or `None` outside the certified region.
    pub fn contains(&self, b: &Exponent) -> Option<bool> {
        self.covers(b).then(|| self.diagram.contains_unchecked(b))
    }
}
