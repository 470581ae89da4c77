use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A multi-index `β ∈ ℕ^m`, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(SmallVec<[u32; 4]>);

impl Exponent {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        Exponent(entries.into_iter().collect())
    }

    pub fn zero(arity: usize) -> Self {
        Exponent(SmallVec::from_elem(0, arity))
    }

    /// The pure power `x_axis^power`.
    pub fn axis(arity: usize, axis: usize, power: u32) -> Self {
        let mut e = Self::zero(arity);
        e.0[axis] = power;
        e
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|β|`.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other - self`, when `self` divides `other`.
    pub fn quotient(&self, other: &Exponent) -> Option<Exponent> {
        if !self.divides(other) {
            return None;
        }
        Some(Exponent(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// `Some(i)` when this is a pure power `x_i^k` with `k ≥ 1`.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let mut support = self.support();
        let first = support.next()?;
        support.next().is_none().then_some(first)
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl Add for &Exponent {
    type Output = Exponent;

    fn add(self, rhs: &Exponent) -> Exponent {
        debug_assert_eq!(self.arity(), rhs.arity());
        Exponent(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent::new(v)
    }
}

/// Weighted degree-then-lexicographic well-order on exponents.
///
/// Exponents are compared through the key `(L(β), β_1, …, β_m)` with
/// `L(β) = Σ λ_i β_i`; the initial exponent of a series is the minimum of its
/// support under this key. With all weights equal to one `L` is the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderSpec {
    weights: Vec<u32>,
}

impl OrderSpec {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::InvalidOrder("weights must be positive".into()));
        }
        Ok(OrderSpec { weights })
    }

    pub fn standard(arity: usize) -> Self {
        OrderSpec {
            weights: vec![1; arity],
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Weighted length `L(β)`.
    pub fn weighted_length(&self, e: &Exponent) -> u64 {
        self.weights
            .iter()
            .zip(e.entries())
            .map(|(&w, &b)| u64::from(w) * u64::from(b))
            .sum()
    }

    /// Compares two exponents, rejecting arity mismatches.
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        for e in [a, b] {
            if e.arity() != self.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.arity(),
                    found: e.arity(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; arities are assumed equal.
    #[inline]
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.weighted_length(a)
            .cmp(&self.weighted_length(b))
            .then_with(|| a.entries().cmp(b.entries()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn std2() -> OrderSpec {
        OrderSpec::standard(2)
    }

    #[test]
    fn shorter_exponent_comes_first() {
        let ord = std2();
        assert_eq!(
            ord.compare(&[3, 1].into(), &[1, 4].into()).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn zero_is_minimum_and_reflexive() {
        let ord = std2();
        assert_eq!(ord.cmp(&[0, 0].into(), &[0, 1].into()), Ordering::Less);
        assert_eq!(ord.cmp(&[1, 2].into(), &[1, 2].into()), Ordering::Equal);
    }

    #[test]
    fn equal_length_ties_break_on_first_entry() {
        // key (1,0,1) < (1,1,0): y precedes x
        let ord = std2();
        assert_eq!(ord.cmp(&[0, 1].into(), &[1, 0].into()), Ordering::Less);
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let ord = std2();
        assert!(matches!(
            ord.compare(&[1].into(), &[1, 0].into()),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn zero_weight_is_rejected() {
        assert!(OrderSpec::new(vec![1, 0]).is_err());
    }

    #[test]
    fn weights_change_the_order() {
        let ord = OrderSpec::new(vec![1, 3]).unwrap();
        // L(0,1) = 3 > L(2,0) = 2
        assert_eq!(ord.cmp(&[2, 0].into(), &[0, 1].into()), Ordering::Less);
    }

    fn exp3() -> impl Strategy<Value = Exponent> {
        prop::collection::vec(0u32..6, 3).prop_map(Exponent::from)
    }

    fn weights3() -> impl Strategy<Value = OrderSpec> {
        prop::collection::vec(1u32..4, 3).prop_map(|w| OrderSpec::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn total_order_axioms(a in exp3(), b in exp3(), c in exp3(), ord in weights3()) {
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn compatible_with_addition(a in exp3(), b in exp3(), c in exp3(), ord in weights3()) {
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&(&a + &c), &(&b + &c)));
        }

        #[test]
        fn zero_is_minimum(a in exp3(), ord in weights3()) {
            prop_assert_ne!(ord.cmp(&Exponent::zero(3), &a), Ordering::Greater);
        }
    }
}
