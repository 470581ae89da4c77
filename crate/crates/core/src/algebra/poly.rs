use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponent::{Exponent, OrderSpec};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: Q,
    pub exponent: Exponent,
}

/// Sparse polynomial over ℚ, kept sorted ascending in the ring's order.
///
/// The first term is the initial term. The empty term list is zero.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<Term>,
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> Self {
        Self::monomial(ring, Exponent::zero(ring.arity()), c)
    }

    pub fn monomial(ring: &Ring, exponent: Exponent, coefficient: Q) -> Self {
        assert_eq!(exponent.arity(), ring.arity(), "exponent arity");
        let terms = if coefficient.is_zero() {
            Vec::new()
        } else {
            vec![Term {
                coefficient,
                exponent,
            }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable `x_index`.
    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Exponent::axis(ring.arity(), index, 1), Q::one())
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Result<Self> {
        let mut acc: HashMap<Exponent, Q> = HashMap::new();
        for (e, c) in terms {
            if e.arity() != ring.arity() {
                return Err(Error::ArityMismatch {
                    expected: ring.arity(),
                    found: e.arity(),
                });
            }
            *acc.entry(e).or_insert_with(Q::zero) += c;
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: HashMap<Exponent, Q>) -> Self {
        let ord = ring.order();
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coefficient)| Term {
                coefficient,
                exponent,
            })
            .collect();
        terms.sort_unstable_by(|a, b| ord.cmp(&a.exponent, &b.exponent));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// Nonzero constant term, i.e. a unit of the local ring.
    pub fn is_unit(&self) -> bool {
        self.terms.first().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn coefficient(&self, e: &Exponent) -> Q {
        self.terms
            .iter()
            .find(|t| &t.exponent == e)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|t| &t.exponent)
    }

    pub fn initial_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn initial_exponent(&self) -> Result<&Exponent> {
        self.initial_term().map(|t| &t.exponent)
    }

    pub fn initial_coefficient(&self) -> Result<&Q> {
        self.initial_term().map(|t| &t.coefficient)
    }

    /// Initial term with respect to an order other than the ring's.
    pub fn initial_term_in(&self, ord: &OrderSpec) -> Result<&Term> {
        if ord == self.ring.order() {
            return self.initial_term();
        }
        if ord.arity() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                found: ord.arity(),
            });
        }
        self.terms
            .iter()
            .min_by(|a, b| ord.cmp(&a.exponent, &b.exponent))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn initial_exponent_in(&self, ord: &OrderSpec) -> Result<&Exponent> {
        self.initial_term_in(ord).map(|t| &t.exponent)
    }

    /// Largest total degree over the support; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exponent.length())
            .max()
            .unwrap_or(0)
    }

    /// Largest weighted length over the support in the ring's order.
    pub fn weighted_degree(&self) -> u64 {
        let ord = self.ring.order();
        self.terms
            .iter()
            .map(|t| ord.weighted_length(&t.exponent))
            .max()
            .unwrap_or(0)
    }

    /// Écart: top total degree minus the length of the initial exponent.
    pub fn ecart(&self) -> Result<u32> {
        let init = self.initial_exponent()?.length();
        Ok(self.total_degree() - init)
    }

    /// Weighted écart, the selection key of the Mora normal form.
    pub(crate) fn weighted_ecart(&self) -> u64 {
        let ord = self.ring.order();
        match self.terms.first() {
            Some(t) => self.weighted_degree() - ord.weighted_length(&t.exponent),
            None => 0,
        }
    }

    /// The `mu`-jet: all terms of total degree `≤ mu`.
    pub fn jet(&self, mu: u32) -> Poly {
        self.filter_terms(|t| t.exponent.length() <= mu)
    }

    /// Terms of weighted length `≤ bound`.
    pub fn weighted_jet(&self, bound: u64) -> Poly {
        let ord = self.ring.order().clone();
        self.filter_terms(|t| ord.weighted_length(&t.exponent) <= bound)
    }

    /// Drops every term of weighted length `≥ k`.
    pub(crate) fn truncate_weighted(&mut self, k: u64) {
        let ord = self.ring.order();
        let cut = self
            .terms
            .partition_point(|t| ord.weighted_length(&t.exponent) < k);
        self.terms.truncate(cut);
    }

    pub(crate) fn retain_terms(&mut self, keep: impl Fn(&Exponent) -> bool) {
        self.terms.retain(|t| keep(&t.exponent));
    }

    fn filter_terms(&self, keep: impl Fn(&Term) -> bool) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scalar_mul(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * c,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by `c·x^shift`. The order is compatible with addition,
    /// so the result stays sorted.
    pub fn mul_term(&self, shift: &Exponent, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * c,
                    exponent: &t.exponent + shift,
                })
                .collect(),
        }
    }

    /// `self - c·x^shift·other`, merged in one pass.
    pub(crate) fn sub_scaled_shift(&self, other: &Poly, shift: &Exponent, c: &Q) -> Poly {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            coefficient: -(&t.coefficient * c),
            exponent: &t.exponent + shift,
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), next_b.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = b.next();
                }
                (Some(ta), Some(tb)) => match ord.cmp(&ta.exponent, &tb.exponent) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        out.push(next_b.take().unwrap());
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let ta = a.next().unwrap();
                        let tb = next_b.take().unwrap();
                        let c = &ta.coefficient + tb.coefficient;
                        if !c.is_zero() {
                            out.push(Term {
                                coefficient: c,
                                exponent: tb.exponent,
                            });
                        }
                        next_b = b.next();
                    }
                },
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn merge(&self, other: &Poly, subtract: bool) -> Poly {
        let zero = Exponent::zero(self.ring.arity());
        let c = if subtract { Q::one() } else { -Q::one() };
        self.sub_scaled_shift(other, &zero, &c)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return other.mul_term(&t.exponent, &t.coefficient);
        }
        let mut acc: HashMap<Exponent, Q> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry(&a.exponent + &b.exponent).or_insert_with(Q::zero) +=
                    &a.coefficient * &b.coefficient;
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Divides by the content so that coefficients are coprime integers and
    /// the initial coefficient is positive. Returns the polynomial and the
    /// factor it was multiplied by.
    pub fn primitive(&self) -> (Poly, Q) {
        if self.is_zero() {
            return (self.clone(), Q::one());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for t in &self.terms {
            num_gcd = num_gcd.gcd(t.coefficient.numer());
            den_lcm = den_lcm.lcm(t.coefficient.denom());
        }
        let mut factor = Q::new(den_lcm, num_gcd);
        if self.terms[0].coefficient.is_negative() {
            factor = -factor;
        }
        (self.scalar_mul(&factor), factor)
    }

    /// Scales so that the initial coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some(t) => self.scalar_mul(&t.coefficient.recip()),
            None => self.clone(),
        }
    }

    /// Re-sorts the same polynomial into another ring with identical variables.
    pub fn reorder(&self, ring: &Ring) -> Result<Poly> {
        if ring.variables() != self.ring.variables() {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let ord = ring.order();
        terms.sort_unstable_by(|a, b| ord.cmp(&a.exponent, &b.exponent));
        Ok(Poly {
            ring: ring.clone(),
            terms,
        })
    }

    /// Maps every exponent through `f` into `ring`, summing collisions.
    pub(crate) fn map_exponents(
        &self,
        ring: &Ring,
        f: impl Fn(&Exponent) -> Option<Exponent>,
    ) -> Poly {
        let mut acc: HashMap<Exponent, Q> = HashMap::new();
        for t in &self.terms {
            if let Some(e) = f(&t.exponent) {
                *acc.entry(e).or_insert_with(Q::zero) += &t.coefficient;
            }
        }
        Self::from_map(ring, acc)
    }

    /// Sets every base variable to zero; the result lives in the fibre ring.
    pub fn evaluate_base_zero(&self) -> Result<Poly> {
        let n = self.ring.base_split().ok_or(Error::NoBaseSplit)?;
        let fibre = self.ring.fibre_ring()?;
        Ok(self.evaluate_base_zero_into(n, &fibre))
    }

    pub(crate) fn evaluate_base_zero_into(&self, n: usize, fibre: &Ring) -> Poly {
        self.map_exponents(fibre, |e| {
            e.entries()[..n]
                .iter()
                .all(|&b| b == 0)
                .then(|| Exponent::new(e.entries()[n..].iter().copied()))
        })
    }

    /// Embeds a polynomial in the fibre variables into `ring`, whose last
    /// variables are the fibre variables.
    pub fn lift_into(&self, ring: &Ring) -> Result<Poly> {
        let n = ring
            .arity()
            .checked_sub(self.ring.arity())
            .ok_or(Error::RingMismatch)?;
        if ring.variables()[n..] != *self.ring.variables() {
            return Err(Error::RingMismatch);
        }
        Ok(self.map_exponents(ring, |e| {
            Some(Exponent::new(
                std::iter::repeat_n(0, n).chain(e.entries().iter().copied()),
            ))
        }))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coefficient.is_negative();
            let abs = t.coefficient.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(self.ring.variables(), &t.exponent);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn format_monomial(vars: &[String], e: &Exponent) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e.entries()) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomials from different rings")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scalar_mul(&-Q::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::ring::RingSpec;

    fn xy() -> Ring {
        RingSpec::new(["x", "y"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn initial_exponents_of_example_generators() {
        let r = xy();
        let f1 = p(&r, "x^3*y + x*y^4");
        let f2 = p(&r, "x^2*y^3 + y^6");
        assert_eq!(f1.initial_exponent().unwrap(), &Exponent::from([3, 1]));
        assert_eq!(f2.initial_exponent().unwrap(), &Exponent::from([2, 3]));
        assert_eq!(
            p(&r, "5").initial_exponent().unwrap(),
            &Exponent::from([0, 0])
        );
        assert_eq!(
            Poly::zero(&r).initial_exponent(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn initial_terms() {
        let r = xy();
        let t = p(&r, "2*x^3*y + x*y^4").initial_term().unwrap().clone();
        assert_eq!(t.coefficient, q(2));
        assert_eq!(t.exponent, Exponent::from([3, 1]));
        let t = p(&r, "-y").initial_term().unwrap().clone();
        assert_eq!(t.coefficient, q(-1));
        // (1,(0,1)) < (1,(1,0)): y is initial in x + y
        let t = p(&r, "x + y").initial_term().unwrap().clone();
        assert_eq!(t.exponent, Exponent::from([0, 1]));
    }

    #[test]
    fn jets() {
        let r = xy();
        let f = p(&r, "x^3*y + x*y^4 + x*y^5 + x*y^6");
        assert_eq!(f.jet(5), p(&r, "x^3*y + x*y^4"));
        assert!(Poly::zero(&r).jet(3).is_zero());
        assert_eq!(p(&r, "3 + x").jet(0), p(&r, "3"));
    }

    #[test]
    fn example_syzygy_and_jet_relation() {
        let r = xy();
        let g1 = p(&r, "x^3*y + x*y^4 - x^3*y^2");
        let g2 = p(&r, "x^2*y^3 + y^6 - x^2*y^4");
        let y2 = p(&r, "y^2");
        let x = p(&r, "x");
        assert!((&y2 * &g1 - &x * &g2).is_zero());
        let f = p(&r, "x^3*y + x*y^4 + x*y^5");
        assert!((&f + &(-&f)).is_zero());
        let j1 = p(&r, "x^3*y + x*y^4");
        let j2 = p(&r, "x^2*y^3");
        assert_eq!(&y2 * &j1 - &x * &j2, p(&r, "x*y^6"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::var(&xy(), 0);
        let b = Poly::var(&RingSpec::new(["u", "v"]).unwrap(), 0);
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn evaluation_at_zero() {
        let r = RingSpec::with_base(["y1", "y2"], ["x"]).unwrap();
        let fibre = r.fibre_ring().unwrap();
        assert_eq!(
            p(&r, "y1 - x^2").evaluate_base_zero().unwrap(),
            p(&fibre, "-x^2")
        );
        assert_eq!(p(&r, "x^3").evaluate_base_zero().unwrap(), p(&fibre, "x^3"));
        assert!(p(&r, "y1*y2").evaluate_base_zero().unwrap().is_zero());
        assert_eq!(p(&xy(), "x").evaluate_base_zero(), Err(Error::NoBaseSplit));
    }

    #[test]
    fn ecart_values() {
        let r = xy();
        assert_eq!(p(&r, "x^3*y + x*y^4").ecart().unwrap(), 1);
        assert_eq!(p(&r, "7*x^2*y").ecart().unwrap(), 0);
        assert_eq!(p(&r, "x + y^3").ecart().unwrap(), 2);
        assert!(Poly::zero(&r).ecart().is_err());
    }

    #[test]
    fn primitive_normalizes_content_and_sign() {
        let r = xy();
        let (f, c) = p(&r, "-2/3*x + 4/9*y^2").primitive();
        assert_eq!(f, p(&r, "3*x - 2*y^2"));
        assert_eq!(c, q_frac(-9, 2));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let r = xy();
        for s in ["x^3*y + x*y^4 - x^3*y^2", "-1/2 + 3*x - y^7", "0", "1"] {
            let f = p(&r, s);
            assert_eq!(p(&r, &f.to_string()), f);
        }
        assert_eq!(
            p(&r, "x^3*y + x*y^4 - x^3*y^2").to_string(),
            "x^3*y + x*y^4 - x^3*y^2"
        );
    }
}
