use std::fmt;

use num_traits::One;

use super::poly::{same_ring, Poly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// A convergent series given as `numerator / unit`.
///
/// Series with infinite tails, such as `x*y^4 + x*y^5 + …`, enter the engine
/// through a unit-cleared polynomial representative: the numerator generates
/// the same ideal in the local ring, while jets are taken of the actual
/// series by inverting the unit up to the requested order.
#[derive(Clone, PartialEq, Eq)]
pub struct Germ {
    numerator: Poly,
    unit: Poly,
}

impl Germ {
    pub fn new(numerator: Poly, unit: Poly) -> Result<Self> {
        if !same_ring(numerator.ring(), unit.ring()) {
            return Err(Error::RingMismatch);
        }
        if !unit.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(Germ { numerator, unit })
    }

    pub fn ring(&self) -> &Ring {
        self.numerator.ring()
    }

    /// The unit-cleared representative; it generates the same ideal.
    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    pub fn is_polynomial(&self) -> bool {
        self.unit.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `mu`-jet of the series `numerator / unit`.
    pub fn jet(&self, mu: u32) -> Poly {
        if self.is_polynomial() {
            let c = self.unit.initial_coefficient().expect("unit").recip();
            return self.numerator.jet(mu).scalar_mul(&c);
        }
        (&self.numerator.jet(mu) * &unit_inverse_jet(&self.unit, mu)).jet(mu)
    }

    /// The series `self + r`, i.e. `(numerator + unit·r) / unit`.
    pub fn add_poly(&self, r: &Poly) -> Germ {
        Germ {
            numerator: &self.numerator + &(&self.unit * r),
            unit: self.unit.clone(),
        }
    }
}

/// `mu`-jet of `1/u` for a unit `u`.
pub fn unit_inverse_jet(u: &Poly, mu: u32) -> Poly {
    let c = u.initial_coefficient().expect("unit").clone();
    assert!(u.is_unit(), "not a unit");
    // u = c·(1 - w) with w in the maximal ideal
    let w = &Poly::one(u.ring()) - &u.scalar_mul(&c.recip());
    let mut sum = Poly::one(u.ring());
    let mut power = Poly::one(u.ring());
    for _ in 0..mu {
        power = (&power * &w).jet(mu);
        if power.is_zero() {
            break;
        }
        sum = &sum + &power;
    }
    sum.scalar_mul(&c.recip())
}

impl From<Poly> for Germ {
    fn from(numerator: Poly) -> Self {
        let unit = Poly::one(numerator.ring());
        Germ { numerator, unit }
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_constant() && self.unit.initial_coefficient().is_ok_and(|c| c.is_one()) {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.unit)
        }
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_germ, parse_poly};
    use crate::algebra::ring::RingSpec;

    #[test]
    fn geometric_tail_jets() {
        let r = RingSpec::new(["x", "y"]).unwrap();
        let f1 = parse_germ(&r, "(x^3*y + x*y^4 - x^3*y^2) / (1 - y)").unwrap();
        assert_eq!(f1.jet(5), parse_poly(&r, "x^3*y + x*y^4").unwrap());
        assert_eq!(
            f1.jet(7),
            parse_poly(&r, "x^3*y + x*y^4 + x*y^5 + x*y^6").unwrap()
        );
        let f2 = parse_germ(&r, "(x^2*y^3 + y^6 - x^2*y^4) / (1 - y)").unwrap();
        assert_eq!(f2.jet(5), parse_poly(&r, "x^2*y^3").unwrap());
        assert_eq!(f2.jet(7), parse_poly(&r, "x^2*y^3 + y^6 + y^7").unwrap());
    }

    #[test]
    fn inverse_of_unit() {
        let r = RingSpec::new(["x"]).unwrap();
        let u = parse_poly(&r, "2 + x").unwrap();
        let inv = unit_inverse_jet(&u, 6);
        assert_eq!((&u * &inv).jet(6), Poly::one(&r));
    }

    #[test]
    fn non_unit_denominator_is_rejected() {
        let r = RingSpec::new(["x"]).unwrap();
        let x = Poly::var(&r, 0);
        assert_eq!(Germ::new(x.clone(), x), Err(Error::NotAUnit));
    }
}
