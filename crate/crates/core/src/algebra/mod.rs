//! Exact sparse polynomial arithmetic over ℚ and the surrounding plumbing:
//! exponents and monomial orders, rings, germs with unit denominators,
//! linear coordinate changes, determinants and the text grammar.

mod coord;
mod det;
mod exponent;
mod germ;
pub mod parse;
mod poly;
mod ring;

pub use coord::CoordChange;
pub use det::determinant;
pub use exponent::{Exponent, OrderSpec};
pub use germ::{unit_inverse_jet, Germ};
pub use poly::{q, q_frac, Poly, Term, Q};
pub use ring::{Ring, RingSpec};

pub(crate) use poly::same_ring;
