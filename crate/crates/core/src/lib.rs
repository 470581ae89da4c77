//! Exact computations in local rings `K{x}` presented by polynomial
//! generators: diagrams of initial exponents, local standard bases, and
//! finite-determinacy verdicts for regular sequences and flat map germs.
//!
//! Elements of `K{x}` are represented by polynomials over ℚ. A series with an
//! infinite tail is entered as a [`Germ`] `g/u` with `u` a unit; the ideal it
//! generates is that of its unit-cleared representative `g`.

pub mod algebra;
pub mod determinacy;
pub mod diagram;
mod error;
pub mod jet_oracle;
pub mod par;
pub mod random;
pub mod standard_basis;

pub use algebra::{
    determinant, q, CoordChange, Exponent, Germ, OrderSpec, Poly, Ring, RingSpec, Term, Q,
};
pub use diagram::{Diagram, DiagramSlice};
pub use error::{Error, Result};
pub use standard_basis::{diagram_of_ideal, standard_basis, SBasis, SbOptions};
