//! Sparse multivariate polynomials, systems of them, and the encoding of
//! positive 3-SAT with disequalities as a polynomial system.

mod parse;
mod polynomial;
mod sat;
mod system;

pub use parse::parse_polynomial;
pub use polynomial::{Exponents, Monomial, Polynomial};
pub use sat::{encode_3sat, CnfFormula};
pub use system::{Assignment, PolySystem};
