//! Exact scalars over the integers, the rationals and prime fields, and
//! dense matrices over them.

mod matrix;
mod ring;
mod scalar;

pub use matrix::DenseMatrix;
pub use ring::{Prime, Ring};
pub use scalar::Scalar;
