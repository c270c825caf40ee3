//! Exact, witness-producing reductions between polynomial systems, rank-3
//! matrix completion, order-3 tensor rank and symmetric tensor rank.
//!
//! The chain is
//!
//! ```text
//! 3-SAT ──► polynomial system F ──► incomplete matrix B(F) ──► tensor T(B) ──► symmetric tensor 𝒯(S(T))
//! ```
//!
//! Every forward step comes with a constructive witness map (solutions to
//! completions, completions to tensor decompositions, tensor decompositions
//! to symmetric decompositions) that is checked by exact re-summation, and
//! the [`oracle`] module brute-forces the quantities involved on instances
//! small enough to enumerate.

pub mod algebra;
pub mod error;
pub mod format;
pub mod oracle;
pub mod poly;
pub mod sigma;
pub mod symmetric;
pub mod tensor;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/completion.md")]
    mod completion {}
    #[doc = include_str!("../../../book/src/tensor.md")]
    mod tensor {}
    #[doc = include_str!("../../../book/src/symmetric.md")]
    mod symmetric {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
