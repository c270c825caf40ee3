//! The rank-3 completion gadget: the closure set σ(F), the label set 𝓗,
//! the incomplete matrix 𝓑(F), completions 𝓦(ξ) = 𝓤(ξ)ᵀ𝓤(ξ) built from
//! solutions, and recovery of solutions from rank-3 factorizations.

mod gadget;
mod incomplete;
mod set;

pub use gadget::{CompletionGadget, CompletionWitness, Label, DEFAULT_GUARD};
pub use incomplete::IncompleteMatrix;
pub use set::{sigma_monomial, SigmaSet};
