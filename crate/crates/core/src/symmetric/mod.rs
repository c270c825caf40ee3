//! Symmetric tensors and the reduction from tensor rank to symmetric rank.
//!
//! A tensor `T` on `I × J × K` (|I| = |J| = |K| = n) is first embedded as
//! the symmetric tensor `S(T)` on `H = I ∪ J ∪ K`, then padded with one
//! unit slice per pair index to give `𝒯(S(T))` on
//! `𝓗 = H ∪ I² ∪ J² ∪ K²`. A decomposition of `T` with r terms yields a
//! symmetric decomposition of `𝒯(S(T))` with at most `r + 4.5(n² + n)`
//! terms.

mod layout;
mod sym_tensor;
mod transform;
mod waring;
mod witness;

pub use layout::{build_curly_t, embed_s, pq_unit, Layout, Letter, PairIndex};
pub use sym_tensor::{verify_sym_decomposition, SymDecomposition, SymTensor, SymTerm};
pub use transform::{
    duplicate_index, map_decomposition, monomial_transform, remove_twin, remove_twin_decomposition,
    scale, scale_decomposition,
};
pub use waring::{gadget_tensor, sym_pair_decompose, waring_gadget};
pub use witness::{
    build_l_pi, check_zero_block, pad_cubical, pad_decomposition, symmetric_upper_witness, symmetric_witness,
};

use crate::algebra::Ring;
use crate::error::{Error, Result};

/// The gadget decompositions need a field with at least 9 elements.
pub(crate) fn require_large_field(ring: Ring) -> Result<()> {
    match ring {
        Ring::Integers => Err(Error::NoDivision(ring)),
        Ring::PrimeField(p) if p.get() < 9 => Err(Error::SmallField(ring)),
        _ => Ok(()),
    }
}
