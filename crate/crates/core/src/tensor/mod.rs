//! Order-3 tensors, rank-one terms, exact decomposition checks, the
//! tensor T(𝓑) of an incomplete matrix with its rank witness, and the
//! slice-reduction operator.

mod derksen;
mod tensor3;
mod vector;

pub use derksen::{build_derksen, derksen_witness, DerksenInstance};
pub use tensor3::{
    slice_reduce, verify_decomposition, Axis, Decomposition, Mismatch, Rank1Term, Tensor3,
};
pub use vector::SparseVector;
