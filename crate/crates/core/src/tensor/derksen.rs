use rayon::prelude::*;

use super::tensor3::{Decomposition, Rank1Term, Tensor3};
use super::vector::SparseVector;
use crate::algebra::{DenseMatrix, Scalar};
use crate::error::{Error, Result};
use crate::sigma::IncompleteMatrix;

/// The tensor T(𝓑): slice 0 is 𝓑 with its stars replaced by 0, slice t
/// is the matrix unit at the t-th star (row-major order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerksenInstance {
    pub tensor: Tensor3,
    pub tau: usize,
    pub stars: Vec<(usize, usize)>,
    pub source: IncompleteMatrix,
    /// τ + 3, the rank reached when 𝓑 has a rank-3 completion.
    pub target_rank: usize,
}

/// Builds T(𝓑). Fails when a side of 𝓑 exceeds `guard`.
pub fn build_derksen(b: &IncompleteMatrix, guard: usize) -> Result<DerksenInstance> {
    let side = b.rows().max(b.cols());
    if side > guard {
        return Err(Error::Guard { size: side, bound: guard });
    }
    let stars = b.stars().to_vec();
    let tau = stars.len();
    let ring = b.ring();
    let payload = b
        .entries()
        .iter()
        .enumerate()
        .filter_map(|(k, e)| e.as_ref().map(|v| ([k / b.cols(), k % b.cols(), 0], v.clone())));
    let units = stars
        .iter()
        .enumerate()
        .map(|(t, &(i, j))| ([i, j, t + 1], Scalar::one(ring)));
    let tensor = Tensor3::from_entries(ring, [b.rows(), b.cols(), tau + 1], payload.chain(units))?;
    // the gadget slices are distinct matrix units, hence rank one and
    // linearly independent
    debug_assert!(stars.windows(2).all(|w| w[0] < w[1]));
    Ok(DerksenInstance {
        tensor,
        tau,
        stars,
        source: b.clone(),
        target_rank: tau + 3,
    })
}

/// The τ + 3 term decomposition of T(𝓑) obtained from a completion
/// `pᵀ l` of 𝓑.
///
/// Three terms `p_m ⊗ l_m ⊗ e₀` produce the completion in slice 0; each
/// star t then contributes `e_i ⊗ e_j ⊗ (e_t − W(i, j) e₀)`, which clears
/// the completed value and writes the matrix unit.
pub fn derksen_witness(
    inst: &DerksenInstance,
    completion: &DenseMatrix,
    p: &DenseMatrix,
    l: &DenseMatrix,
) -> Result<Decomposition> {
    let b = &inst.source;
    let (rows, cols) = (b.rows(), b.cols());
    if p.rows() != l.rows() || p.cols() != rows || l.cols() != cols {
        return Err(Error::Dimension(format!(
            "factors {}x{} and {}x{} for a {rows}x{cols} matrix",
            p.rows(),
            p.cols(),
            l.rows(),
            l.cols()
        )));
    }
    if (completion.rows(), completion.cols()) != (rows, cols) {
        return Err(Error::Dimension(format!(
            "completion is {}x{}, expected {rows}x{cols}",
            completion.rows(),
            completion.cols()
        )));
    }
    let ring = completion.ring();
    if p.ring() != ring || l.ring() != ring {
        return Err(Error::RingMismatch(ring, if p.ring() != ring { p.ring() } else { l.ring() }));
    }
    b.check_completion(completion)?;
    let mismatch = (0..rows).into_par_iter().find_map_first(|u| {
        (0..cols).find_map(|v| {
            let found = (0..p.rows()).fold(Scalar::zero(ring), |acc, k| &acc + &(p.get(k, u) * l.get(k, v)));
            (&found != completion.get(u, v)).then(|| Error::CompletionMismatch {
                row: u,
                col: v,
                expected: completion.get(u, v).to_string(),
                found: found.to_string(),
            })
        })
    });
    if let Some(e) = mismatch {
        return Err(e);
    }
    let k = inst.tau + 1;
    let e0 = SparseVector::unit(ring, k, 0);
    let mut terms = (0..p.rows())
        .map(|m| {
            Rank1Term::new(
                SparseVector::from_dense(ring, p.row(m).to_vec())?,
                SparseVector::from_dense(ring, l.row(m).to_vec())?,
                e0.clone(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    for (t, &(i, j)) in inst.stars.iter().enumerate() {
        let c = SparseVector::from_entries(
            ring,
            k,
            vec![(0, -completion.get(i, j)), (t + 1, Scalar::one(ring))],
        )?;
        terms.push(Rank1Term::new(
            SparseVector::unit(ring, rows, i),
            SparseVector::unit(ring, cols, j),
            c,
        )?);
    }
    Decomposition::new(terms)
}
