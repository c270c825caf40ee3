use rayon::prelude::*;

use super::search::all_vectors;
use super::{field_modulus, tensor_rank_bruteforce, OracleResult, SearchBudget};
use crate::algebra::{DenseMatrix, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Assignment, PolySystem};
use crate::sigma::IncompleteMatrix;
use crate::symmetric::{Layout, SymTensor};
use crate::tensor::{slice_reduce, Axis, Tensor3};

fn points(p: u64, len: usize, budget: &SearchBudget, what: &str) -> Result<Vec<Vec<u32>>> {
    let count = (p as u128).saturating_pow(len as u32);
    if count > budget.max_candidates as u128 {
        return Err(Error::Budget(format!(
            "{count} {what} exceed max_candidates = {}",
            budget.max_candidates
        )));
    }
    Ok(all_vectors(p, len))
}

fn scalars(ring: crate::algebra::Ring, v: &[u32]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(ring, x as i64)).collect()
}

fn exact_rank(t: &Tensor3, budget: &SearchBudget) -> Result<usize> {
    let res = tensor_rank_bruteforce(t, budget)?;
    match (res.exhausted, res.value) {
        (true, Some(v)) => Ok(v),
        _ => Err(Error::Budget(format!(
            "tensor rank search stopped at lower bound {}",
            res.lower_bound
        ))),
    }
}

/// All solutions over GF(p), in lexicographic order of the values.
pub fn solve_system_bruteforce(f: &PolySystem, budget: &SearchBudget) -> Result<Vec<Assignment>> {
    let ring = f.ring();
    let p = field_modulus(ring)?;
    let pts = points(p, f.num_vars(), budget, "points")?;
    pts.par_iter()
        .map(|v| {
            let x = scalars(ring, v);
            for poly in f.polynomials() {
                if !poly.evaluate(&x)?.is_zero() {
                    return Ok(None);
                }
            }
            Assignment::new(x).map(Some)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// Minimum rank over all completions, with the lexicographically first
/// optimal completion (stars in row-major order).
pub fn min_completion_rank(m: &IncompleteMatrix, budget: &SearchBudget) -> Result<OracleResult<DenseMatrix>> {
    let ring = m.ring();
    let p = field_modulus(ring)?;
    let pts = points(p, m.tau(), budget, "completions")?;
    let (rank, idx) = pts
        .par_iter()
        .enumerate()
        .map(|(i, v)| Ok((m.complete(&scalars(ring, v))?.rank(), i)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("at least one completion");
    Ok(OracleResult {
        value: Some(rank),
        lower_bound: rank,
        witness: Some(m.complete(&scalars(ring, &pts[idx]))?),
        exhausted: true,
    })
}

/// Both sides of the slice reduction identity
/// `rank T = τ′ + min_Λ rank(slice_reduce(T, k, Λ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceLemmaReport {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// Brute-forces both sides of the slice reduction identity. The 3-slices
/// after the first `k` must be rank one and linearly independent.
pub fn slice_lemma_check(t: &Tensor3, k: usize, budget: &SearchBudget) -> Result<SliceLemmaReport> {
    let ring = t.ring();
    let p = field_modulus(ring)?;
    let nk = t.dims()[2];
    if k == 0 || k >= nk {
        return Err(Error::Dimension(format!("{k} payload slices out of {nk}")));
    }
    let gadget = nk - k;
    let mut flat = Vec::with_capacity(gadget);
    for g in k..nk {
        let s = t.slice(Axis::Third, g)?;
        if s.rank() != 1 {
            return Err(Error::Hypothesis(format!("slice {g} has rank {}, not 1", s.rank())));
        }
        flat.push(s.entries().to_vec());
    }
    if DenseMatrix::from_rows(ring, flat)?.rank() != gadget {
        return Err(Error::Hypothesis("the rank-one slices are linearly dependent".into()));
    }
    let lhs = exact_rank(t, budget)?;
    let lambdas = points(p, k * gadget, budget, "coefficient matrices")?;
    let min = lambdas
        .par_iter()
        .map(|v| {
            let lambda = DenseMatrix::new(ring, k, gadget, scalars(ring, v))?;
            exact_rank(&slice_reduce(t, k, &lambda)?, budget)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("at least one coefficient matrix");
    let rhs = gadget + min;
    Ok(SliceLemmaReport {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// A certified lower bound on the rank (hence the symmetric rank) of a
/// padded tensor `𝒯(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedBound {
    pub pair_slices: usize,
    pub block_rank: usize,
    pub bound: usize,
}

/// Lower bound `3·|pairs| + rank of the (I|J|K) block` for a tensor on 𝓗.
///
/// The pair slices are checked to be rank one, linearly independent and
/// supported on H × H, and no entry may involve two pair indices. Then
/// removing the pair slices along each axis by slice reduction costs
/// exactly one per slice and never touches the (I|J|K) block, whose rank is
/// computed exhaustively.
pub fn padded_rank_lower_bound(t: &SymTensor, n: usize, budget: &SearchBudget) -> Result<PaddedBound> {
    let layout = Layout::new(n)?;
    if t.dim() != layout.len() {
        return Err(Error::Dimension(format!(
            "tensor on {} indices, expected {}",
            t.dim(),
            layout.len()
        )));
    }
    let ring = t.ring();
    let h = layout.h_len();
    let pairs = layout.pairs();
    let mut slices = vec![vec![Scalar::zero(ring); h * h]; pairs.len()];
    for (&[a, b, c], v) in t.nonzeros() {
        let in_pairs = [a, b, c].iter().filter(|&&x| x >= h).count();
        match in_pairs {
            0 => {}
            1 => {
                // sorted, so the pair index is last
                let s = &mut slices[c - h];
                s[a * h + b] = v.clone();
                s[b * h + a] = v.clone();
            }
            _ => {
                return Err(Error::Structure(format!(
                    "entry ({}, {}, {}) involves two pair indices",
                    t.names()[a],
                    t.names()[b],
                    t.names()[c]
                )))
            }
        }
    }
    for (pi, s) in pairs.iter().zip(&slices) {
        let m = DenseMatrix::new(ring, h, h, s.clone())?;
        if m.rank() != 1 {
            return Err(Error::Hypothesis(format!("slice at {pi} has rank {}", m.rank())));
        }
    }
    if DenseMatrix::from_rows(ring, slices)?.rank() != pairs.len() {
        return Err(Error::Hypothesis("pair slices are linearly dependent".into()));
    }
    let block = Tensor3::from_fn(ring, [n, n, n], |i, j, k| t.get(i, n + j, 2 * n + k))?;
    let block_rank = exact_rank(&block, budget)?;
    Ok(PaddedBound {
        pair_slices: pairs.len(),
        block_rank,
        bound: 3 * pairs.len() + block_rank,
    })
}
