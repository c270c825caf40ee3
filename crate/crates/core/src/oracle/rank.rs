use super::search::{nonzero_vectors, projective_vectors, subset_search, Outcome};
use super::{field_modulus, OracleResult, SearchBudget};
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::symmetric::{verify_sym_decomposition, SymDecomposition, SymTensor, SymTerm};
use crate::tensor::{verify_decomposition, Axis, Decomposition, Rank1Term, SparseVector, Tensor3};

fn residue(s: &Scalar) -> u32 {
    s.residue().expect("prime field scalar") as u32
}

fn sparse(ring: Ring, v: &[u32]) -> SparseVector {
    SparseVector::from_dense(ring, v.iter().map(|&x| Scalar::from_i64(ring, x as i64)).collect())
        .expect("uniform ring")
}

/// Number of nonzero vectors of GF(p)^d up to scaling, saturating.
fn projective_count(p: u64, d: usize) -> u128 {
    let total = (p as u128).saturating_pow(d as u32);
    (total - 1) / (p as u128 - 1)
}

/// Σ over 3-slices of their matrix ranks: always a valid decomposition.
fn slice_decomposition(t: &Tensor3) -> Result<Decomposition> {
    let ring = t.ring();
    let [_, _, nk] = t.dims();
    let mut terms = Vec::new();
    for k in 0..nk {
        for (col, row) in t.slice(Axis::Third, k)?.rank_factorization()? {
            terms.push(Rank1Term::new(
                SparseVector::from_dense(ring, col)?,
                SparseVector::from_dense(ring, row)?,
                SparseVector::unit(ring, nk, k),
            )?);
        }
    }
    Decomposition::new(terms)
}

/// Exact tensor rank over GF(p) by enumerating sums of distinct rank-one
/// tensors `a ⊗ b ⊗ c` with a, b normalised (first nonzero coordinate 1)
/// and c any nonzero vector. The witness is the lexicographically least
/// optimal set of candidates.
pub fn tensor_rank_bruteforce(t: &Tensor3, budget: &SearchBudget) -> Result<OracleResult<Decomposition>> {
    let ring = t.ring();
    let p = field_modulus(ring)?;
    let [ni, nj, nk] = t.dims();
    let count = projective_count(p, ni)
        .saturating_mul(projective_count(p, nj))
        .saturating_mul((p as u128).saturating_pow(nk as u32) - 1);
    if t.is_zero() {
        return Ok(OracleResult {
            value: Some(0),
            lower_bound: 0,
            witness: Some(Decomposition::default()),
            exhausted: true,
        });
    }
    let fallback = |lower_bound: usize| -> Result<OracleResult<Decomposition>> {
        let d = slice_decomposition(t)?;
        Ok(OracleResult {
            value: Some(d.len()),
            lower_bound: lower_bound.min(d.len()),
            witness: Some(d),
            exhausted: false,
        })
    };
    if count > budget.max_candidates as u128 {
        return fallback(1);
    }
    let (a_set, b_set, c_set) = (projective_vectors(p, ni), projective_vectors(p, nj), nonzero_vectors(p, nk));
    let mut triples = Vec::with_capacity(count as usize);
    let mut tensors = Vec::with_capacity(count as usize);
    for a in &a_set {
        for b in &b_set {
            for c in &c_set {
                let mut flat = Vec::with_capacity(ni * nj * nk);
                for x in a {
                    for y in b {
                        for z in c {
                            flat.push(((*x as u64 * *y as u64 % p) * *z as u64 % p) as u32);
                        }
                    }
                }
                tensors.push(flat);
                triples.push((a, b, c));
            }
        }
    }
    let mut target = vec![0u32; ni * nj * nk];
    for (&[i, j, k], v) in t.nonzeros() {
        target[(i * nj + j) * nk + k] = residue(v);
    }
    match subset_search(p, &target, &tensors, budget.max_rank, budget.max_combinations) {
        Outcome::Found(chosen) => {
            let terms = chosen
                .iter()
                .map(|&i| {
                    let (a, b, c) = triples[i];
                    Rank1Term::new(sparse(ring, a), sparse(ring, b), sparse(ring, c))
                })
                .collect::<Result<Vec<_>>>()?;
            let d = Decomposition::new(terms)?;
            if verify_decomposition(t, &d)?.is_some() {
                return Err(Error::Verification("rank search returned a wrong witness".into()));
            }
            Ok(OracleResult {
                value: Some(d.len()),
                lower_bound: d.len(),
                witness: Some(d),
                exhausted: true,
            })
        }
        Outcome::NotWithin => fallback(budget.max_rank + 1),
        Outcome::OutOfBudget { lower_bound } => fallback(lower_bound),
    }
}

/// Exact symmetric rank over GF(p) by enumerating sums of distinct terms
/// `s · v⊗v⊗v`, v normalised and s ≠ 0 (p^d − 1 candidates).
pub fn symmetric_rank_bruteforce(t: &SymTensor, budget: &SearchBudget) -> Result<OracleResult<SymDecomposition>> {
    let ring = t.ring();
    let p = field_modulus(ring)?;
    let d = t.dim();
    if t.is_zero() {
        return Ok(OracleResult {
            value: Some(0),
            lower_bound: 0,
            witness: Some(SymDecomposition::default()),
            exhausted: true,
        });
    }
    let count = (p as u128).saturating_pow(d as u32) - 1;
    let out_of_budget = |lower_bound: usize| OracleResult {
        value: None,
        lower_bound,
        witness: None,
        exhausted: false,
    };
    if count > budget.max_candidates as u128 {
        return Ok(out_of_budget(1));
    }
    let positions: Vec<[usize; 3]> = (0..d)
        .flat_map(|i| (i..d).flat_map(move |j| (j..d).map(move |k| [i, j, k])))
        .collect();
    let mut terms = Vec::with_capacity(count as usize);
    let mut cubes = Vec::with_capacity(count as usize);
    for v in projective_vectors(p, d) {
        for s in 1..p {
            let cube = positions
                .iter()
                .map(|&[i, j, k]| {
                    (s * v[i] as u64 % p * v[j] as u64 % p * v[k] as u64 % p) as u32
                })
                .collect();
            cubes.push(cube);
            terms.push((s, v.clone()));
        }
    }
    let target: Vec<u32> = positions.iter().map(|&[i, j, k]| {
        let x = t.get(i, j, k);
        if x.is_zero() { 0 } else { residue(&x) }
    }).collect();
    match subset_search(p, &target, &cubes, budget.max_rank, budget.max_combinations) {
        Outcome::Found(chosen) => {
            let terms = chosen
                .iter()
                .map(|&i| {
                    let (s, v) = &terms[i];
                    SymTerm::new(Scalar::from_i64(ring, *s as i64), sparse(ring, v))
                })
                .collect::<Result<Vec<_>>>()?;
            let w = SymDecomposition::new(terms)?;
            if verify_sym_decomposition(t, &w)?.is_some() {
                return Err(Error::Verification("symmetric rank search returned a wrong witness".into()));
            }
            Ok(OracleResult {
                value: Some(w.len()),
                lower_bound: w.len(),
                witness: Some(w),
                exhausted: true,
            })
        }
        Outcome::NotWithin => Ok(out_of_budget(budget.max_rank + 1)),
        Outcome::OutOfBudget { lower_bound } => Ok(out_of_budget(lower_bound)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::IncompleteMatrix;
    use crate::symmetric::{gadget_tensor, waring_gadget};
    use crate::tensor::build_derksen;

    #[test]
    fn tiny_tensor_ranks() {
        let r = Ring::gf(2).unwrap();
        let b = SearchBudget::default();
        let zero = Tensor3::zeros(r, [2, 2, 2]).unwrap();
        assert_eq!(tensor_rank_bruteforce(&zero, &b).unwrap().value, Some(0));
        let e = Tensor3::from_entries(r, [2, 2, 2], [([0, 0, 0], Scalar::one(r))]).unwrap();
        assert_eq!(tensor_rank_bruteforce(&e, &b).unwrap().value, Some(1));
        let m = IncompleteMatrix::from_ints(r, &[vec![Some(1), None], vec![Some(0), Some(1)]]).unwrap();
        let inst = build_derksen(&m, 10).unwrap();
        let res = tensor_rank_bruteforce(&inst.tensor, &b).unwrap();
        assert!(res.exhausted);
        assert_eq!(res.value, Some(3));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = Ring::gf(2).unwrap();
        let m = IncompleteMatrix::from_ints(r, &[vec![Some(1), None], vec![Some(0), Some(1)]]).unwrap();
        let inst = build_derksen(&m, 10).unwrap();
        let tight = SearchBudget { max_rank: 2, ..SearchBudget::default() };
        let res = tensor_rank_bruteforce(&inst.tensor, &tight).unwrap();
        assert!(!res.exhausted);
        assert_eq!(res.lower_bound, 3);
        assert!(res.value.unwrap() >= 3);
    }

    #[test]
    fn gadget_has_symmetric_rank_three() {
        let r = Ring::gf(11).unwrap();
        let a = gadget_tensor(&Scalar::zero(r)).unwrap();
        let res = symmetric_rank_bruteforce(&a, &SearchBudget { max_rank: 2, ..SearchBudget::default() }).unwrap();
        assert!(!res.exhausted);
        assert_eq!(res.lower_bound, 3);
        assert_eq!(waring_gadget(&Scalar::zero(r)).unwrap().len(), 3);
        let full = symmetric_rank_bruteforce(&a, &SearchBudget::default()).unwrap();
        assert_eq!((full.value, full.exhausted), (Some(3), true));
    }
}
