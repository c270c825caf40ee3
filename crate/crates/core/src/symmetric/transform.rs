use std::collections::BTreeMap;

use super::sym_tensor::{SymDecomposition, SymTensor, SymTerm};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::tensor::SparseVector;

fn inverse_permutation(rho: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; rho.len()];
    for (i, &r) in rho.iter().enumerate() {
        if r >= rho.len() || inv[r] != usize::MAX {
            return Err(Error::Structure(format!("{rho:?} is not a permutation")));
        }
        inv[r] = i;
    }
    Ok(inv)
}

fn check_factors(t_ring: crate::algebra::Ring, f: &[Scalar], dim: usize) -> Result<()> {
    if f.len() != dim {
        return Err(Error::Dimension(format!("{} factors for {dim} indices", f.len())));
    }
    if let Some(x) = f.iter().find(|x| x.ring() != t_ring) {
        return Err(Error::RingMismatch(t_ring, x.ring()));
    }
    if f.iter().any(Scalar::is_zero) {
        return Err(Error::Structure("zero factor in a monomial transformation".into()));
    }
    Ok(())
}

/// The tensor with entries `f_i f_j f_k T(ρ(i)|ρ(j)|ρ(k))`; index i takes
/// the name of ρ(i).
pub fn monomial_transform(t: &SymTensor, rho: &[usize], f: &[Scalar]) -> Result<SymTensor> {
    if rho.len() != t.dim() {
        return Err(Error::Dimension(format!(
            "permutation of {} for {} indices",
            rho.len(),
            t.dim()
        )));
    }
    check_factors(t.ring(), f, t.dim())?;
    let inv = inverse_permutation(rho)?;
    let names = rho.iter().map(|&r| t.names()[r].clone()).collect();
    let entries = t.nonzeros().map(|(idx, v)| {
        let out = idx.map(|a| inv[a]);
        let c = &(&f[out[0]] * &f[out[1]]) * &f[out[2]];
        (out, &c * v)
    });
    SymTensor::from_entries(t.ring(), names, entries)
}

/// Carries a decomposition of `t` to one of `monomial_transform(t, ρ, f)`:
/// `v'_i = f_i v_{ρ(i)}`.
pub fn map_decomposition(d: &SymDecomposition, rho: &[usize], f: &[Scalar]) -> Result<SymDecomposition> {
    let inv = inverse_permutation(rho)?;
    let terms = d
        .terms
        .iter()
        .map(|t| {
            if t.len() != rho.len() {
                return Err(Error::Dimension(format!(
                    "term of length {} for a permutation of {}",
                    t.len(),
                    rho.len()
                )));
            }
            check_factors(t.ring(), f, rho.len())?;
            let entries = t
                .v
                .nonzeros()
                .iter()
                .map(|(a, x)| (inv[*a], &f[inv[*a]] * x))
                .collect();
            SymTerm::new(t.s.clone(), SparseVector::from_entries(t.ring(), rho.len(), entries)?)
        })
        .collect::<Result<Vec<_>>>()?;
    SymDecomposition::new(terms)
}

pub fn scale(t: &SymTensor, s: &Scalar) -> Result<SymTensor> {
    if s.is_zero() {
        return Err(Error::Structure("scaling by zero".into()));
    }
    let entries = t
        .nonzeros()
        .map(|(idx, v)| Ok((*idx, s.checked_mul(v)?)))
        .collect::<Result<Vec<_>>>()?;
    SymTensor::from_entries(t.ring(), t.names().to_vec(), entries)
}

pub fn scale_decomposition(d: &SymDecomposition, s: &Scalar) -> Result<SymDecomposition> {
    let terms = d
        .terms
        .iter()
        .map(|t| SymTerm::new(s.checked_mul(&t.s)?, t.v.clone()))
        .collect::<Result<Vec<_>>>()?;
    SymDecomposition::new(terms)
}

/// The entries of the slice at `x`, keyed by the sorted remaining pair.
fn slice_of(t: &SymTensor, x: usize) -> BTreeMap<(usize, usize), Scalar> {
    let mut out = BTreeMap::new();
    for (&[a, b, c], v) in t.nonzeros() {
        for (y, z, w) in [(a, b, c), (b, a, c), (c, a, b)] {
            if y == x {
                out.insert((z, w), v.clone());
            }
        }
    }
    out
}

/// Removes index `twin` after checking that its slices equal those at `i`.
pub fn remove_twin(t: &SymTensor, twin: usize, i: usize) -> Result<SymTensor> {
    if twin >= t.dim() || i >= t.dim() || twin == i {
        return Err(Error::Dimension(format!("twins {twin}, {i} among {} indices", t.dim())));
    }
    if slice_of(t, twin) != slice_of(t, i) {
        return Err(Error::NotTwin { twin, index: i });
    }
    let shift = |a: usize| if a > twin { a - 1 } else { a };
    let mut names = t.names().to_vec();
    names.remove(twin);
    let entries = t
        .nonzeros()
        .filter(|(idx, _)| !idx.contains(&twin))
        .map(|(idx, v)| (idx.map(shift), v.clone()));
    SymTensor::from_entries(t.ring(), names, entries)
}

/// Drops coordinate `twin` from every term.
pub fn remove_twin_decomposition(d: &SymDecomposition, twin: usize) -> Result<SymDecomposition> {
    let terms = d
        .terms
        .iter()
        .map(|t| {
            if twin >= t.len() {
                return Err(Error::Dimension(format!("index {twin} in a term of length {}", t.len())));
            }
            let entries = t
                .v
                .nonzeros()
                .iter()
                .filter(|(a, _)| *a != twin)
                .map(|(a, x)| (if *a > twin { a - 1 } else { *a }, x.clone()))
                .collect();
            SymTerm::new(t.s.clone(), SparseVector::from_entries(t.ring(), t.len() - 1, entries)?)
        })
        .collect::<Result<Vec<_>>>()?;
    SymDecomposition::new(terms)
}

/// Appends a copy of index `i` named `name`, so that the new index and `i`
/// are twins.
pub fn duplicate_index(t: &SymTensor, i: usize, name: &str) -> Result<SymTensor> {
    if i >= t.dim() {
        return Err(Error::Dimension(format!("index {i} among {} indices", t.dim())));
    }
    let new = t.dim();
    let mut names = t.names().to_vec();
    names.push(name.to_string());
    let mut entries = Vec::new();
    for (idx, v) in t.nonzeros() {
        // every way of renaming some occurrences of i to the new index
        let choices = idx.map(|a| if a == i { vec![a, new] } else { vec![a] });
        for &x in &choices[0] {
            for &y in &choices[1] {
                for &z in &choices[2] {
                    entries.push(([x, y, z], v.clone()));
                }
            }
        }
    }
    SymTensor::from_entries(t.ring(), names, entries)
}
