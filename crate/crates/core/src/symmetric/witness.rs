use std::collections::BTreeMap;

use rayon::prelude::*;

use super::layout::{build_curly_t, embed_s, Layout, PairIndex};
use super::require_large_field;
use super::sym_tensor::{verify_sym_decomposition, SymDecomposition, SymTensor, SymTerm};
use super::waring::sym_pair_decompose;
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::tensor::{verify_decomposition, Decomposition, Rank1Term, SparseVector, Tensor3};

/// Checks that `u` (on H) vanishes on the (I|J|K) block.
pub fn check_zero_block(u: &SymTensor, layout: Layout) -> Result<()> {
    if u.dim() != layout.h_len() {
        return Err(Error::Dimension(format!(
            "tensor on {} indices, expected {}",
            u.dim(),
            layout.h_len()
        )));
    }
    let n = layout.n;
    match u
        .nonzeros()
        .find(|(&[i, j, k], _)| i < n && (n..2 * n).contains(&j) && k >= 2 * n)
    {
        Some((idx, v)) => Err(Error::Hypothesis(format!(
            "entry ({}, {}, {}) = {v} in the (I|J|K) block",
            u.names()[idx[0]],
            u.names()[idx[1]],
            u.names()[idx[2]]
        ))),
        None => Ok(()),
    }
}

fn unit(ring: Ring, len: usize, i: usize) -> SparseVector {
    SparseVector::unit(ring, len, i)
}

/// 𝓛_π for a strict pair π = (α_p, α_q), built entry by entry, together
/// with a decomposition into at most three symmetric cubes.
///
/// For r, s ∈ {p, q}: `𝓛(α_r|α_s|β_t) = U(α_p|α_q|β_t)` when β ≠ α or
/// t > q, `𝓛(α_r|α_s|π) = 1`, extended symmetrically, zero elsewhere. The
/// same tensor is `sym(u ⊗ u ⊗ w)` with `u = e_{α_p} + e_{α_q}` and w
/// collecting the values above, which gives the decomposition.
pub fn build_l_pi(u: &SymTensor, layout: Layout, pi: PairIndex) -> Result<(SymTensor, SymDecomposition)> {
    check_zero_block(u, layout)?;
    if pi.is_diagonal() || pi.q > layout.n {
        return Err(Error::Dimension(format!("{pi} is not a strict pair for n = {}", layout.n)));
    }
    let ring = u.ring();
    let len = layout.len();
    let x = [layout.h_position(pi.letter, pi.p), layout.h_position(pi.letter, pi.q)];
    let at = layout.pair_position(pi);
    let mut l = SymTensor::zeros(ring, layout.names())?;
    let mut w = vec![(at, Scalar::one(ring))];
    for z in 0..layout.h_len() {
        let (beta, t) = layout.h_index(z).expect("z lies in H");
        if beta == pi.letter && t <= pi.q {
            continue;
        }
        let v = u.get(x[0], x[1], z);
        for r in x {
            for s in x {
                l.set([r, s, z], v.clone())?;
            }
        }
        w.push((z, v));
    }
    for r in x {
        for s in x {
            l.set([r, s, at], Scalar::one(ring))?;
        }
    }
    let uvec = SparseVector::from_entries(ring, len, vec![(x[0], Scalar::one(ring)), (x[1], Scalar::one(ring))])?;
    let wvec = SparseVector::from_entries(ring, len, w)?;
    let d = sym_pair_decompose(&uvec, &wvec, &Scalar::zero(ring))?;
    if let Some(m) = verify_sym_decomposition(&l, &d)? {
        return Err(Error::Verification(format!(
            "decomposition of the {pi} block differs at {:?}",
            m.index
        )));
    }
    Ok((l, d))
}

/// A symmetric decomposition of `𝒯(U)` with at most `4.5(n² + n)` terms:
/// three per strict pair, then at most three per index of H for the
/// remainder, whose nonzero entries all repeat an index of H.
pub fn symmetric_upper_witness(u: &SymTensor, n: usize) -> Result<SymDecomposition> {
    let layout = Layout::new(n)?;
    let ring = u.ring();
    require_large_field(ring)?;
    check_zero_block(u, layout)?;
    let curly = build_curly_t(u, n)?;
    let blocks = layout
        .strict_pairs()
        .into_par_iter()
        .map(|pi| build_l_pi(u, layout, pi))
        .collect::<Result<Vec<_>>>()?;
    let mut rest = curly.clone();
    for (l, _) in &blocks {
        rest = rest.checked_sub(l)?;
    }
    let mut per_index: BTreeMap<usize, (Scalar, Vec<(usize, Scalar)>)> = BTreeMap::new();
    for (&[a, b, c], v) in rest.nonzeros() {
        let (x, other) = match (a == b, b == c) {
            (true, true) => (a, None),
            (true, false) => (a, Some(c)),
            (false, true) => (b, Some(a)),
            (false, false) => {
                return Err(Error::Structure(format!(
                    "remainder has an entry at distinct indices ({}, {}, {})",
                    curly.names()[a],
                    curly.names()[b],
                    curly.names()[c]
                )))
            }
        };
        if x >= layout.h_len() {
            return Err(Error::Structure(format!(
                "remainder has an entry with {} repeated",
                curly.names()[x]
            )));
        }
        let slot = per_index
            .entry(x)
            .or_insert_with(|| (Scalar::zero(ring), Vec::new()));
        match other {
            None => slot.0 = v.clone(),
            Some(z) => slot.1.push((z, v.clone())),
        }
    }
    let len = layout.len();
    let rest_terms = per_index
        .into_par_iter()
        .map(|(x, (a, m))| {
            let m = SparseVector::from_entries(ring, len, m)?;
            sym_pair_decompose(&unit(ring, len, x), &m, &a)
        })
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<SymTerm> = blocks
        .into_iter()
        .flat_map(|(_, d)| d.terms)
        .chain(rest_terms.into_iter().flat_map(|d| d.terms))
        .collect();
    let d = SymDecomposition::new(terms)?;
    if let Some(m) = verify_sym_decomposition(&curly, &d)? {
        return Err(Error::Verification(format!("padded tensor witness differs at {:?}", m.index)));
    }
    Ok(d)
}

/// Extends a tensor with zero slices to an n × n × n cube, n the largest side.
pub fn pad_cubical(t: &Tensor3) -> Result<Tensor3> {
    let n = *t.dims().iter().max().expect("three dims");
    Tensor3::from_entries(t.ring(), [n; 3], t.nonzeros().map(|(k, v)| (*k, v.clone())))
}

/// Extends every vector of `d` with zeros to length n.
pub fn pad_decomposition(d: &Decomposition, n: usize) -> Result<Decomposition> {
    let pad = |v: &SparseVector| {
        if v.len() > n {
            return Err(Error::Dimension(format!("vector of length {} padded to {n}", v.len())));
        }
        SparseVector::from_entries(v.ring(), n, v.nonzeros().to_vec())
    };
    let terms = d
        .terms
        .iter()
        .map(|t| Rank1Term::new(pad(&t.a)?, pad(&t.b)?, pad(&t.c)?))
        .collect::<Result<Vec<_>>>()?;
    Decomposition::new(terms)
}

/// A symmetric decomposition of `𝒯(S(T))` from a decomposition `d` of the
/// cubical tensor T: the cubes of `(a_t | b_t | c_t | 0)`, then the witness
/// for what remains.
pub fn symmetric_witness(t: &Tensor3, d: &Decomposition) -> Result<SymDecomposition> {
    let [n, b, c] = t.dims();
    if n != b || b != c {
        return Err(Error::Dimension(format!("{:?} is not cubical", t.dims())));
    }
    let ring = d.terms.first().map_or(t.ring(), Rank1Term::ring).fraction_field();
    require_large_field(ring)?;
    let t = t.embed(ring)?;
    let d = Decomposition::new(
        d.terms
            .iter()
            .map(|x| Rank1Term::new(x.a.embed(ring)?, x.b.embed(ring)?, x.c.embed(ring)?))
            .collect::<Result<Vec<_>>>()?,
    )?;
    if let Some(m) = verify_decomposition(&t, &d)? {
        return Err(Error::Verification(format!(
            "decomposition differs from the tensor at {:?}: expected {}, found {}",
            m.index, m.expected, m.found
        )));
    }
    let layout = Layout::new(n)?;
    let s = embed_s(&t)?;
    let one = Scalar::one(ring);
    let lifted = |len: usize| -> Result<Vec<SymTerm>> {
        d.terms
            .iter()
            .map(|x| {
                let mut entries = x.a.nonzeros().to_vec();
                entries.extend(x.b.nonzeros().iter().map(|(i, v)| (i + n, v.clone())));
                entries.extend(x.c.nonzeros().iter().map(|(i, v)| (i + 2 * n, v.clone())));
                SymTerm::new(one.clone(), SparseVector::from_entries(ring, len, entries)?)
            })
            .collect()
    };
    let on_h = SymDecomposition::new(lifted(layout.h_len())?)?.sum(ring, layout.h_names())?;
    let rest = s.checked_sub(&on_h)?;
    let upper = symmetric_upper_witness(&rest, n)?;
    let mut terms = lifted(layout.len())?;
    terms.extend(upper.terms);
    let out = SymDecomposition::new(terms)?;
    if let Some(m) = verify_sym_decomposition(&build_curly_t(&s, n)?, &out)? {
        return Err(Error::Verification(format!("symmetric witness differs at {:?}", m.index)));
    }
    Ok(out)
}
