use super::require_large_field;
use super::sym_tensor::{verify_sym_decomposition, SymDecomposition, SymTensor, SymTerm};
use crate::algebra::{DenseMatrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::tensor::SparseVector;

/// Largest q tried over ℚ.
const MAX_RATIONAL_Q: i64 = 64;

/// The 2×2×2 tensor A with A(1|1|1) = a, A(1|1|2) = 1 (and permutations),
/// all other entries 0.
pub fn gadget_tensor(a: &Scalar) -> Result<SymTensor> {
    let r = a.ring();
    SymTensor::from_entries(
        r,
        vec!["1".into(), "2".into()],
        [([0, 0, 0], a.clone()), ([0, 0, 1], Scalar::one(r))],
    )
}

/// Weights s with Σ s_t r_t^e = (a, 1, 0)_e for e = 0, 1, 2, or `None` when
/// the nodes coincide.
fn solve_moments(a: &Scalar, nodes: &[Scalar; 3]) -> Option<[Scalar; 3]> {
    let ring = a.ring();
    let rows = (0..3)
        .map(|e| nodes.iter().map(|r| r.pow(e)).collect())
        .collect();
    let inv = DenseMatrix::from_rows(ring, rows).ok()?.inverse().ok()?;
    let rhs = [a.clone(), Scalar::one(ring), Scalar::zero(ring)];
    Some([0, 1, 2].map(|t| {
        (0..3).fold(Scalar::zero(ring), |acc, e| &acc + &(inv.get(t, e) * &rhs[e]))
    }))
}

/// Tries the nodes r = (q / (qa − q − 1), q, 1).
fn attempt(a: &Scalar, q: &Scalar) -> Option<Vec<(Scalar, Scalar)>> {
    let ring = a.ring();
    let one = Scalar::one(ring);
    let den = &(&(q * a) - q) - &one;
    let r1 = q.checked_div(&den).ok()?;
    let nodes = [r1, q.clone(), one];
    let s = solve_moments(a, &nodes)?;
    if s.iter().any(Scalar::is_zero) {
        return None;
    }
    let third = (0..3).fold(Scalar::zero(ring), |acc, t| &acc + &(&s[t] * &nodes[t].pow(3)));
    if !third.is_zero() {
        return None;
    }
    Some(s.into_iter().zip(nodes).collect())
}

fn candidates(ring: Ring) -> Box<dyn Iterator<Item = Scalar>> {
    match ring.cardinality() {
        Some(p) => Box::new((0..p as i64).map(move |q| Scalar::from_i64(ring, q))),
        None => Box::new((2..=MAX_RATIONAL_Q).map(move |q| Scalar::from_i64(ring, q))),
    }
}

fn search(a: &Scalar) -> Option<Vec<(Scalar, Scalar)>> {
    candidates(a.ring()).find_map(|q| attempt(a, &q))
}

/// Three terms `s_t (1, r_t)^{⊗3}` summing to the tensor of
/// [`gadget_tensor`].
///
/// The weights come from solving the moment equations at the nodes, not
/// from a closed formula, and the sum is checked before returning. For
/// a = 1 the tensor is first moved to a = 2 by the substitution
/// `(x, y) ↦ (2x, y)` and a rescaling.
pub fn waring_gadget(a: &Scalar) -> Result<SymDecomposition> {
    let ring = a.ring();
    require_large_field(ring)?;
    let pairs = if a.is_one() {
        let c = Scalar::from_i64(ring, 2);
        search(&c).map(|found| {
            found
                .into_iter()
                .map(|(s, r)| (s.checked_div(&c).expect("2 is invertible"), &c * &r))
                .collect()
        })
    } else {
        search(a)
    };
    let pairs = pairs.ok_or_else(|| {
        Error::Structure(format!("no admissible parameter for a = {a} over {ring}"))
    })?;
    let terms = pairs
        .into_iter()
        .map(|(s, r)| SymTerm::new(s, SparseVector::from_dense(ring, vec![Scalar::one(ring), r])?))
        .collect::<Result<Vec<_>>>()?;
    let d = SymDecomposition::new(terms)?;
    if let Some(m) = verify_sym_decomposition(&gadget_tensor(a)?, &d)? {
        return Err(Error::Verification(format!(
            "gadget decomposition for a = {a} is wrong at {:?}",
            m.index
        )));
    }
    Ok(d)
}

/// `w = λu` for some λ?
fn is_multiple(u: &SparseVector, w: &SparseVector) -> bool {
    let Some((i, ui)) = u.nonzeros().first() else {
        return true;
    };
    let lambda = w.get(*i).checked_div(ui).expect("nonzero pivot");
    u.scale(&lambda) == *w
}

/// At most three terms in span{u, w} summing to
/// `a·u⊗u⊗u + u⊗u⊗w + u⊗w⊗u + w⊗u⊗u`.
pub fn sym_pair_decompose(u: &SparseVector, w: &SparseVector, a: &Scalar) -> Result<SymDecomposition> {
    let ring = a.ring();
    if u.len() != w.len() {
        return Err(Error::Dimension(format!("vectors of lengths {} and {}", u.len(), w.len())));
    }
    if u.ring() != ring || w.ring() != ring {
        return Err(Error::RingMismatch(ring, if u.ring() != ring { u.ring() } else { w.ring() }));
    }
    if w.is_zero() {
        return if a.is_zero() || u.is_zero() {
            Ok(SymDecomposition::default())
        } else {
            SymDecomposition::new(vec![SymTerm::new(a.clone(), u.clone())?])
        };
    }
    if is_multiple(u, w) {
        return Err(Error::Structure("dependent vectors in a pair decomposition".into()));
    }
    let gadget = waring_gadget(a)?;
    let terms = gadget
        .terms
        .iter()
        .map(|t| {
            let r = t.v.get(1);
            let mut entries: Vec<(usize, Scalar)> = u.nonzeros().to_vec();
            entries.extend(w.nonzeros().iter().map(|(i, x)| (*i, &r * x)));
            SymTerm::new(t.s.clone(), SparseVector::from_entries(ring, u.len(), entries)?)
        })
        .collect::<Result<Vec<_>>>()?;
    SymDecomposition::new(terms)
}
