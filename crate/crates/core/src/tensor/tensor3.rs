use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::vector::SparseVector;
use crate::algebra::{DenseMatrix, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    First,
    Second,
    Third,
}

impl Axis {
    /// Axis from its 1-based number.
    pub fn from_number(n: usize) -> Result<Axis> {
        match n {
            1 => Ok(Axis::First),
            2 => Ok(Axis::Second),
            3 => Ok(Axis::Third),
            _ => Err(Error::Dimension(format!("axis {n} (expected 1, 2 or 3)"))),
        }
    }

    fn position(self) -> usize {
        self as usize
    }
}

/// An order-3 tensor; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    ring: Ring,
    dims: [usize; 3],
    entries: BTreeMap<[usize; 3], Scalar>,
}

impl Tensor3 {
    pub fn zeros(ring: Ring, dims: [usize; 3]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::Dimension(format!("tensor dimensions {dims:?}")));
        }
        Ok(Tensor3 {
            ring,
            dims,
            entries: BTreeMap::new(),
        })
    }

    /// Sets the listed entries; later duplicates overwrite earlier ones.
    pub fn from_entries(
        ring: Ring,
        dims: [usize; 3],
        entries: impl IntoIterator<Item = ([usize; 3], Scalar)>,
    ) -> Result<Self> {
        let mut t = Tensor3::zeros(ring, dims)?;
        for (idx, v) in entries {
            if idx.iter().zip(&dims).any(|(i, d)| i >= d) {
                return Err(Error::Dimension(format!("index {idx:?} outside {dims:?}")));
            }
            if v.ring() != ring {
                return Err(Error::RingMismatch(ring, v.ring()));
            }
            if v.is_zero() {
                t.entries.remove(&idx);
            } else {
                t.entries.insert(idx, v);
            }
        }
        Ok(t)
    }

    pub fn from_fn(
        ring: Ring,
        dims: [usize; 3],
        mut f: impl FnMut(usize, usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut all = Vec::new();
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    all.push(([i, j, k], f(i, j, k)));
                }
            }
        }
        Tensor3::from_entries(ring, dims, all)
    }

    /// Stacks matrices as the 3-slices of a tensor.
    pub fn from_slices(slices: &[DenseMatrix]) -> Result<Self> {
        let first = slices
            .first()
            .ok_or_else(|| Error::Dimension("no slices".into()))?;
        let (rows, cols, ring) = (first.rows(), first.cols(), first.ring());
        if slices
            .iter()
            .any(|s| (s.rows(), s.cols(), s.ring()) != (rows, cols, ring))
        {
            return Err(Error::Dimension("slices of different shapes".into()));
        }
        Tensor3::from_fn(ring, [rows, cols, slices.len()], |i, j, k| {
            slices[k].get(i, j).clone()
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&[i, j, k])
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn embed(&self, ring: Ring) -> Result<Tensor3> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| Ok((*k, v.embed(ring)?)))
            .collect::<Result<Vec<_>>>()?;
        Tensor3::from_entries(ring, self.dims, entries)
    }

    /// The `index`-th slice along `axis`, keeping the other two axes in
    /// their original order.
    pub fn slice(&self, axis: Axis, index: usize) -> Result<DenseMatrix> {
        let a = axis.position();
        if index >= self.dims[a] {
            return Err(Error::Dimension(format!(
                "slice {index} along axis {} of size {}",
                a + 1,
                self.dims[a]
            )));
        }
        let others: Vec<usize> = (0..3).filter(|&x| x != a).collect();
        DenseMatrix::from_fn(self.ring, self.dims[others[0]], self.dims[others[1]], |r, c| {
            let mut idx = [0; 3];
            idx[a] = index;
            idx[others[0]] = r;
            idx[others[1]] = c;
            self.get(idx[0], idx[1], idx[2])
        })
    }
}

/// The simple tensor `a ⊗ b ⊗ c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rank1Term {
    pub a: SparseVector,
    pub b: SparseVector,
    pub c: SparseVector,
}

impl Rank1Term {
    pub fn new(a: SparseVector, b: SparseVector, c: SparseVector) -> Result<Self> {
        if a.ring() != b.ring() || a.ring() != c.ring() {
            return Err(Error::RingMismatch(a.ring(), if a.ring() != b.ring() { b.ring() } else { c.ring() }));
        }
        Ok(Rank1Term { a, b, c })
    }

    pub fn from_dense(ring: Ring, a: Vec<Scalar>, b: Vec<Scalar>, c: Vec<Scalar>) -> Result<Self> {
        Rank1Term::new(
            SparseVector::from_dense(ring, a)?,
            SparseVector::from_dense(ring, b)?,
            SparseVector::from_dense(ring, c)?,
        )
    }

    pub fn ring(&self) -> Ring {
        self.a.ring()
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.a.len(), self.b.len(), self.c.len()]
    }

    pub fn to_tensor(&self) -> Result<Tensor3> {
        let mut entries = Vec::new();
        accumulate_term(self, |idx, v| entries.push((idx, v)));
        Tensor3::from_entries(self.ring(), self.dims(), entries)
    }
}

fn accumulate_term(term: &Rank1Term, mut add: impl FnMut([usize; 3], Scalar)) {
    for (i, x) in term.a.nonzeros() {
        for (j, y) in term.b.nonzeros() {
            let xy = x * y;
            for (k, z) in term.c.nonzeros() {
                add([*i, *j, *k], &xy * z);
            }
        }
    }
}

/// A list of simple tensors, read as their sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub terms: Vec<Rank1Term>,
}

impl Decomposition {
    pub fn new(terms: Vec<Rank1Term>) -> Result<Self> {
        if let Some(first) = terms.first() {
            let (dims, ring) = (first.dims(), first.ring());
            if terms.iter().any(|t| t.dims() != dims || t.ring() != ring) {
                return Err(Error::Dimension("terms of different shapes or rings".into()));
            }
        }
        Ok(Decomposition { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact sum, as a tensor of the given shape.
    pub fn sum(&self, ring: Ring, dims: [usize; 3]) -> Result<Tensor3> {
        for t in &self.terms {
            if t.dims() != dims {
                return Err(Error::Dimension(format!(
                    "term of shape {:?} against a tensor of shape {dims:?}",
                    t.dims()
                )));
            }
            if t.ring() != ring {
                return Err(Error::RingMismatch(ring, t.ring()));
            }
        }
        let acc = self
            .terms
            .par_chunks(64)
            .map(|chunk| {
                let mut local: HashMap<[usize; 3], Scalar> = HashMap::new();
                for term in chunk {
                    accumulate_term(term, |idx, v| {
                        local
                            .entry(idx)
                            .and_modify(|e| *e += &v)
                            .or_insert(v);
                    });
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                for (idx, v) in b {
                    a.entry(idx).and_modify(|e| *e += &v).or_insert(v);
                }
                a
            });
        Tensor3::from_entries(ring, dims, acc)
    }
}

/// First entry, in lexicographic order, where a decomposition and its
/// target disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: [usize; 3],
    pub expected: Scalar,
    pub found: Scalar,
}

/// Compares `Σ terms` with `t` exactly. `Ok(None)` means they agree. The
/// target is read in the ring of the terms when that ring contains it.
pub fn verify_decomposition(t: &Tensor3, d: &Decomposition) -> Result<Option<Mismatch>> {
    let ring = d.terms.first().map_or(t.ring(), Rank1Term::ring);
    let target = t.embed(ring)?;
    let sum = d.sum(ring, t.dims())?;
    let keys: BTreeSet<&[usize; 3]> = target.entries.keys().chain(sum.entries.keys()).collect();
    for idx in keys {
        let (e, f) = (target.get(idx[0], idx[1], idx[2]), sum.get(idx[0], idx[1], idx[2]));
        if e != f {
            return Ok(Some(Mismatch {
                index: *idx,
                expected: e,
                found: f,
            }));
        }
    }
    Ok(None)
}

/// Replaces each of the first `k` 3-slices `S_i` by `S_i − Σ_j Λ_ij S_{k+j}`
/// and drops the trailing slices.
pub fn slice_reduce(t: &Tensor3, k: usize, lambda: &DenseMatrix) -> Result<Tensor3> {
    let [ni, nj, nk] = t.dims;
    if k == 0 || k >= nk {
        return Err(Error::Dimension(format!(
            "{k} payload slices in a tensor with {nk} slices"
        )));
    }
    let gadget = nk - k;
    if (lambda.rows(), lambda.cols()) != (k, gadget) {
        return Err(Error::Dimension(format!(
            "coefficient matrix is {}x{}, expected {k}x{gadget}",
            lambda.rows(),
            lambda.cols()
        )));
    }
    if lambda.ring() != t.ring {
        return Err(Error::RingMismatch(t.ring, lambda.ring()));
    }
    Tensor3::from_fn(t.ring, [ni, nj, k], |i, j, s| {
        let mut v = t.get(i, j, s);
        for g in 0..gadget {
            let c = lambda.get(s, g);
            if !c.is_zero() {
                v -= &(c * &t.get(i, j, k + g));
            }
        }
        v
    })
}
