use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::tensor::{Mismatch, SparseVector, Tensor3};

/// Sorts an index triple; every entry of a symmetric tensor is stored under
/// its sorted index.
pub(crate) fn canonical(mut idx: [usize; 3]) -> [usize; 3] {
    idx.sort_unstable();
    idx
}

/// A symmetric order-3 tensor over named indices. Only the nonzero entries
/// with `i ≤ j ≤ k` are stored, so symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTensor {
    ring: Ring,
    names: Vec<String>,
    entries: BTreeMap<[usize; 3], Scalar>,
}

impl SymTensor {
    pub fn zeros(ring: Ring, names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Dimension("symmetric tensor without indices".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Structure(format!("index name {dup} used twice")));
        }
        Ok(SymTensor {
            ring,
            names,
            entries: BTreeMap::new(),
        })
    }

    /// Indices named "1", "2", ….
    pub fn numbered(ring: Ring, dim: usize) -> Result<Self> {
        SymTensor::zeros(ring, (1..=dim).map(|i| i.to_string()).collect())
    }

    /// Builds from entries given at arbitrary positions. Two entries in the
    /// same permutation orbit must agree.
    pub fn from_entries(
        ring: Ring,
        names: Vec<String>,
        entries: impl IntoIterator<Item = ([usize; 3], Scalar)>,
    ) -> Result<Self> {
        let mut t = SymTensor::zeros(ring, names)?;
        let mut given: HashMap<[usize; 3], Scalar> = HashMap::new();
        for (idx, v) in entries {
            t.check_index(idx)?;
            if v.ring() != ring {
                return Err(Error::RingMismatch(ring, v.ring()));
            }
            let key = canonical(idx);
            match given.get(&key) {
                Some(old) if *old != v => {
                    return Err(Error::Structure(format!(
                        "entries {idx:?} = {v} and its permutation {key:?} = {old} differ"
                    )))
                }
                _ => {
                    given.insert(key, v);
                }
            }
        }
        t.entries = given.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(t)
    }

    /// Reads a full tensor, checking all six permutations of every entry.
    pub fn from_tensor(t: &Tensor3, names: Vec<String>) -> Result<Self> {
        let [a, b, c] = t.dims();
        if a != b || b != c || names.len() != a {
            return Err(Error::Dimension(format!(
                "{:?} is not a cube over {} indices",
                t.dims(),
                names.len()
            )));
        }
        let mut entries = Vec::new();
        for (idx, v) in t.nonzeros() {
            let [i, j, k] = *idx;
            for p in [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]] {
                if t.get(p[0], p[1], p[2]) != *v {
                    return Err(Error::Structure(format!("tensor is not symmetric at {idx:?}")));
                }
            }
            entries.push((*idx, v.clone()));
        }
        SymTensor::from_entries(t.ring(), names, entries)
    }

    /// The full tensor with all permutations written out.
    pub fn to_tensor(&self) -> Result<Tensor3> {
        let n = self.dim();
        let mut all = Vec::new();
        for (&[i, j, k], v) in &self.entries {
            let perms: BTreeSet<[usize; 3]> =
                [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]].into();
            all.extend(perms.into_iter().map(|p| (p, v.clone())));
        }
        Tensor3::from_entries(self.ring, [n, n, n], all)
    }

    fn check_index(&self, idx: [usize; 3]) -> Result<()> {
        if idx.iter().any(|&i| i >= self.dim()) {
            return Err(Error::Dimension(format!(
                "index {idx:?} outside {} indices",
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&canonical([i, j, k]))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// Nonzero entries at sorted positions `i ≤ j ≤ k`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets the entry at `idx` and its permutations.
    pub fn set(&mut self, idx: [usize; 3], v: Scalar) -> Result<()> {
        self.check_index(idx)?;
        if v.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, v.ring()));
        }
        let key = canonical(idx);
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
        Ok(())
    }

    /// Adds `v` to the orbit of `idx`.
    pub fn add_at(&mut self, idx: [usize; 3], v: &Scalar) -> Result<()> {
        let cur = self.get(idx[0], idx[1], idx[2]);
        self.set(idx, cur.checked_add(v)?)
    }

    pub fn checked_sub(&self, other: &SymTensor) -> Result<SymTensor> {
        if other.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "{} against {} indices",
                self.dim(),
                other.dim()
            )));
        }
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add_at(*idx, &-v)?;
        }
        Ok(out)
    }

    pub fn embed(&self, ring: Ring) -> Result<SymTensor> {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| Ok((*k, v.embed(ring)?)))
            .collect::<Result<Vec<_>>>()?;
        SymTensor::from_entries(ring, self.names.clone(), entries)
    }
}

/// The simple symmetric tensor `s · v ⊗ v ⊗ v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTerm {
    pub s: Scalar,
    pub v: SparseVector,
}

impl SymTerm {
    pub fn new(s: Scalar, v: SparseVector) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::Structure("symmetric term with zero coefficient".into()));
        }
        if s.ring() != v.ring() {
            return Err(Error::RingMismatch(s.ring(), v.ring()));
        }
        Ok(SymTerm { s, v })
    }

    pub fn ring(&self) -> crate::algebra::Ring {
        self.s.ring()
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    fn accumulate(&self, acc: &mut HashMap<[usize; 3], Scalar>) {
        let nz = self.v.nonzeros();
        for (x, (i, a)) in nz.iter().enumerate() {
            let sa = &self.s * a;
            for (y, (j, b)) in nz.iter().enumerate().skip(x) {
                let sab = &sa * b;
                for (k, c) in &nz[y..] {
                    let v = &sab * c;
                    acc.entry([*i, *j, *k])
                        .and_modify(|e| *e += &v)
                        .or_insert(v);
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymDecomposition {
    pub terms: Vec<SymTerm>,
}

impl SymDecomposition {
    pub fn new(terms: Vec<SymTerm>) -> Result<Self> {
        if let Some(first) = terms.first() {
            if terms
                .iter()
                .any(|t| t.len() != first.len() || t.ring() != first.ring())
            {
                return Err(Error::Dimension("terms of different lengths or rings".into()));
            }
        }
        Ok(SymDecomposition { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact sum, on the given index names.
    pub fn sum(&self, ring: Ring, names: Vec<String>) -> Result<SymTensor> {
        let dim = names.len();
        for t in &self.terms {
            if t.len() != dim {
                return Err(Error::Dimension(format!(
                    "term of length {} against {dim} indices",
                    t.len()
                )));
            }
            if t.ring() != ring {
                return Err(Error::RingMismatch(ring, t.ring()));
            }
        }
        let acc = self
            .terms
            .par_chunks(16)
            .map(|chunk| {
                let mut local = HashMap::new();
                for t in chunk {
                    t.accumulate(&mut local);
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    a.entry(k).and_modify(|e| *e += &v).or_insert(v);
                }
                a
            });
        SymTensor::from_entries(ring, names, acc)
    }
}

/// Compares `Σ s_t v_t^{⊗3}` with `t`; returns the first disagreeing sorted
/// index, or `None`.
pub fn verify_sym_decomposition(t: &SymTensor, d: &SymDecomposition) -> Result<Option<Mismatch>> {
    let ring = d.terms.first().map_or(t.ring(), SymTerm::ring);
    let target = t.embed(ring)?;
    let sum = d.sum(ring, t.names().to_vec())?;
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
