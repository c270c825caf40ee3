use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

/// A vector stored by its nonzero coordinates, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector {
    ring: Ring,
    len: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero(ring: Ring, len: usize) -> Self {
        SparseVector {
            ring,
            len,
            entries: Vec::new(),
        }
    }

    pub fn unit(ring: Ring, len: usize, i: usize) -> Self {
        assert!(i < len, "unit vector index out of range");
        SparseVector {
            ring,
            len,
            entries: vec![(i, Scalar::one(ring))],
        }
    }

    pub fn from_dense(ring: Ring, values: Vec<Scalar>) -> Result<Self> {
        let len = values.len();
        SparseVector::from_entries(ring, len, values.into_iter().enumerate().collect())
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_entries(ring: Ring, len: usize, mut entries: Vec<(usize, Scalar)>) -> Result<Self> {
        if let Some((i, _)) = entries.iter().find(|(i, _)| *i >= len) {
            return Err(Error::Dimension(format!("index {i} in a vector of length {len}")));
        }
        if let Some((_, bad)) = entries.iter().find(|(_, v)| v.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        Ok(SparseVector {
            ring,
            len,
            entries: merged,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzeros(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(self.ring),
        }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.ring); self.len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn embed(&self, ring: Ring) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|(i, v)| Ok((*i, v.embed(ring)?)))
            .collect::<Result<Vec<_>>>()?;
        SparseVector::from_entries(ring, self.len, entries)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SparseVector::from_entries(
            self.ring,
            self.len,
            self.entries.iter().map(|(i, v)| (*i, v * s)).collect(),
        )
        .expect("same support")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let r = Ring::gf(5).unwrap();
        let v = SparseVector::from_entries(
            r,
            4,
            vec![(2, Scalar::from_i64(r, 3)), (0, Scalar::one(r)), (2, Scalar::from_i64(r, 2))],
        )
        .unwrap();
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.to_dense(), SparseVector::unit(r, 4, 0).to_dense());
        assert!(SparseVector::from_entries(r, 2, vec![(2, Scalar::one(r))]).is_err());
    }
}
