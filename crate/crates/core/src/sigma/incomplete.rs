use crate::algebra::{DenseMatrix, Ring, Scalar};
use crate::error::{Error, Result};

/// A matrix with entries in a ring or `*` (`None`).
///
/// Stars are enumerated in row-major order; that enumeration is the one
/// used for the slices of the tensor built from this matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncompleteMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Option<Scalar>>,
    stars: Vec<(usize, usize)>,
}

impl IncompleteMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Option<Scalar>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} incomplete matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().flatten().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        let stars = entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_none())
            .map(|(k, _)| (k / cols, k % cols))
            .collect();
        Ok(IncompleteMatrix {
            ring,
            rows,
            cols,
            entries,
            stars,
        })
    }

    /// Builds from small integer rows, `None` marking a star.
    pub fn from_ints(ring: Ring, rows: &[Vec<Option<i64>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|e| e.map(|v| Scalar::from_i64(ring, v)))
            .collect();
        IncompleteMatrix::new(ring, r, c, entries)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.entries[i * self.cols + j].as_ref()
    }

    pub fn is_star(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_none()
    }

    pub fn entries(&self) -> &[Option<Scalar>] {
        &self.entries
    }

    /// Star positions `k_1, …, k_τ` in row-major order.
    pub fn stars(&self) -> &[(usize, usize)] {
        &self.stars
    }

    pub fn tau(&self) -> usize {
        self.stars.len()
    }

    /// Symmetric in both its star pattern and its values.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The matrix with every star replaced by zero.
    pub fn zero_filled(&self) -> DenseMatrix {
        DenseMatrix::new(
            self.ring,
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|e| e.clone().unwrap_or_else(|| Scalar::zero(self.ring)))
                .collect(),
        )
        .expect("shape already validated")
    }

    /// Fills the stars, in enumeration order, with `values`.
    pub fn complete(&self, values: &[Scalar]) -> Result<DenseMatrix> {
        if values.len() != self.tau() {
            return Err(Error::Dimension(format!(
                "{} values for {} stars",
                values.len(),
                self.tau()
            )));
        }
        let mut fill = values.iter();
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Some(v) => v.clone(),
                None => fill.next().expect("counted").clone(),
            })
            .collect();
        DenseMatrix::new(self.ring, self.rows, self.cols, entries)
    }

    /// Ok when `m` matches every non-star entry (read in `m`'s ring);
    /// otherwise reports the first disagreement in row-major order.
    pub fn check_completion(&self, m: &DenseMatrix) -> Result<()> {
        if (m.rows(), m.cols()) != (self.rows, self.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} matrix against a {}x{} pattern",
                m.rows(),
                m.cols(),
                self.rows,
                self.cols
            )));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some(expected) = self.get(i, j) {
                    let expected = expected.embed(m.ring())?;
                    if &expected != m.get(i, j) {
                        return Err(Error::CompletionMismatch {
                            row: i,
                            col: j,
                            expected: expected.to_string(),
                            found: m.get(i, j).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_enumeration_and_completion() {
        let r = Ring::gf(2).unwrap();
        let b = IncompleteMatrix::from_ints(r, &[vec![Some(1), None], vec![None, Some(1)]]).unwrap();
        assert_eq!(b.stars(), [(0, 1), (1, 0)]);
        assert!(b.is_symmetric());
        let c = b.complete(&[Scalar::one(r), Scalar::one(r)]).unwrap();
        assert_eq!(c.rank(), 1);
        b.check_completion(&c).unwrap();
        let wrong = DenseMatrix::zeros(r, 2, 2).unwrap();
        assert!(matches!(
            b.check_completion(&wrong),
            Err(Error::CompletionMismatch { row: 0, col: 0, .. })
        ));
        assert_eq!(b.zero_filled(), DenseMatrix::identity(r, 2).unwrap());
    }
}
