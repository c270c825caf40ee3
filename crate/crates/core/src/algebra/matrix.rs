use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{Ring, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix whose entries all share one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        Ok(DenseMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        DenseMatrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        DenseMatrix::from_rows(
            ring,
            rows.iter()
                .map(|row| row.iter().map(|&v| Scalar::from_i64(ring, v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix::new(ring, rows, cols, entries)
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Result<Self> {
        DenseMatrix::new(ring, rows, cols, vec![Scalar::zero(ring); rows * cols])
    }

    pub fn identity(ring: Ring, n: usize) -> Result<Self> {
        DenseMatrix::from_fn(ring, n, n, |i, j| Scalar::from_i64(ring, (i == j) as i64))
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
            .expect("transpose keeps shape valid")
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<DenseMatrix> {
        DenseMatrix::from_fn(self.ring, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        DenseMatrix::from_fn(self.ring, self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero(self.ring);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += &(a * other.get(k, j));
                }
            }
            acc
        })
    }

    pub fn scale(&self, s: &Scalar) -> Result<DenseMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(s))
            .collect::<Result<_>>()?;
        DenseMatrix::new(self.ring, self.rows, self.cols, entries)
    }

    pub fn checked_sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        DenseMatrix::new(self.ring, self.rows, self.cols, entries)
    }

    pub fn embed(&self, ring: Ring) -> Result<DenseMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(ring))
            .collect::<Result<_>>()?;
        DenseMatrix::new(ring, self.rows, self.cols, entries)
    }

    /// Rank over the fraction field of the ring.
    ///
    /// Fraction-free elimination: rational rows are first scaled to integer
    /// rows, after which every intermediate value is a minor of the input
    /// and each division by the previous pivot is exact. Pivots are the
    /// first nonzero entry found scanning columns left to right.
    pub fn rank(&self) -> usize {
        let work: Vec<Vec<Scalar>> = match self.ring {
            Ring::Rationals => (0..self.rows).map(|i| integer_row(self.row(i))).collect(),
            _ => (0..self.rows).map(|i| self.row(i).to_vec()).collect(),
        };
        let ring = work[0][0].ring();
        bareiss_rank(work, Scalar::one(ring))
    }

    /// Inverse of a square matrix over a field, by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if !self.ring.is_field() {
            return Err(Error::NoDivision(self.ring));
        }
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| Scalar::from_i64(self.ring, (i == j) as i64)).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot_inv = a[c][c].inverse()?;
            for j in 0..n {
                a[c][j] = &a[c][j] * &pivot_inv;
                inv[c][j] = &inv[c][j] * &pivot_inv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in 0..n {
                    let da = &factor * &a[c][j];
                    let di = &factor * &inv[c][j];
                    a[i][j] -= &da;
                    inv[i][j] -= &di;
                }
            }
        }
        DenseMatrix::from_rows(self.ring, inv)
    }

    /// Exact inverse of a 3×3 matrix over a field.
    pub fn solve_3x3(&self) -> Result<DenseMatrix> {
        if self.rows != 3 || self.cols != 3 {
            return Err(Error::Dimension(format!(
                "expected 3x3, got {}x{}",
                self.rows, self.cols
            )));
        }
        self.inverse()
    }

    /// Writes `self` as a sum of `rank` outer products `col ⊗ row`.
    pub fn rank_factorization(&self) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        if !self.ring.is_field() {
            return Err(Error::NoDivision(self.ring));
        }
        let mut r: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..self.rows).find(|&i| !r[i][c].is_zero()) else {
                continue;
            };
            r.swap(next, p);
            let pivot_inv = r[next][c].inverse()?;
            for x in r[next].iter_mut() {
                *x = &*x * &pivot_inv;
            }
            let pivot_row = r[next].clone();
            for (i, row) in r.iter_mut().enumerate() {
                if i == next || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &(&factor * y);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Ok(pivots
            .iter()
            .enumerate()
            .map(|(k, &c)| (self.column(c), r[k].clone()))
            .collect())
    }
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Scalar]) -> Vec<Scalar> {
    let lcm = row.iter().fold(BigInt::one(), |acc, e| {
        acc.lcm(e.as_rational().expect("rational entry").denom())
    });
    row.iter()
        .map(|e| {
            let q = e.as_rational().unwrap();
            Scalar::Int(q.numer() * (&lcm / q.denom()))
        })
        .collect()
}

fn bareiss_rank(mut m: Vec<Vec<Scalar>>, one: Scalar) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = one;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let (top, bottom) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = &(&pivot * &row[j]) - &(&lead * &prow[j]);
                row[j] = v.exact_div(&prev);
            }
            row[c] = Scalar::zero(pivot.ring());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
