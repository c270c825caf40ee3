use std::fmt;

use super::sym_tensor::SymTensor;
use crate::algebra::{DenseMatrix, Scalar};
use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// One of the three copies I, J, K inside H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    J,
    K,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::I, Letter::J, Letter::K];

    fn offset(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::I => "I",
            Letter::J => "J",
            Letter::K => "K",
        })
    }
}

/// The pair (α_p, α_q), 1 ≤ p ≤ q ≤ n, positions counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex {
    pub letter: Letter,
    pub p: usize,
    pub q: usize,
}

impl PairIndex {
    pub fn new(letter: Letter, p: usize, q: usize, n: usize) -> Result<Self> {
        if !(1 <= p && p <= q && q <= n) {
            return Err(Error::Dimension(format!("pair ({p}, {q}) with n = {n}")));
        }
        Ok(PairIndex { letter, p, q })
    }

    pub fn is_diagonal(&self) -> bool {
        self.p == self.q
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair_{}_{}_{}", self.letter, self.p, self.q)
    }
}

/// Positions in 𝓗 = H ∪ I² ∪ J² ∪ K²: first i1…in, j1…jn, k1…kn, then the
/// pairs of I, J and K, each in lexicographic order of (p, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
}

impl Layout {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("empty index set".into()));
        }
        Ok(Layout { n })
    }

    /// |H| = 3n.
    pub fn h_len(&self) -> usize {
        3 * self.n
    }

    pub fn pairs_per_letter(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// |𝓗| = 3n + 3n(n+1)/2.
    pub fn len(&self) -> usize {
        self.h_len() + 3 * self.pairs_per_letter()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of α_t (t from 1).
    pub fn h_position(&self, letter: Letter, t: usize) -> usize {
        debug_assert!((1..=self.n).contains(&t));
        letter.offset() * self.n + t - 1
    }

    /// The letter and 1-based position of an index of H.
    pub fn h_index(&self, pos: usize) -> Option<(Letter, usize)> {
        (pos < self.h_len()).then(|| (Letter::ALL[pos / self.n], pos % self.n + 1))
    }

    pub fn pairs(&self) -> Vec<PairIndex> {
        let mut out = Vec::with_capacity(3 * self.pairs_per_letter());
        for letter in Letter::ALL {
            for p in 1..=self.n {
                for q in p..=self.n {
                    out.push(PairIndex { letter, p, q });
                }
            }
        }
        out
    }

    /// Pairs with p < q.
    pub fn strict_pairs(&self) -> Vec<PairIndex> {
        self.pairs().into_iter().filter(|p| !p.is_diagonal()).collect()
    }

    pub fn pair_position(&self, pi: PairIndex) -> usize {
        let n = self.n;
        // pairs (p', q') with p' < p come first: Σ_{p'<p} (n − p' + 1)
        let before = (pi.p - 1) * (n + 1) - (pi.p - 1) * pi.p / 2;
        self.h_len() + pi.letter.offset() * self.pairs_per_letter() + before + (pi.q - pi.p)
    }

    pub fn h_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.h_len());
        for prefix in ["i", "j", "k"] {
            names.extend((1..=self.n).map(|t| format!("{prefix}{t}")));
        }
        names
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = self.h_names();
        names.extend(self.pairs().iter().map(PairIndex::to_string));
        names
    }
}

/// `S(T)` on H for a cubical `T`: `S(i|j|k) = T(i|j|k)` on every
/// permutation of an (I, J, K) triple, 0 elsewhere.
pub fn embed_s(t: &Tensor3) -> Result<SymTensor> {
    let [a, b, c] = t.dims();
    if a != b || b != c {
        return Err(Error::Dimension(format!("{:?} is not cubical", t.dims())));
    }
    let layout = Layout::new(a)?;
    let entries = t
        .nonzeros()
        .map(|(&[i, j, k], v)| ([i, a + j, 2 * a + k], v.clone()));
    SymTensor::from_entries(t.ring(), layout.h_names(), entries)
}

/// The 3n × 3n matrix with ones on {α_p, α_q} × {α_p, α_q}.
pub fn pq_unit(pi: PairIndex, layout: Layout, ring: crate::algebra::Ring) -> Result<DenseMatrix> {
    let x = layout.h_position(pi.letter, pi.p);
    let y = layout.h_position(pi.letter, pi.q);
    DenseMatrix::from_fn(ring, layout.h_len(), layout.h_len(), |r, c| {
        if (r == x || r == y) && (c == x || c == y) {
            Scalar::one(ring)
        } else {
            Scalar::zero(ring)
        }
    })
}

/// `𝒯(S)`: S on H, plus for each pair π = (α_p, α_q) the slice `pq_unit(π)`
/// at π along each axis.
pub fn build_curly_t(s: &SymTensor, n: usize) -> Result<SymTensor> {
    let layout = Layout::new(n)?;
    if s.dim() != layout.h_len() {
        return Err(Error::Dimension(format!(
            "tensor on {} indices, expected 3n = {}",
            s.dim(),
            layout.h_len()
        )));
    }
    let ring = s.ring();
    let mut entries: Vec<([usize; 3], Scalar)> =
        s.nonzeros().map(|(k, v)| (*k, v.clone())).collect();
    for pi in layout.pairs() {
        let at = layout.pair_position(pi);
        let x = layout.h_position(pi.letter, pi.p);
        let y = layout.h_position(pi.letter, pi.q);
        for (a, b) in [(x, x), (x, y), (y, y)] {
            entries.push(([at, a, b], Scalar::one(ring)));
        }
    }
    SymTensor::from_entries(ring, layout.names(), entries)
}
