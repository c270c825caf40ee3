use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::incomplete::IncompleteMatrix;
use super::set::SigmaSet;
use crate::algebra::{DenseMatrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Assignment, PolySystem, Polynomial};

/// Default bound on |𝓗|; 𝓑 has |𝓗|² entries.
pub const DEFAULT_GUARD: usize = 5000;

/// A triple of σ-elements, stored as indices into the σ-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub [usize; 3]);

/// The gadget 𝓑(F) together with the data needed to produce and check
/// witnesses for it.
#[derive(Clone, Debug)]
pub struct CompletionGadget {
    system: PolySystem,
    sigma: SigmaSet,
    labels: Vec<Label>,
    label_index: HashMap<Label, usize>,
    matrix: IncompleteMatrix,
}

/// A rank-3 completion `𝓦(ξ) = 𝓤(ξ)ᵀ 𝓤(ξ)` with its factor.
#[derive(Clone, Debug)]
pub struct CompletionWitness {
    pub assignment: Assignment,
    pub factor: DenseMatrix,
    pub completion: DenseMatrix,
}

/// All labels of σ³ having a coordinate equal to 1 or −1, in
/// lexicographic order of σ-indices.
pub fn build_labels(sigma: &SigmaSet) -> Vec<Label> {
    let m = sigma.len();
    let unit: Vec<bool> = sigma
        .elements()
        .iter()
        .map(|p| {
            p.constant_value()
                .is_some_and(|c| c.is_one() || (-&c).is_one())
        })
        .collect();
    let mut labels = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if unit[a] || unit[b] || unit[c] {
                    labels.push(Label([a, b, c]));
                }
            }
        }
    }
    labels
}

impl CompletionGadget {
    /// Builds σ(F), 𝓗 and 𝓑(F). Fails when |𝓗| exceeds `guard`.
    ///
    /// Entry (u, v) is classified from δ(u, v) = u·v: a constant gives that
    /// constant, a member of F gives 0, anything else is a star.
    pub fn build(system: &PolySystem, guard: usize) -> Result<Self> {
        let sigma = SigmaSet::for_system(system);
        let labels = build_labels(&sigma);
        if labels.len() > guard {
            return Err(Error::Guard {
                size: labels.len(),
                bound: guard,
            });
        }
        let ring = system.ring();
        let m = sigma.len();
        let products: Vec<Polynomial> = (0..m * m)
            .into_par_iter()
            .map(|k| sigma.get(k / m) * sigma.get(k % m))
            .collect();
        let members: HashSet<&Polynomial> = system.polynomials().iter().collect();
        let h = labels.len();
        let rows: Vec<Vec<Option<Scalar>>> = labels
            .par_iter()
            .map(|u| {
                labels
                    .iter()
                    .map(|v| {
                        let d = &(&products[u.0[0] * m + v.0[0]] + &products[u.0[1] * m + v.0[1]])
                            + &products[u.0[2] * m + v.0[2]];
                        if let Some(c) = d.constant_value() {
                            Some(c)
                        } else if members.contains(&d) {
                            Some(Scalar::zero(ring))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let matrix = IncompleteMatrix::new(ring, h, h, rows.into_iter().flatten().collect())?;
        let label_index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Ok(CompletionGadget {
            system: system.clone(),
            sigma,
            labels,
            label_index,
            matrix,
        })
    }

    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn sigma(&self) -> &SigmaSet {
        &self.sigma
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &IncompleteMatrix {
        &self.matrix
    }

    pub fn label_polynomials(&self, label: Label) -> [&Polynomial; 3] {
        label.0.map(|i| self.sigma.get(i))
    }

    /// Position of the label with the given coordinates, if present.
    pub fn position(&self, coords: [&Polynomial; 3]) -> Option<usize> {
        let idx = [
            self.sigma.index_of(coords[0])?,
            self.sigma.index_of(coords[1])?,
            self.sigma.index_of(coords[2])?,
        ];
        self.label_index.get(&Label(idx)).copied()
    }

    fn constant_label(&self, coords: [i64; 3]) -> usize {
        let (r, n) = (self.system.ring(), self.system.num_vars());
        let polys = coords.map(|c| Polynomial::constant(Scalar::from_i64(r, c), n));
        self.position([&polys[0], &polys[1], &polys[2]])
            .expect("constant labels are always present")
    }

    /// Positions of (1,0,0), (0,1,0), (0,0,1).
    pub fn e_positions(&self) -> [usize; 3] {
        [
            self.constant_label([1, 0, 0]),
            self.constant_label([0, 1, 0]),
            self.constant_label([0, 0, 1]),
        ]
    }

    /// Position of the label (1, 0, x_{i+1}).
    pub fn variable_position(&self, i: usize) -> usize {
        let (r, n) = (self.system.ring(), self.system.num_vars());
        let one = Polynomial::one(r, n);
        let zero = Polynomial::zero(r, n);
        let x = Polynomial::var(r, n, i);
        self.position([&one, &zero, &x])
            .expect("(1, 0, x_i) is always a label")
    }

    /// The field in which witnesses for this gadget are computed when the
    /// caller supplies values from `ring`.
    fn witness_ring(&self, ring: Ring) -> Result<Ring> {
        let target = ring.fraction_field();
        if self.system.ring().embeds_into(target) {
            Ok(target)
        } else {
            Err(Error::RingMismatch(self.system.ring(), ring))
        }
    }

    /// 𝓤(ξ): the 3×|𝓗| matrix whose columns are the labels evaluated at ξ.
    pub fn u_matrix(&self, point: &Assignment) -> Result<DenseMatrix> {
        let ring = point
            .ring()
            .map_or(Ok(self.system.ring().fraction_field()), |r| self.witness_ring(r))?;
        let point = point.embed(ring)?;
        let values = self
            .sigma
            .elements()
            .iter()
            .map(|p| match p.constant_value() {
                Some(c) => c.embed(ring),
                None => p.evaluate(point.values()),
            })
            .collect::<Result<Vec<_>>>()?;
        DenseMatrix::from_fn(ring, 3, self.labels.len(), |k, j| {
            values[self.labels[j].0[k]].clone()
        })
    }

    /// The completion 𝓦(ξ) for a solution ξ, checked against every
    /// non-star entry of 𝓑. Integer points are read over ℚ.
    pub fn completion_witness(&self, point: &Assignment) -> Result<CompletionWitness> {
        let ring = point
            .ring()
            .map_or(Ok(self.system.ring().fraction_field()), |r| self.witness_ring(r))?;
        let point = point.embed(ring)?;
        self.system.check_solution(&point)?;
        let factor = self.u_matrix(&point)?;
        let completion = gram(&factor, &factor)?;
        self.matrix.check_completion(&completion)?;
        Ok(CompletionWitness {
            assignment: point,
            factor,
            completion,
        })
    }

    /// Checks that `pᵀ l` completes 𝓑; reports the first mismatch.
    pub fn check_factors(&self, p: &DenseMatrix, l: &DenseMatrix) -> Result<()> {
        let h = self.labels.len();
        for m in [p, l] {
            if m.rows() != 3 || m.cols() != h {
                return Err(Error::Dimension(format!(
                    "factor is {}x{}, expected 3x{h}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if p.ring() != l.ring() {
            return Err(Error::RingMismatch(p.ring(), l.ring()));
        }
        let ring = p.ring();
        let mismatch = (0..h)
            .into_par_iter()
            .find_map_first(|u| {
                (0..h).find_map(|v| {
                    let expected = self.matrix.get(u, v)?;
                    let found = (0..3).fold(Scalar::zero(ring), |acc, k| {
                        &acc + &(p.get(k, u) * l.get(k, v))
                    });
                    match expected.embed(ring) {
                        Ok(e) if e == found => None,
                        Ok(e) => Some(Error::CompletionMismatch {
                            row: u,
                            col: v,
                            expected: e.to_string(),
                            found: found.to_string(),
                        }),
                        Err(err) => Some(err),
                    }
                })
            });
        match mismatch {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Recovers a solution from factors with `pᵀ l` completing 𝓑.
    ///
    /// With C the columns of `l` at (1,0,0), (0,1,0), (0,0,1), the value
    /// y_i is the third coordinate of column (1, 0, x_i) of C⁻¹ l. The
    /// result is checked against every polynomial of F before returning.
    pub fn extract_solution(&self, p: &DenseMatrix, l: &DenseMatrix) -> Result<Assignment> {
        if !l.ring().is_field() {
            return Err(Error::NoDivision(l.ring()));
        }
        self.check_factors(p, l)?;
        let c = l.select_columns(&self.e_positions())?;
        let c_inv = c.solve_3x3()?;
        let ring = l.ring();
        let y: Vec<Scalar> = (0..self.system.num_vars())
            .map(|i| {
                let col = self.variable_position(i);
                (0..3).fold(Scalar::zero(ring), |acc, k| {
                    &acc + &(c_inv.get(2, k) * l.get(k, col))
                })
            })
            .collect();
        let y = Assignment::new(y)?;
        self.system.check_solution(&y).map_err(|e| {
            Error::Extraction(format!("recovered point fails the system ({e})"))
        })?;
        Ok(y)
    }
}

/// `aᵀ b` for two 3×h matrices.
fn gram(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let h = a.cols();
    let ring = a.ring();
    let rows: Vec<Vec<Scalar>> = (0..h)
        .into_par_iter()
        .map(|u| {
            (0..h)
                .map(|v| {
                    (0..a.rows()).fold(Scalar::zero(ring), |acc, k| {
                        &acc + &(a.get(k, u) * b.get(k, v))
                    })
                })
                .collect()
        })
        .collect();
    DenseMatrix::new(ring, h, h, rows.into_iter().flatten().collect())
}
