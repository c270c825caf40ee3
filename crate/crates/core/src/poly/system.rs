use super::parse::parse_polynomial;
use super::polynomial::Polynomial;
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

/// A point `(ξ1, …, ξn)` with coordinates in one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<Scalar>);

impl Assignment {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        if let Some(first) = values.first() {
            if let Some(bad) = values.iter().find(|v| v.ring() != first.ring()) {
                return Err(Error::RingMismatch(first.ring(), bad.ring()));
            }
        }
        Ok(Assignment(values))
    }

    pub fn from_i64(ring: Ring, values: &[i64]) -> Self {
        Assignment(values.iter().map(|&v| Scalar::from_i64(ring, v)).collect())
    }

    /// Comma- or whitespace-separated values, e.g. `"0, 1/2"`.
    pub fn parse(ring: Ring, text: &str) -> Result<Self> {
        let values = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| Scalar::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Assignment::new(values)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ring(&self) -> Option<Ring> {
        self.0.first().map(Scalar::ring)
    }

    pub fn embed(&self, ring: Ring) -> Result<Self> {
        Ok(Assignment(
            self.0.iter().map(|v| v.embed(ring)).collect::<Result<_>>()?,
        ))
    }
}

/// A finite family `F = {f1, …, ft}` of polynomials over one ring.
///
/// Zero polynomials are dropped and nonzero constants rejected, so every
/// member is nonconstant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySystem {
    ring: Ring,
    num_vars: usize,
    polynomials: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(ring: Ring, num_vars: usize, polynomials: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(polynomials.len());
        for f in polynomials {
            if f.ring() != ring {
                return Err(Error::RingMismatch(ring, f.ring()));
            }
            if f.num_vars() != num_vars {
                return Err(Error::Dimension(format!(
                    "polynomial in {} variables inside a system in {num_vars}",
                    f.num_vars()
                )));
            }
            if f.is_zero() {
                continue;
            }
            if f.is_constant() {
                return Err(Error::ConstantPolynomial(f.to_string()));
            }
            kept.push(f);
        }
        Ok(PolySystem {
            ring,
            num_vars,
            polynomials: kept,
        })
    }

    pub fn parse(ring: Ring, num_vars: usize, texts: &[&str]) -> Result<Self> {
        let polys = texts
            .iter()
            .map(|t| parse_polynomial(t, num_vars, ring))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(ring, num_vars, polys)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polynomials
    }

    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    /// The same system read over another ring.
    pub fn embed(&self, ring: Ring) -> Result<Self> {
        let polys = self
            .polynomials
            .iter()
            .map(|f| f.embed(ring))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(ring, self.num_vars, polys)
    }

    /// Ok when every member vanishes at `point`; otherwise names the first
    /// polynomial that does not.
    pub fn check_solution(&self, point: &Assignment) -> Result<()> {
        if point.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "{} values for {} variables",
                point.len(),
                self.num_vars
            )));
        }
        for f in &self.polynomials {
            let v = f.evaluate(point.values())?;
            if !v.is_zero() {
                return Err(Error::NotASolution {
                    polynomial: f.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }
}
