use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

/// Dense exponent vector of a monomial, ordered graded-lexicographically:
/// total degree first, then the exponent of `x1`, then `x2`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn constant(num_vars: usize) -> Self {
        Exponents(vec![0; num_vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variables with multiplicity, in increasing index order.
    pub fn variables(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `coefficient · x^exponents` with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coefficient: Scalar,
    pub exponents: Exponents,
}

/// A polynomial in canonical form: terms sorted in descending graded-lex
/// order, one term per exponent vector, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    num_vars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(ring: Ring, num_vars: usize) -> Self {
        Polynomial {
            ring,
            num_vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Scalar, num_vars: usize) -> Self {
        Polynomial::from_terms(c.ring(), num_vars, [(c, Exponents::constant(num_vars))])
    }

    pub fn one(ring: Ring, num_vars: usize) -> Self {
        Polynomial::constant(Scalar::one(ring), num_vars)
    }

    /// The variable `x_{index+1}`.
    pub fn var(ring: Ring, num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Polynomial::from_terms(ring, num_vars, [(Scalar::one(ring), Exponents(e))])
    }

    /// Collects like terms and sorts; panics if a coefficient is in another ring.
    pub fn from_terms(
        ring: Ring,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Scalar, Exponents)>,
    ) -> Self {
        let mut acc: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(c.ring(), ring, "coefficient ring");
            assert_eq!(e.0.len(), num_vars, "exponent length");
            match acc.get_mut(&e) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coefficient)| Monomial {
                coefficient,
                exponents,
            })
            .collect();
        Polynomial {
            ring,
            num_vars,
            terms,
        }
    }

    pub fn from_monomial(m: Monomial, ring: Ring, num_vars: usize) -> Self {
        Polynomial::from_terms(ring, num_vars, [(m.coefficient, m.exponents)])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exponents.is_constant())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero(self.ring)),
            [t] if t.exponents.is_constant() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.degree()).max().unwrap_or(0)
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => b.exponents.cmp(&a.exponents),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let t = &other.terms[j];
                    let c = if negate { -&t.coefficient } else { t.coefficient.clone() };
                    out.push(Monomial {
                        coefficient: c,
                        exponents: t.exponents.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let a = &self.terms[i].coefficient;
                    let b = &other.terms[j].coefficient;
                    let c = if negate { a - b } else { a + b };
                    if !c.is_zero() {
                        out.push(Monomial {
                            coefficient: c,
                            exponents: self.terms[i].exponents.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring,
            num_vars: self.num_vars,
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                products.push((&a.coefficient * &b.coefficient, a.exponents.mul(&b.exponents)));
            }
        }
        Ok(Polynomial::from_terms(self.ring, self.num_vars, products))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::from_terms(
            self.ring,
            self.num_vars,
            self.terms
                .iter()
                .map(|t| (&t.coefficient * c, t.exponents.clone())),
        )
    }

    /// Re-reads the coefficients in `ring` (e.g. integer polynomials mod p).
    pub fn embed(&self, ring: Ring) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.coefficient.embed(ring)?, t.exponents.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(ring, self.num_vars, terms))
    }

    /// Exact value at `point`; integer coefficients are promoted to the
    /// ring of the point when needed.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "{} values for {} variables",
                point.len(),
                self.num_vars
            )));
        }
        let ring = match point.first() {
            Some(v) => v.ring(),
            None => self.ring,
        };
        if let Some(bad) = point.iter().find(|v| v.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        if ring != self.ring && !self.ring.embeds_into(ring) {
            return Err(Error::RingMismatch(self.ring, ring));
        }
        let mut acc = Scalar::zero(ring);
        for t in &self.terms {
            let mut v = t.coefficient.embed(ring)?;
            for (x, &e) in point.iter().zip(t.exponents.as_slice()) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Partial sums `p1, p1+p2, …, f` following the canonical term order.
    pub fn prefix_sums(&self) -> Vec<Polynomial> {
        (1..=self.terms.len())
            .map(|k| Polynomial {
                ring: self.ring,
                num_vars: self.num_vars,
                terms: self.terms[..k].to_vec(),
            })
            .collect()
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then(self.num_vars.cmp(&other.num_vars))
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.terms.iter().zip(&other.terms) {
                    let o = a
                        .exponents
                        .cmp(&b.exponents)
                        .then_with(|| a.coefficient.canonical_cmp(&b.coefficient));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                self.terms.len().cmp(&other.terms.len())
            })
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coefficient.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = if negative { -&t.coefficient } else { t.coefficient.clone() };
            let vars: Vec<String> = t
                .exponents
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| match e {
                    1 => format!("x{}", i + 1),
                    _ => format!("x{}^{}", i + 1, e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial {
                    coefficient: -&t.coefficient,
                    exponents: t.exponents.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(text: &str, n: usize, ring: Ring) -> Polynomial {
        parse_polynomial(text, n, ring).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let f = p("x2 + x1 + x1*x2 + 1 + x1^2", 2, Ring::Integers);
        assert_eq!(f.to_string(), "x1^2 + x1*x2 + x1 + x2 + 1");
    }

    #[test]
    fn arithmetic() {
        let r = Ring::Integers;
        let x = Polynomial::var(r, 1, 0);
        let sq = &x * &x;
        assert_eq!((&sq - &x).to_string(), "x1^2 - x1");
        assert!((&(&sq - &x) - &(&sq - &x)).is_zero());
        assert_eq!((-&sq).to_string(), "-x1^2");
        let gf = Ring::gf(11).unwrap();
        assert_eq!(p("x1 - 1", 1, Ring::Integers).embed(gf).unwrap().to_string(), "x1 + 10");
    }

    #[test]
    fn evaluation() {
        let r = Ring::Integers;
        let f = p("x1^2 - x1", 1, r);
        assert!(f.evaluate(&[Scalar::one(r)]).unwrap().is_zero());
        let gf = Ring::gf(11).unwrap();
        let g = p("x1^2 - x1 - 1", 1, gf);
        assert!(g.evaluate(&[Scalar::from_i64(gf, 4)]).unwrap().is_zero());
        assert_eq!(g.evaluate(&[Scalar::from_i64(gf, 5)]).unwrap(), Scalar::from_i64(gf, 8));
        // integer coefficients are read over the point's ring
        let half = Scalar::rational(1, 2).unwrap();
        assert_eq!(f.evaluate(&[half]).unwrap(), Scalar::rational(-1, 4).unwrap());
        assert!(g.evaluate(&[Scalar::one(Ring::Rationals)]).is_err());
        assert!(g.evaluate(&[]).is_err());
    }

    #[test]
    fn prefix_sums() {
        let r = Ring::Integers;
        let f = p("x1^2 - x1", 1, r);
        let sums: Vec<String> = f.prefix_sums().iter().map(|s| s.to_string()).collect();
        assert_eq!(sums, ["x1^2", "x1^2 - x1"]);
        assert!(Polynomial::zero(r, 1).prefix_sums().is_empty());
        let g = p("3*x1*x2 + x1 + 1", 2, r);
        let sums: Vec<String> = g.prefix_sums().iter().map(|s| s.to_string()).collect();
        assert_eq!(sums, ["3*x1*x2", "3*x1*x2 + x1", "3*x1*x2 + x1 + 1"]);
    }

    #[test]
    fn constants() {
        let r = Ring::Rationals;
        assert_eq!(Polynomial::zero(r, 2).constant_value(), Some(Scalar::zero(r)));
        assert_eq!(p("5", 2, r).constant_value(), Some(Scalar::from_i64(r, 5)));
        assert_eq!(p("x1 + 5", 2, r).constant_value(), None);
    }
}
