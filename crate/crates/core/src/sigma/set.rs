use std::collections::{BTreeSet, HashMap};

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::poly::{Monomial, PolySystem, Polynomial};

/// A deduplicated, canonically sorted set of polynomials closed under
/// negation.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    ring: Ring,
    num_vars: usize,
    elements: Vec<Polynomial>,
    index: HashMap<Polynomial, usize>,
}

impl PartialEq for SigmaSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl SigmaSet {
    fn from_set(ring: Ring, num_vars: usize, set: BTreeSet<Polynomial>) -> Self {
        let elements: Vec<Polynomial> = set.into_iter().collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        SigmaSet {
            ring,
            num_vars,
            elements,
            index,
        }
    }

    /// σ(F): the σ of every member together with 0, ±1 and ±x_i.
    pub fn for_system(system: &PolySystem) -> Self {
        let ring = system.ring();
        let n = system.num_vars();
        let mut set = BTreeSet::new();
        insert_signed(&mut set, Polynomial::one(ring, n));
        set.insert(Polynomial::zero(ring, n));
        for i in 0..n {
            insert_signed(&mut set, Polynomial::var(ring, n, i));
        }
        for f in system.polynomials() {
            for t in f.terms() {
                set.extend(monomial_closure(t, ring, n));
            }
            for s in f.prefix_sums() {
                insert_signed(&mut set, s);
            }
        }
        SigmaSet::from_set(ring, n, set)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Polynomial) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.elements.iter().all(|p| self.contains(&-p))
    }

    /// Checks that every element is reachable from the constants and ±x_i
    /// by repeatedly taking a sum or a product of two already reached
    /// elements whose result lies in the set. Reports the unreachable ones.
    pub fn verify_reachability(&self) -> Result<()> {
        let mut reached: Vec<bool> = self
            .elements
            .iter()
            .map(|p| p.is_constant() || is_signed_variable(p))
            .collect();
        loop {
            let known: Vec<usize> = (0..self.len()).filter(|&i| reached[i]).collect();
            let mut grew = false;
            for (a, &i) in known.iter().enumerate() {
                for &j in &known[a..] {
                    let (x, y) = (&self.elements[i], &self.elements[j]);
                    for candidate in [x + y, x * y] {
                        if let Some(k) = self.index_of(&candidate) {
                            if !reached[k] {
                                reached[k] = true;
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let missing: Vec<String> = (0..self.len())
            .filter(|&i| !reached[i])
            .map(|i| self.elements[i].to_string())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::Structure(format!(
                "elements not reachable by one sum or product: {}",
                missing.join(", ")
            )))
        }
    }
}

fn is_signed_variable(p: &Polynomial) -> bool {
    match p.terms() {
        [t] => {
            t.exponents.degree() == 1
                && (t.coefficient.is_one() || (-&t.coefficient).is_one())
        }
        _ => false,
    }
}

fn insert_signed(set: &mut BTreeSet<Polynomial>, p: Polynomial) {
    set.insert(-&p);
    set.insert(p);
}

fn monomial_closure(m: &Monomial, ring: Ring, n: usize) -> BTreeSet<Polynomial> {
    let mut set = BTreeSet::new();
    insert_signed(&mut set, Polynomial::one(ring, n));
    insert_signed(&mut set, Polynomial::constant(m.coefficient.clone(), n));
    let mut prefix = Polynomial::one(ring, n);
    for v in m.exponents.variables() {
        prefix = &prefix * &Polynomial::var(ring, n, v);
        insert_signed(&mut set, prefix.clone());
    }
    insert_signed(&mut set, Polynomial::from_monomial(m.clone(), ring, n));
    set
}

/// σ(p) = {±1, ±ξ, ±x_{i1}, ±x_{i1}x_{i2}, …, ±p} for `p = ξ x_{i1}⋯x_{ik}`.
pub fn sigma_monomial(m: &Monomial, ring: Ring, num_vars: usize) -> Result<SigmaSet> {
    if m.coefficient.is_zero() {
        return Err(Error::Hypothesis("σ of the zero monomial".into()));
    }
    Ok(SigmaSet::from_set(
        ring,
        num_vars,
        monomial_closure(m, ring, num_vars),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn texts(s: &SigmaSet) -> BTreeSet<String> {
        s.elements().iter().map(|p| p.to_string()).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn mono(text: &str, n: usize) -> Monomial {
        parse_polynomial(text, n, Ring::Integers).unwrap().terms()[0].clone()
    }

    #[test]
    fn monomial_sets() {
        let z = Ring::Integers;
        let s = sigma_monomial(&mono("3*x1*x2", 2), z, 2).unwrap();
        assert_eq!(
            texts(&s),
            set(&["1", "-1", "3", "-3", "x1", "-x1", "x1*x2", "-x1*x2", "3*x1*x2", "-3*x1*x2"])
        );
        let s = sigma_monomial(&mono("-x1", 1), z, 1).unwrap();
        assert_eq!(texts(&s), set(&["1", "-1", "x1", "-x1"]));
        let s = sigma_monomial(&mono("5", 1), z, 1).unwrap();
        assert_eq!(texts(&s), set(&["1", "-1", "5", "-5"]));
    }

    #[test]
    fn system_sets() {
        let z = Ring::Integers;
        let s = SigmaSet::for_system(&PolySystem::parse(z, 1, &["x1^2 - x1"]).unwrap());
        assert_eq!(
            texts(&s),
            set(&["0", "1", "-1", "x1", "-x1", "x1^2", "-x1^2", "x1^2 - x1", "-x1^2 + x1"])
        );
        let s = SigmaSet::for_system(&PolySystem::parse(z, 1, &["x1 - 2"]).unwrap());
        assert_eq!(
            texts(&s),
            set(&["0", "1", "-1", "2", "-2", "x1", "-x1", "x1 - 2", "-x1 + 2"])
        );
        let s = SigmaSet::for_system(&PolySystem::new(z, 1, vec![]).unwrap());
        assert_eq!(texts(&s), set(&["0", "1", "-1", "x1", "-x1"]));
    }

    #[test]
    fn closure_and_reachability() {
        let r = Ring::gf(11).unwrap();
        let sys = PolySystem::parse(r, 2, &["3*x1^2*x2 - x2 + 4", "x1*x2 - 1"]).unwrap();
        let s = SigmaSet::for_system(&sys);
        assert!(s.is_closed_under_negation());
        s.verify_reachability().unwrap();
    }
}
