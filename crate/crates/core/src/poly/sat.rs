use super::polynomial::Polynomial;
use super::system::PolySystem;
use crate::algebra::Ring;
use crate::error::{Error, Result};

/// Positive clauses of at most three variables plus disequalities
/// `x_u ≠ x_v`. Variables are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<usize>>,
    pub disequalities: Vec<(usize, usize)>,
}

impl CnfFormula {
    pub fn new(
        num_vars: usize,
        clauses: Vec<Vec<usize>>,
        disequalities: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let in_range = |v: usize| (1..=num_vars).contains(&v);
        for c in &clauses {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::Format(format!(
                    "clause with {} literals (expected 1 to 3)",
                    c.len()
                )));
            }
            if let Some(&v) = c.iter().find(|&&v| !in_range(v)) {
                return Err(Error::VariableOutOfRange { index: v, num_vars });
            }
        }
        for &(u, v) in &disequalities {
            if !in_range(u) || !in_range(v) {
                return Err(Error::VariableOutOfRange {
                    index: if in_range(u) { v } else { u },
                    num_vars,
                });
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            disequalities,
        })
    }

    /// Simplified DIMACS: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, clauses as positive literals terminated by `0`, and
    /// `neq <u> <v>` lines for disequalities.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut num_vars = None;
        let mut clauses = Vec::new();
        let mut neq = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |msg: &str| Error::Format(format!("line {}: {msg}", lineno + 1));
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if fields.len() != 4 || fields[1] != "cnf" || num_vars.is_some() {
                        return Err(bad("malformed header"));
                    }
                    num_vars = Some(fields[2].parse::<usize>().map_err(|_| bad("bad count"))?);
                }
                "neq" => {
                    if fields.len() != 3 {
                        return Err(bad("neq takes two variables"));
                    }
                    let u = fields[1].parse().map_err(|_| bad("bad variable"))?;
                    let v = fields[2].parse().map_err(|_| bad("bad variable"))?;
                    neq.push((u, v));
                }
                _ => {
                    if num_vars.is_none() {
                        return Err(bad("clause before header"));
                    }
                    for f in fields {
                        let lit: i64 = f.parse().map_err(|_| bad("bad literal"))?;
                        if lit < 0 {
                            return Err(bad("negated literals are not supported"));
                        }
                        if lit == 0 {
                            if current.is_empty() {
                                return Err(bad("empty clause"));
                            }
                            clauses.push(std::mem::take(&mut current));
                        } else {
                            current.push(lit as usize);
                        }
                    }
                }
            }
        }
        if !current.is_empty() {
            return Err(Error::Format("unterminated clause".into()));
        }
        let num_vars = num_vars.ok_or_else(|| Error::Format("missing header".into()))?;
        CnfFormula::new(num_vars, clauses, neq)
    }

    /// Direct truth-table semantics; `values[i]` is variable `i + 1`.
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&v| values[v - 1]))
            && self
                .disequalities
                .iter()
                .all(|&(u, v)| values[u - 1] != values[v - 1])
    }
}

/// Integer polynomial system solvable over an integral domain exactly when
/// the formula is satisfiable.
///
/// Emits `y_i^2 - y_i` per variable, then per clause on `(i, j, k)`
/// `y_i + y_j + y_k - y_i y_j - y_i y_k - y_j y_k + y_i y_j y_k - 1`
/// (short clauses repeat their last variable), then `y_u + y_v - 1` per
/// disequality.
pub fn encode_3sat(formula: &CnfFormula) -> PolySystem {
    let ring = Ring::Integers;
    let n = formula.num_vars;
    let y = |v: usize| Polynomial::var(ring, n, v - 1);
    let one = Polynomial::one(ring, n);
    let mut polys = Vec::new();
    for v in 1..=n {
        polys.push(&(&y(v) * &y(v)) - &y(v));
    }
    for clause in &formula.clauses {
        let mut vars = clause.clone();
        while vars.len() < 3 {
            vars.push(*vars.last().expect("nonempty clause"));
        }
        let (a, b, c) = (y(vars[0]), y(vars[1]), y(vars[2]));
        let linear = &(&a + &b) + &c;
        let pairs = &(&(&a * &b) + &(&a * &c)) + &(&b * &c);
        let triple = &(&a * &b) * &c;
        polys.push(&(&(&linear - &pairs) + &triple) - &one);
    }
    for &(u, v) in &formula.disequalities {
        polys.push(&(&y(u) + &y(v)) - &one);
    }
    PolySystem::new(ring, n, polys).expect("encoded polynomials are nonconstant")
}
