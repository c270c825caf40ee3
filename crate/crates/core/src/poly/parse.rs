use num_bigint::BigInt;

use super::polynomial::{Exponents, Polynomial};
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

/// Parses the text form used in system files, e.g. `"3*x1*x2 - x1^2 + 1"`.
///
/// ```text
/// poly    := ['-'] term (('+' | '-') term)*
/// term    := coeff | coeff '*' powprod | powprod
/// coeff   := INT ['/' INT]
/// powprod := var ('*' var)*
/// var     := 'x' INT ['^' INT]
/// ```
///
/// Variables are numbered from 1. Whitespace is ignored between tokens.
pub fn parse_polynomial(text: &str, num_vars: usize, ring: Ring) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars,
        ring,
    };
    let mut terms = Vec::new();
    parser.skip_ws();
    let mut negative = parser.eat(b'-');
    loop {
        let (c, e) = parser.term()?;
        terms.push((if negative { -c } else { c }, e));
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(parser.error("expected '+' or '-'")),
        }
        parser.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, num_vars, terms))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn term(&mut self) -> Result<(Scalar, Exponents)> {
        self.skip_ws();
        let mut exps = vec![0u32; self.num_vars];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient()?;
                if !self.eat(b'*') {
                    return Ok((c, Exponents::new(exps)));
                }
                c
            }
            Some(b'x') => Scalar::one(self.ring),
            _ => return Err(self.error("expected a coefficient or a variable")),
        };
        loop {
            self.variable(&mut exps)?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, Exponents::new(exps)))
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let num: BigInt = self.digits()?.parse().expect("digits");
        let value = Scalar::from_bigint(self.ring, num.clone());
        if !self.eat(b'/') {
            return Ok(value);
        }
        let den: BigInt = self.digits()?.parse().expect("digits");
        let text = format!("{num}/{den}");
        Scalar::parse(self.ring, &text).map_err(|_| Error::ParseScalar {
            text: format!("{} (at position {start})", text),
            ring: self.ring,
        })
    }

    fn variable(&mut self, exps: &mut [u32]) -> Result<()> {
        self.skip_ws();
        if self.peek() != Some(b'x') {
            return Err(self.error("expected a variable"));
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected a variable index"));
        }
        let index: usize = self
            .digits()?
            .parse()
            .map_err(|_| self.error("variable index too large"))?;
        if index == 0 || index > self.num_vars {
            return Err(Error::VariableOutOfRange {
                index,
                num_vars: self.num_vars,
            });
        }
        let mut e = 1u32;
        if self.eat(b'^') {
            e = self
                .digits()?
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            if e == 0 {
                return Err(self.error("exponent must be positive"));
            }
        }
        exps[index - 1] += e;
        Ok(())
    }
}
