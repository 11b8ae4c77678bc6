//! Operator text grammar:
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! coeff  := '(' [sign] rational ')' | rational
//! factor := ('I' | 'X' | 'Y' | 'Z') qubit      (1-based qubit index)
//! ```
//!
//! A bare coefficient denotes a multiple of the identity.

use super::operator::Operator;
use super::scalar::{Rational, Scalar};
use super::string::{Axis, PauliString};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            if self.src.get(self.pos) == Some(&b'+') {
                self.pos += 1;
            }
            false
        };
        self.skip_ws();
        let num = self.digits().ok_or_else(|| self.err("expected number"))?;
        let mut text = num.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            text = format!("{num}/{den}");
        }
        let r: Rational = text.parse().map_err(|_| self.err("invalid rational"))?;
        Ok(if neg { r.neg() } else { r })
    }

    fn factor(&mut self, n: usize) -> Result<Option<(usize, Axis)>> {
        let c = self.peek().ok_or_else(|| self.err("expected Pauli factor"))?;
        let axis = Axis::from_letter(c as char)
            .ok_or_else(|| self.err(format!("expected Pauli factor, found `{}`", c as char)))?;
        self.pos += 1;
        let q = self
            .digits()
            .ok_or_else(|| self.err("expected qubit index after axis letter"))?;
        let q: usize = q.parse().map_err(|_| self.err("qubit index too large"))?;
        if q == 0 || q > n {
            return Err(self.err(format!("qubit index {q} outside 1..={n}")));
        }
        Ok((axis != Axis::I).then_some((q - 1, axis)))
    }

    fn factors(&mut self, n: usize) -> Result<PauliString> {
        let mut fs = Vec::new();
        loop {
            if let Some(f) = self.factor(n)? {
                if fs.iter().any(|(q, _)| *q == f.0) {
                    return Err(self.err(format!("qubit {} repeated in one term", f.0 + 1)));
                }
                fs.push(f);
            }
            if !self.eat(b'*') {
                break;
            }
        }
        PauliString::from_factors(n, &fs)
    }

    fn term(&mut self, n: usize) -> Result<(PauliString, Rational)> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let c = self.rational()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.after_coeff(n, c)
            }
            Some(d) if d.is_ascii_digit() => {
                let c = self.rational()?;
                self.after_coeff(n, c)
            }
            Some(_) => Ok((self.factors(n)?, Rational::one())),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn after_coeff(&mut self, n: usize, c: Rational) -> Result<(PauliString, Rational)> {
        if self.eat(b'*') {
            Ok((self.factors(n)?, c))
        } else {
            Ok((PauliString::identity(n)?, c))
        }
    }
}

/// Parse an operator on `n` qubits in the canonical text grammar.
pub fn parse_operator(text: &str, n: usize) -> Result<Operator<Rational>> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = if cur.eat(b'-') {
        -1
    } else {
        cur.eat(b'+');
        1
    };
    loop {
        let (p, c) = cur.term(n)?;
        terms.push((p, if sign < 0 { c.neg() } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            Some(c) => return Err(cur.err(format!("unexpected `{}`", c as char))),
        }
    }
    Operator::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_form() {
        let a = parse_operator("(3/2)*Z1*Z2 + (-1)*X3", 3).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(parse_operator(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn bare_factors_and_signs() {
        let a = parse_operator("Z1*Z2 - X1 + 2*Y2 - 1/3", 2).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.has_identity());
        let b = parse_operator("-Z1 + Z1", 1).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn malformed_inputs_rejected() {
        for bad in ["Z1**", "Z0", "Z4", "Q1", "(1/2*Z1", "Z1 Z2", "", "Z1*Z1", "1/0*Z1"] {
            assert!(parse_operator(bad, 3).is_err(), "accepted `{bad}`");
        }
    }
}
