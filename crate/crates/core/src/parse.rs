//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := ('-')? factor ('*' factor)*
//! factor := atom ('^' NAT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//! `NAT` is a decimal non-negative integer, `IDENT` matches
//! `[a-zA-Z][a-zA-Z0-9_]*`. Parsing, serializing, and re-parsing a canonical
//! polynomial is a fixed point.

use std::fmt;

use crate::field::FieldSpec;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: FieldSpec,
}

/// Parses `text` into a canonical polynomial over `field` in the named
/// variables.
pub fn parse_poly(text: &str, vars: &[String], field: FieldSpec) -> Result<Polynomial, ParseError> {
    let mut p = Parser { input: text.as_bytes(), pos: 0, vars, field };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ParseError {
        ParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t).map_err(|e| self.error(&e.to_string()))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t).map_err(|e| self.error(&e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f).map_err(|e| self.error(&e.to_string()))?;
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp_offset = self.pos;
            let exp = self.natural().map_err(|mut e| {
                e.offset = exp_offset;
                e.message = "exponent not a non-negative integer literal".to_string();
                e
            })?;
            let mut acc = Polynomial::one(self.field, self.vars.len());
            for _ in 0..exp {
                acc = acc.mul(&base).map_err(|e| self.error(&e.to_string()))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                Ok(Polynomial::constant(
                    self.field.from_integer(n),
                    self.field,
                    self.vars.len(),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::variable(i, self.field, self.vars.len())),
                    None => Err(ParseError {
                        offset: start,
                        message: format!("unknown identifier '{name}'"),
                    }),
                }
            }
            _ => Err(self.error("expected integer, identifier, or '('")),
        }
    }

    fn natural(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a decimal integer"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| ParseError { offset: start, message: "integer literal too large".into() })
    }
}
