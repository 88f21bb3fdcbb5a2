//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by graded-lex order, with no zero
//! coefficients; canonical serialization lists terms in descending order.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Signed;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    Field(FieldError),
    /// Operands disagree on field or variable count.
    RingMismatch,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Field(e) => write!(f, "{e}"),
            PolyError::RingMismatch => write!(f, "operands live in different polynomial rings"),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<FieldError> for PolyError {
    fn from(e: FieldError) -> Self {
        PolyError::Field(e)
    }
}

/// Result of classifying a polynomial by homogeneity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial (homogeneous of every degree).
    Zero,
    /// Homogeneous and nonzero, of the given total degree.
    Degree(i64),
    /// Not homogeneous.
    Inhomogeneous,
}

/// A sparse polynomial in `k[x1..xn]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub field: FieldSpec,
    pub nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field.one(), field, nvars)
    }

    pub fn constant(c: Scalar, field: FieldSpec, nvars: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// Single variable `x_i`.
    pub fn variable(i: usize, field: FieldSpec, nvars: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        Self::term(field.one(), Monomial::new(exps), field, nvars)
    }

    pub fn term(c: Scalar, m: Monomial, field: FieldSpec, nvars: usize) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(
        field: FieldSpec,
        nvars: usize,
        terms: I,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars || !field.contains(&c) {
                return Err(PolyError::RingMismatch);
            }
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<(), PolyError> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(existing) => {
                let sum = existing.add(&c, &self.field)?;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// True iff the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && !self.constant_term().is_zero()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg(&self.field));
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2, &self.field)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial, PolyError> {
        if !self.field.contains(c) {
            return Err(PolyError::RingMismatch);
        }
        let mut out = Self::zero(self.field, self.nvars);
        for (m, coeff) in &self.terms {
            let prod = coeff.mul(c, &self.field)?;
            if !prod.is_zero() {
                out.terms.insert(m.clone(), prod);
            }
        }
        Ok(out)
    }

    /// Classifies the polynomial as zero, homogeneous of a degree, or
    /// inhomogeneous.
    pub fn homogeneity(&self) -> Homogeneity {
        let mut degree = None;
        for m in self.terms.keys() {
            match degree {
                None => degree = Some(m.total_degree()),
                Some(d) if d == m.total_degree() => {}
                Some(_) => return Homogeneity::Inhomogeneous,
            }
        }
        match degree {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Degree(d),
        }
    }

    /// The common total degree, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.homogeneity() {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    /// Canonical form: graded-lex descending terms, explicit `*` between the
    /// coefficient and the monomial, `^` only for exponents > 1.
    pub fn render(&self, vars: &[String]) -> String {
        debug_assert_eq!(vars.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign_negative, magnitude) = match c {
                Scalar::Rational(r) => {
                    if r.is_negative() {
                        (true, Scalar::Rational(-r))
                    } else {
                        (false, c.clone())
                    }
                }
                Scalar::Residue(_) => (false, c.clone()),
            };
            if idx == 0 {
                if sign_negative {
                    out.push('-');
                }
            } else if sign_negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_one = magnitude.is_one(&self.field);
            if m.is_one() {
                out.push_str(&magnitude.to_string());
            } else if coeff_is_one {
                out.push_str(&m.render(vars));
            } else {
                out.push_str(&format!("{}*{}", magnitude, m.render(vars)));
            }
        }
        out
    }
}
