//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Every scalar in the engine lives in one of these fields; there is no
//! floating point anywhere. Prime moduli are capped below 2^31 so that all
//! intermediate products fit into 64-bit arithmetic.

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;
use serde::{Deserialize, Serialize};

/// Largest admissible prime modulus (exclusive bound 2^31).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    PrimeTooLarge(u64),
    Mismatch,
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::PrimeTooLarge(p) => write!(f, "prime {p} is not below 2^31"),
            FieldError::Mismatch => write!(f, "scalars belong to different fields"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for FieldError {}

/// The base field `k`: exact rationals or a prime field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    /// Prime field of characteristic `p`, with `p` prime and `p < 2^31`.
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Constructs `GF(p)`, checking primality and the 2^31 cap.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Residue(1),
        }
    }

    /// The canonical image of an integer in this field.
    pub fn from_integer(&self, value: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(value))),
            FieldSpec::Prime(p) => {
                let p = *p as i128;
                let r = ((value as i128 % p) + p) % p;
                Scalar::Residue(r as u64)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Rational(_)) | (FieldSpec::Prime(_), Scalar::Residue(_))
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Rationals are kept fully reduced with positive
/// denominator (maintained by `BigRational`); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self, _field: &FieldSpec) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, other: &Scalar, field: &FieldSpec) -> Result<Scalar, FieldError> {
        match (self, other, field) {
            (Scalar::Rational(a), Scalar::Rational(b), FieldSpec::Rationals) => {
                Ok(Scalar::Rational(a + b))
            }
            (Scalar::Residue(a), Scalar::Residue(b), FieldSpec::Prime(p)) => {
                Ok(Scalar::Residue((a + b) % p))
            }
            _ => Err(FieldError::Mismatch),
        }
    }

    pub fn sub(&self, other: &Scalar, field: &FieldSpec) -> Result<Scalar, FieldError> {
        match (self, other, field) {
            (Scalar::Rational(a), Scalar::Rational(b), FieldSpec::Rationals) => {
                Ok(Scalar::Rational(a - b))
            }
            (Scalar::Residue(a), Scalar::Residue(b), FieldSpec::Prime(p)) => {
                Ok(Scalar::Residue((a + p - b) % p))
            }
            _ => Err(FieldError::Mismatch),
        }
    }

    pub fn mul(&self, other: &Scalar, field: &FieldSpec) -> Result<Scalar, FieldError> {
        match (self, other, field) {
            (Scalar::Rational(a), Scalar::Rational(b), FieldSpec::Rationals) => {
                Ok(Scalar::Rational(a * b))
            }
            // p < 2^31, so the product fits in u64.
            (Scalar::Residue(a), Scalar::Residue(b), FieldSpec::Prime(p)) => {
                Ok(Scalar::Residue(a * b % p))
            }
            _ => Err(FieldError::Mismatch),
        }
    }

    pub fn neg(&self, field: &FieldSpec) -> Scalar {
        match (self, field) {
            (Scalar::Rational(a), _) => Scalar::Rational(-a),
            (Scalar::Residue(a), FieldSpec::Prime(p)) => Scalar::Residue(if *a == 0 { 0 } else { p - a }),
            (Scalar::Residue(a), FieldSpec::Rationals) => Scalar::Residue(*a),
        }
    }

    pub fn inv(&self, field: &FieldSpec) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match (self, field) {
            (Scalar::Rational(a), FieldSpec::Rationals) => Ok(Scalar::Rational(a.recip())),
            (Scalar::Residue(a), FieldSpec::Prime(p)) => Ok(Scalar::Residue(mod_inverse(*a, *p))),
            _ => Err(FieldError::Mismatch),
        }
    }

    pub fn div(&self, other: &Scalar, field: &FieldSpec) -> Result<Scalar, FieldError> {
        let inv = other.inv(field)?;
        self.mul(&inv, field)
    }
}

/// Inverse of `a` modulo the prime `p` via the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of a non-unit");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok()); // 2^31 - 1 is prime
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(FieldError::NotPrime(91)));
        assert_eq!(
            FieldSpec::prime(1 << 31),
            Err(FieldError::PrimeTooLarge(1 << 31))
        );
    }

    #[test]
    fn residues_are_canonical() {
        let gf7 = FieldSpec::prime(7).unwrap();
        assert_eq!(gf7.from_integer(-1), Scalar::Residue(6));
        assert_eq!(gf7.from_integer(14), Scalar::Residue(0));
        let a = gf7.from_integer(5);
        let b = gf7.from_integer(4);
        assert_eq!(a.mul(&b, &gf7).unwrap(), Scalar::Residue(6));
    }

    #[test]
    fn inverses() {
        let gf101 = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let s = Scalar::Residue(v);
            let inv = s.inv(&gf101).unwrap();
            assert_eq!(s.mul(&inv, &gf101).unwrap(), Scalar::Residue(1));
        }
        let qq = FieldSpec::Rationals;
        let half = qq.from_integer(2).inv(&qq).unwrap();
        assert_eq!(half.mul(&qq.from_integer(2), &qq).unwrap(), qq.one());
        assert_eq!(qq.zero().inv(&qq), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let gf7 = FieldSpec::prime(7).unwrap();
        let a = gf7.one();
        let b = FieldSpec::Rationals.one();
        assert_eq!(a.add(&b, &gf7), Err(FieldError::Mismatch));
    }
}
