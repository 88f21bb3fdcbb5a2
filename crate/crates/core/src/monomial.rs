//! Monomials of the polynomial ring and their duals in the inverse system.
//!
//! Ordering is graded lexicographic throughout: first by total degree, then
//! lexicographically on the exponent vector. This is the canonical term order
//! used for serialization and for all echelon-form bookkeeping.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A monomial `x1^a1 * ... * xn^an` with non-negative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exponents: vec![0; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.exponents.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Renders the monomial over the given variable names; `1` for the empty
    /// monomial. Exponent 1 is printed bare, larger exponents with `^`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (v, &e) in vars.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: total degree first, then lex on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// A dual monomial `x1^a1 * ... * xn^an` with every exponent <= -1; these
/// span the injective hull `E(k)` in the Macaulay inverse-system model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualMonomial {
    pub exponents: Vec<i64>,
}

impl DualMonomial {
    /// Constructs a dual monomial; every exponent must be <= -1.
    pub fn new(exponents: Vec<i64>) -> Self {
        debug_assert!(exponents.iter().all(|&e| e <= -1));
        DualMonomial { exponents }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    /// Contraction by an ordinary monomial: shift exponents up, dying if any
    /// component leaves the region `<= -1`.
    pub fn contract_by(&self, m: &Monomial) -> Option<DualMonomial> {
        debug_assert_eq!(self.nvars(), m.nvars());
        let mut exps = Vec::with_capacity(self.exponents.len());
        for (&a, &b) in self.exponents.iter().zip(&m.exponents) {
            let c = a + b as i64;
            if c > -1 {
                return None;
            }
            exps.push(c);
        }
        Some(DualMonomial { exponents: exps })
    }

    pub fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (v, &e) in vars.iter().zip(&self.exponents) {
            parts.push(format!("{v}^{e}"));
        }
        parts.join("*")
    }
}

impl PartialOrd for DualMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lex on the negated exponents.
impl Ord for DualMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let neg = |m: &DualMonomial| m.exponents.iter().map(|&e| -e).collect::<Vec<_>>();
        (-self.degree())
            .cmp(&(-other.degree()))
            .then_with(|| neg(self).cmp(&neg(other)))
    }
}

/// Enumerates all monomials of the given total degree in `nvars` variables,
/// in ascending lexicographic order. Empty for negative degree.
pub fn monomials_of_degree(nvars: usize, degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, degree as u32);
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// Enumerates all dual monomials of total degree `degree` (every exponent
/// <= -1), in the canonical order. Empty unless `degree <= -nvars`.
pub fn dual_monomials_of_degree(nvars: usize, degree: i64) -> Vec<DualMonomial> {
    if nvars == 0 || degree > -(nvars as i64) {
        return Vec::new();
    }
    // Dual monomials of degree d correspond to ordinary monomials of degree
    // -d - nvars via a -> -a - 1 componentwise.
    let mut duals: Vec<DualMonomial> = monomials_of_degree(nvars, -degree - nvars as i64)
        .into_iter()
        .map(|m| DualMonomial::new(m.exponents.iter().map(|&e| -(e as i64) - 1).collect()))
        .collect();
    duals.sort();
    duals
}

/// Number of dual monomials of internal degree `j` in a copy of `E` twisted
/// by `twist`: `binom(-(j - twist) - 1, nvars - 1)` when `j - twist <= -nvars`,
/// else 0.
pub fn e_dim(nvars: usize, j: i64, twist: i64) -> u64 {
    let raw = j - twist;
    if nvars == 0 || raw > -(nvars as i64) {
        return 0;
    }
    binomial((-raw - 1) as u64, (nvars - 1) as u64)
}

/// Number of ordinary monomials of degree `d` in `nvars` variables.
pub fn poly_dim(nvars: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient exceeds u64; degree window too large")
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&vars))
    }
}
