//! Executable verification suites.
//!
//! Each suite runs a batch of structural identities against one instance (a
//! factorization read from a file or generated deterministically from a
//! seed) and reports per-check outcomes. The duality-oracle suite never
//! consults the inverse-system code: its right-hand side is an independent
//! polynomial-side rank computation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{
    coincide_check, gamma_stab_max_with, periodic_complex_check, stable_equiv,
    CohomologyError, ViewOpts,
};
use crate::exec::Exec;
use crate::field::{FieldSpec, Scalar};
use crate::format::FormatError;
use crate::linalg::ScalarMatrix;
use crate::matrix::PolyMatrix;
use crate::mf::{MatrixFactorization, MfError};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub witness_degree: Option<i64>,
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: String) -> Self {
        CheckOutcome { name, pass: true, witness_degree: None, detail: None }
    }

    pub fn fail(name: String, witness_degree: Option<i64>, detail: String) -> Self {
        CheckOutcome { name, pass: false, witness_degree, detail: Some(detail) }
    }

    pub fn of(name: String, pass: bool, witness_degree: Option<i64>, detail: String) -> Self {
        CheckOutcome { name, pass, witness_degree, detail: Some(detail) }
    }
}

/// Structured outcome of one suite run. The overall verdict is pass exactly
/// when every per-check outcome passes. Wall time is carried for display but
/// excluded from serialization so that identical (suite, seed, window)
/// triples serialize byte-identically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub instance: String,
    pub window: (i64, i64),
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl VerifyReport {
    pub fn from_checks(
        suite: String,
        instance: String,
        window: (i64, i64),
        checks: Vec<CheckOutcome>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport { suite, instance, window, checks, pass, wall_time_ms: 0 }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} over [{}, {}]: {}",
            self.suite,
            self.instance,
            self.window.0,
            self.window.1,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name)?;
            if let Some(w) = c.witness_degree {
                write!(f, " (degree {w})")?;
            }
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    UnknownSuite(String),
    NonMonomialGenerator(usize),
    RecipeYieldsZero,
    EmptyRecipe,
    Io(String),
    Format(FormatError),
    Mf(MfError),
    Cohomology(CohomologyError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::UnknownSuite(s) => {
                write!(f, "unknown suite '{s}' (expected one of: {})", Suite::names().join(", "))
            }
            VerifyError::NonMonomialGenerator(i) => write!(f, "generator {i} is not a monomial"),
            VerifyError::RecipeYieldsZero => {
                write!(f, "recipe produced f = 0 even after reseeding")
            }
            VerifyError::EmptyRecipe => write!(f, "recipe generates nothing (arity 0)"),
            VerifyError::Io(e) => write!(f, "{e}"),
            VerifyError::Format(e) => write!(f, "{e}"),
            VerifyError::Mf(e) => write!(f, "{e}"),
            VerifyError::Cohomology(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<FormatError> for VerifyError {
    fn from(e: FormatError) -> Self {
        VerifyError::Format(e)
    }
}

impl From<MfError> for VerifyError {
    fn from(e: MfError) -> Self {
        VerifyError::Mf(e)
    }
}

impl From<CohomologyError> for VerifyError {
    fn from(e: CohomologyError) -> Self {
        VerifyError::Cohomology(e)
    }
}

/// The named property suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Validate,
    Minimality,
    Periodicity,
    Additivity,
    Triviality,
    Acyclicity,
    DualityOracle,
    SyzygyFormula,
    Coincide,
    RadicalNormalizer,
}

impl Suite {
    pub fn names() -> Vec<&'static str> {
        vec![
            "validate",
            "minimality",
            "periodicity",
            "additivity",
            "triviality",
            "acyclicity",
            "duality_oracle",
            "syzygy_formula",
            "coincide",
            "radical_normalizer",
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Minimality => "minimality",
            Suite::Periodicity => "periodicity",
            Suite::Additivity => "additivity",
            Suite::Triviality => "triviality",
            Suite::Acyclicity => "acyclicity",
            Suite::DualityOracle => "duality_oracle",
            Suite::SyzygyFormula => "syzygy_formula",
            Suite::Coincide => "coincide",
            Suite::RadicalNormalizer => "radical_normalizer",
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "validate" => Suite::Validate,
            "minimality" => Suite::Minimality,
            "periodicity" => Suite::Periodicity,
            "additivity" => Suite::Additivity,
            "triviality" => Suite::Triviality,
            "acyclicity" => Suite::Acyclicity,
            "duality_oracle" => Suite::DualityOracle,
            "syzygy_formula" => Suite::SyzygyFormula,
            "coincide" => Suite::Coincide,
            "radical_normalizer" => Suite::RadicalNormalizer,
            other => return Err(VerifyError::UnknownSuite(other.to_string())),
        })
    }
}

/// How to obtain an instance: an explicit file, a seeded tensor product of
/// 1x1 factorizations, or a direct-sum wrapper around a sub-recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    File(String),
    Tensor { nvars: usize, arity: usize, degree: i64 },
    /// Direct sum of the inner instance with its suspension.
    SumWithSuspension(Box<Recipe>),
    /// Direct sum of the inner instance with itself.
    SelfSum(Box<Recipe>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub recipe: Recipe,
    pub field: FieldSpec,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn describe(&self) -> String {
        fn recipe(r: &Recipe) -> String {
            match r {
                Recipe::File(p) => format!("file {p}"),
                Recipe::Tensor { nvars, arity, degree } => {
                    format!("tensor(n={nvars}, arity={arity}, e={degree})")
                }
                Recipe::SumWithSuspension(inner) => format!("{} + suspension", recipe(inner)),
                Recipe::SelfSum(inner) => format!("{} + itself", recipe(inner)),
            }
        }
        format!("{} over {}, seed {}", recipe(&self.recipe), self.field, self.seed)
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: i64) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps)
}

fn random_unit(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let v = loop {
                let v = rng.gen_range(-3i64..=3);
                if v != 0 {
                    break v;
                }
            };
            field.from_integer(v)
        }
        FieldSpec::Prime(p) => Scalar::Residue(rng.gen_range(1..p)),
    }
}

/// One random 1x1 factorization (c*m, c'*m') of degree `e`; both factors
/// have positive degree when `e >= 2`.
fn random_pair(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    vars: &[String],
    e: i64,
) -> MatrixFactorization {
    let n = vars.len();
    let dp = if e >= 2 { rng.gen_range(1..e) } else { e };
    let p = Polynomial::term(random_unit(rng, field), random_monomial(rng, n, dp), field, n);
    let q = Polynomial::term(random_unit(rng, field), random_monomial(rng, n, e - dp), field, n);
    let f = p.mul(&q).unwrap();
    let a = PolyMatrix::from_rows(field, n, vec![vec![p]]).unwrap();
    let b = PolyMatrix::from_rows(field, n, vec![vec![q]]).unwrap();
    MatrixFactorization::new(field, vars.to_vec(), f, a, b, vec![0], vec![dp])
}

/// Deterministically generates a valid factorization from the recipe,
/// reseeding a bounded number of times if the tensor potential degenerates
/// to zero, and reducing the result.
pub fn generate_instance(spec: &InstanceSpec) -> Result<MatrixFactorization, VerifyError> {
    let mf = build_recipe(&spec.recipe, spec.field, spec.seed)?;
    let reduced = mf.reduce()?;
    Ok(reduced)
}

fn build_recipe(recipe: &Recipe, field: FieldSpec, seed: u64) -> Result<MatrixFactorization, VerifyError> {
    match recipe {
        Recipe::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| VerifyError::Io(format!("cannot read {path}: {e}")))?;
            Ok(crate::format::parse_mf(&text)?)
        }
        Recipe::Tensor { nvars, arity, degree } => {
            if *arity == 0 {
                return Err(VerifyError::EmptyRecipe);
            }
            let vars: Vec<String> = (0..*nvars)
                .map(|i| ["x", "y", "z", "w", "u", "v"].get(i).map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{i}")))
                .collect();
            for attempt in 0..16u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e3779b97f4a7c15)));
                let mut acc = random_pair(&mut rng, field, &vars, *degree);
                let mut ok = true;
                for _ in 1..*arity {
                    let next = random_pair(&mut rng, field, &vars, *degree);
                    match acc.tensor(&next) {
                        Ok(t) => acc = t,
                        Err(MfError::TensorZeroSum) => {
                            ok = false;
                            break;
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                if ok && !acc.f.is_zero() {
                    return Ok(acc);
                }
            }
            Err(VerifyError::RecipeYieldsZero)
        }
        Recipe::SumWithSuspension(inner) => {
            let base = build_recipe(inner, field, seed)?;
            let sus = base.suspend()?;
            Ok(base.direct_sum(&sus)?)
        }
        Recipe::SelfSum(inner) => {
            let base = build_recipe(inner, field, seed)?;
            Ok(base.direct_sum(&base)?)
        }
    }
}

/// The seeded corpus used by the batch suites: bounds n <= 3, r <= 8,
/// e <= 4, rationals restricted to two variables to keep exact arithmetic
/// quick on wide windows.
pub fn standard_corpus(count: u64) -> Vec<InstanceSpec> {
    (1..=count)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545f4914f6cdd1d));
            let nvars = 1 + (rng.gen_range(0..100) % 3) as usize;
            let field = match rng.gen_range(0..4) {
                0 if nvars <= 2 => FieldSpec::Rationals,
                1 => FieldSpec::prime(2).unwrap(),
                2 => FieldSpec::prime(101).unwrap(),
                _ => FieldSpec::prime(7).unwrap(),
            };
            let degree = rng.gen_range(2..=4);
            // One variable admits only pairs (x^a, x^(e-a)), whose tensor
            // sums can vanish identically in small characteristic; three
            // variables cap the slice sizes instead.
            let arity = match nvars {
                1 => 1,
                3 => rng.gen_range(1..=2),
                _ => rng.gen_range(1..=3),
            };
            let base = Recipe::Tensor { nvars, arity, degree };
            let recipe = if nvars == 3 {
                base
            } else {
                match rng.gen_range(0..3) {
                    0 => Recipe::SumWithSuspension(Box::new(base)),
                    1 => Recipe::SelfSum(Box::new(base)),
                    _ => base,
                }
            };
            InstanceSpec { recipe, field, seed }
        })
        .collect()
}

/// Radical class of a monomial ideal: tag `m` exactly when the radical is
/// the whole maximal ideal, which for monomial ideals means every variable
/// occurs as a pure-power generator. Only `m`-primary support is accepted
/// downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RadicalTag {
    Maximal,
    Unsupported,
}

impl fmt::Display for RadicalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadicalTag::Maximal => write!(f, "m"),
            RadicalTag::Unsupported => write!(f, "unsupported"),
        }
    }
}

pub fn radical_normalizer(gens: &[Polynomial], nvars: usize) -> Result<RadicalTag, VerifyError> {
    let mut has_pure_power = vec![false; nvars];
    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if g.num_terms() != 1 {
            return Err(VerifyError::NonMonomialGenerator(idx));
        }
        let (mono, _) = g.terms().next().unwrap();
        let support: Vec<usize> = mono
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        if support.is_empty() {
            // A unit generator: the ideal is the whole ring, whose radical
            // is not the maximal ideal.
            return Ok(RadicalTag::Unsupported);
        }
        if support.len() == 1 {
            has_pure_power[support[0]] = true;
        }
    }
    if nvars > 0 && has_pure_power.iter().all(|&b| b) {
        Ok(RadicalTag::Maximal)
    } else {
        Ok(RadicalTag::Unsupported)
    }
}

/// Polynomial-side graded rank of a multiplication map between twisted free
/// modules, assembled from scratch on monomial bases; this is the oracle
/// side of the duality suite and shares nothing with the contraction code.
fn poly_slice_dims(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    d: i64,
) -> (usize, usize) {
    let n = mat.nvars;
    let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut rows = 0usize;
    for (i, &w) in tgt_twists.iter().enumerate() {
        for m in monomials_of_degree(n, d - w) {
            row_index.insert((i, m), rows);
            rows += 1;
        }
    }
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for (c, &w) in src_twists.iter().enumerate() {
        for m in monomials_of_degree(n, d - w) {
            columns.push((c, m));
        }
    }
    let mut matrix = ScalarMatrix::zero(mat.field, rows, columns.len());
    for (col, (c, mu)) in columns.iter().enumerate() {
        for i in 0..mat.rows {
            let entry = mat.entry(i, *c);
            for (mono, coef) in entry.terms() {
                if let Some(&row) = row_index.get(&(i, mono.mul(mu))) {
                    let cur = matrix.at(row, col).add(coef, &mat.field).unwrap();
                    matrix.set(row, col, cur);
                }
            }
        }
    }
    (rows, matrix.rank())
}

/// The graded Matlis duality oracle: the dimension of the parity kernel on
/// `E`-slices at internal degree `j` equals the cokernel dimension of the
/// transposed matrix on twisted polynomial modules at degree `-j`, with the
/// twist reflection pinned by the `f = x^2` example.
fn duality_oracle_checks(
    mf: &MatrixFactorization,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<Vec<CheckOutcome>, VerifyError> {
    let reduced = if mf.is_minimal() { mf.clone() } else { mf.reduce()? };
    let n = reduced.nvars() as i64;
    let e = reduced.potential_degree().unwrap_or(0);
    let (p, u, v) = if reduced.nvars() % 2 == 1 {
        (reduced.a.clone(), reduced.t.clone(), reduced.s.clone())
    } else {
        (
            reduced.b.clone(),
            reduced.s.iter().map(|w| w + e).collect::<Vec<_>>(),
            reduced.t.clone(),
        )
    };
    let src_e: Vec<i64> = u.iter().map(|w| w - n).collect();
    let tgt_e: Vec<i64> = v.iter().map(|w| w - n).collect();
    let pt = p.transpose();
    // Transposed map on the polynomial side: source twists 2n - v, target
    // twists 2n - u, evaluated at the reflected degree -j.
    let src_p: Vec<i64> = v.iter().map(|w| 2 * n - w).collect();
    let tgt_p: Vec<i64> = u.iter().map(|w| 2 * n - w).collect();

    let per_degree = crate::exec::map_degrees(exec, lo, hi, |j| {
        let kernel = crate::inverse::matrix_kernel_dim(&p, &src_e, &tgt_e, j)
            .map_err(CohomologyError::Inverse)?;
        let (rows, rank) = poly_slice_dims(&pt, &src_p, &tgt_p, -j);
        Ok::<_, CohomologyError>((j, kernel, (rows - rank) as u64))
    });
    let mut witness = None;
    let mut checked = 0u64;
    for item in per_degree {
        let (j, kernel, coker) = item?;
        checked += 1;
        if kernel != coker && witness.is_none() {
            witness = Some((j, kernel, coker));
        }
    }
    Ok(vec![match witness {
        None => CheckOutcome::of(
            "kernel_dims_match_transpose_cokernel".to_string(),
            true,
            None,
            format!("{checked} degrees checked"),
        ),
        Some((j, kernel, coker)) => CheckOutcome::fail(
            "kernel_dims_match_transpose_cokernel".to_string(),
            Some(j),
            format!("kernel dim {kernel} != dual cokernel dim {coker}"),
        ),
    }])
}

fn trivial_pair(mf: &MatrixFactorization) -> Result<(MatrixFactorization, MatrixFactorization), VerifyError> {
    let field = mf.field;
    let n = mf.nvars();
    let e = mf.potential_degree().unwrap_or(0);
    let one = PolyMatrix::identity(field, n, 1);
    let mut fmat = PolyMatrix::zero(field, n, 1, 1);
    *fmat.entry_mut(0, 0) = mf.f.clone();
    let unit_f = MatrixFactorization::new(
        field,
        mf.vars.clone(),
        mf.f.clone(),
        one.clone(),
        fmat.clone(),
        vec![0],
        vec![0],
    );
    let f_unit = MatrixFactorization::new(
        field,
        mf.vars.clone(),
        mf.f.clone(),
        fmat,
        one,
        vec![0],
        vec![e],
    );
    Ok((unit_f, f_unit))
}

/// Runs the named suite against the instance over the window.
pub fn run_suite(
    suite: Suite,
    spec: &InstanceSpec,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<VerifyReport, VerifyError> {
    let started = Instant::now();
    let mf = generate_raw(spec)?;
    let description = spec.describe();
    let mut report = dispatch_suite(suite, &mf, &description, lo, hi, exec)?;
    report.wall_time_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Builds the instance without the final reduction, so validation-flavored
/// suites see the instance as specified; suites that need minimal input
/// reduce explicitly.
fn generate_raw(spec: &InstanceSpec) -> Result<MatrixFactorization, VerifyError> {
    match &spec.recipe {
        Recipe::File(_) => build_recipe(&spec.recipe, spec.field, spec.seed),
        _ => generate_instance(spec),
    }
}

fn dispatch_suite(
    suite: Suite,
    mf: &MatrixFactorization,
    description: &str,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<VerifyReport, VerifyError> {
    let window = (lo, hi);
    let opts = ViewOpts { with_bases: false, exec };
    // Only the validation suite accepts broken instances (their defects are
    // its report content); everything else demands a valid factorization.
    if suite != Suite::Validate {
        mf.ensure_valid()?;
    }
    let checks = match suite {
        Suite::Validate => {
            let report = mf.validate();
            if report.is_valid() {
                vec![CheckOutcome::of(
                    "structural_invariants".to_string(),
                    true,
                    None,
                    format!("size {}, minimal: {}", mf.size(), report.minimal),
                )]
            } else {
                report
                    .issues
                    .iter()
                    .map(|issue| {
                        CheckOutcome::fail(
                            "structural_invariants".to_string(),
                            None,
                            match &issue.entry {
                                Some((m, i, j)) => format!("{} at {}[{}][{}]", issue.condition, m, i, j),
                                None => issue.condition.clone(),
                            },
                        )
                    })
                    .collect()
            }
        }
        Suite::Minimality => {
            let red = mf.reduce()?;
            let again = red.reduce()?;
            let before = mf.cokernel_hilbert_with(lo, hi, exec)?;
            let after = red.cokernel_hilbert_with(lo, hi, exec)?;
            let mismatch = (lo..=hi).find(|&j| before.dim(j) != after.dim(j));
            vec![
                CheckOutcome::of(
                    "reduced_is_minimal".to_string(),
                    red.is_minimal(),
                    None,
                    format!("size {} -> {}", mf.size(), red.size()),
                ),
                CheckOutcome::of(
                    "reduction_is_idempotent".to_string(),
                    again == red,
                    None,
                    String::new(),
                ),
                match mismatch {
                    None => CheckOutcome::pass("cokernel_hilbert_preserved".to_string()),
                    Some(j) => CheckOutcome::fail(
                        "cokernel_hilbert_preserved".to_string(),
                        Some(j),
                        format!("{:?} != {:?}", before.dim(j), after.dim(j)),
                    ),
                },
            ]
        }
        Suite::Periodicity => {
            let e = mf.potential_degree().unwrap_or(0);
            let twice = mf.suspend()?.suspend()?;
            let matrices_match = twice.a == mf.a
                && twice.b == mf.b
                && twice.s == mf.s.iter().map(|w| w + e).collect::<Vec<_>>()
                && twice.t == mf.t.iter().map(|w| w + e).collect::<Vec<_>>();
            let base = gamma_stab_max_with(mf, lo, hi, opts)?;
            let moved = gamma_stab_max_with(&twice, lo, hi, opts)?;
            let mismatch = (lo + e..=hi).find(|&j| moved.dim(j) != base.dim(j - e));
            vec![
                CheckOutcome::of(
                    "suspend_squared_is_global_twist".to_string(),
                    matrices_match,
                    None,
                    format!("twist by {e}"),
                ),
                match mismatch {
                    None => CheckOutcome::pass("gamma_shifts_by_e".to_string()),
                    Some(j) => CheckOutcome::fail(
                        "gamma_shifts_by_e".to_string(),
                        Some(j),
                        format!("{:?} != {:?}", moved.dim(j), base.dim(j - e)),
                    ),
                },
            ]
        }
        Suite::Additivity => {
            let other = mf.suspend()?;
            let sum = mf.direct_sum(&other)?;
            let left = gamma_stab_max_with(mf, lo, hi, opts)?;
            let right = gamma_stab_max_with(&other, lo, hi, opts)?;
            let total = gamma_stab_max_with(&sum, lo, hi, opts)?;
            let gamma_mismatch = (lo..=hi).find(|&j| {
                total.dim(j).unwrap_or(0) != left.dim(j).unwrap_or(0) + right.dim(j).unwrap_or(0)
            });
            let hl = mf.cokernel_hilbert_with(lo, hi, exec)?;
            let hr = other.cokernel_hilbert_with(lo, hi, exec)?;
            let hs = sum.cokernel_hilbert_with(lo, hi, exec)?;
            let hilbert_mismatch = (lo..=hi)
                .find(|&j| hs.dim(j).unwrap_or(0) != hl.dim(j).unwrap_or(0) + hr.dim(j).unwrap_or(0));
            vec![
                match gamma_mismatch {
                    None => CheckOutcome::pass("gamma_additive_over_direct_sum".to_string()),
                    Some(j) => CheckOutcome::fail(
                        "gamma_additive_over_direct_sum".to_string(),
                        Some(j),
                        format!(
                            "{:?} != {:?} + {:?}",
                            total.dim(j),
                            left.dim(j),
                            right.dim(j)
                        ),
                    ),
                },
                match hilbert_mismatch {
                    None => CheckOutcome::pass("cokernel_hilbert_additive".to_string()),
                    Some(j) => CheckOutcome::fail(
                        "cokernel_hilbert_additive".to_string(),
                        Some(j),
                        format!("{:?} != {:?} + {:?}", hs.dim(j), hl.dim(j), hr.dim(j)),
                    ),
                },
            ]
        }
        Suite::Triviality => {
            let (unit_f, f_unit) = trivial_pair(mf)?;
            let mut checks = Vec::new();
            for (label, triv) in [("(1, f)", &unit_f), ("(f, 1)", &f_unit)] {
                let red = triv.reduce()?;
                checks.push(CheckOutcome::of(
                    format!("reduce {label} to empty"),
                    red.size() == 0,
                    None,
                    format!("size {}", red.size()),
                ));
                let view = gamma_stab_max_with(triv, lo, hi, opts)?;
                let witness = (lo..=hi).find(|&j| view.dim(j).unwrap_or(0) != 0);
                checks.push(match witness {
                    None => CheckOutcome::pass(format!("gamma of {label} vanishes")),
                    Some(j) => CheckOutcome::fail(
                        format!("gamma of {label} vanishes"),
                        Some(j),
                        format!("dimension {:?}", view.dim(j)),
                    ),
                });
            }
            // Summing trivial blocks onto the instance must not change
            // gamma either.
            let padded = mf.direct_sum(&unit_f)?.direct_sum(&f_unit)?;
            let base = gamma_stab_max_with(mf, lo, hi, opts)?;
            let pad = gamma_stab_max_with(&padded, lo, hi, opts)?;
            let witness = (lo..=hi).find(|&j| base.dim(j) != pad.dim(j));
            checks.push(match witness {
                None => CheckOutcome::pass("gamma unchanged by trivial summands".to_string()),
                Some(j) => CheckOutcome::fail(
                    "gamma unchanged by trivial summands".to_string(),
                    Some(j),
                    format!("{:?} != {:?}", base.dim(j), pad.dim(j)),
                ),
            });
            checks
        }
        Suite::Acyclicity => {
            let mut inner = periodic_complex_check(mf, lo, hi, exec)?;
            inner.instance = description.to_string();
            inner.suite = "acyclicity".to_string();
            return Ok(inner);
        }
        Suite::DualityOracle => duality_oracle_checks(mf, lo, hi, exec)?,
        // The two-route comparisons keep the operations' minimality
        // preconditions: a non-minimal instance is an error here, not
        // something to fix up silently.
        Suite::SyzygyFormula => {
            let gamma = gamma_stab_max_with(mf, lo, hi, opts)?;
            let syz = crate::cohomology::slc_via_syzygy_with(mf, lo, hi, opts)?;
            let cmp = stable_equiv(&gamma, &syz)?;
            vec![CheckOutcome::of(
                "syzygy_route_matches_kernel_route".to_string(),
                cmp.pass,
                None,
                format!("{} (shift {:?})", cmp.detail, cmp.shift),
            )]
        }
        Suite::Coincide => {
            let mut inner = coincide_check(mf, lo, hi, exec)?;
            inner.instance = description.to_string();
            return Ok(inner);
        }
        Suite::RadicalNormalizer => radical_suite_checks(mf)?,
    };
    Ok(VerifyReport::from_checks(
        suite.name().to_string(),
        description.to_string(),
        window,
        checks,
    ))
}

/// Additivity over a direct sum of two explicitly given factorizations;
/// used when a suite is handed two inputs rather than one.
pub fn additivity_pair(
    left: &MatrixFactorization,
    right: &MatrixFactorization,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<VerifyReport, VerifyError> {
    let opts = ViewOpts { with_bases: false, exec };
    let sum = left.direct_sum(right)?;
    let vl = gamma_stab_max_with(left, lo, hi, opts)?;
    let vr = gamma_stab_max_with(right, lo, hi, opts)?;
    let vs = gamma_stab_max_with(&sum, lo, hi, opts)?;
    let gamma_mismatch = (lo..=hi)
        .find(|&j| vs.dim(j).unwrap_or(0) != vl.dim(j).unwrap_or(0) + vr.dim(j).unwrap_or(0));
    let hl = left.cokernel_hilbert_with(lo, hi, exec)?;
    let hr = right.cokernel_hilbert_with(lo, hi, exec)?;
    let hs = sum.cokernel_hilbert_with(lo, hi, exec)?;
    let hilbert_mismatch =
        (lo..=hi).find(|&j| hs.dim(j).unwrap_or(0) != hl.dim(j).unwrap_or(0) + hr.dim(j).unwrap_or(0));
    let checks = vec![
        match gamma_mismatch {
            None => CheckOutcome::pass("gamma_additive_over_direct_sum".to_string()),
            Some(j) => CheckOutcome::fail(
                "gamma_additive_over_direct_sum".to_string(),
                Some(j),
                format!("{:?} != {:?} + {:?}", vs.dim(j), vl.dim(j), vr.dim(j)),
            ),
        },
        match hilbert_mismatch {
            None => CheckOutcome::pass("cokernel_hilbert_additive".to_string()),
            Some(j) => CheckOutcome::fail(
                "cokernel_hilbert_additive".to_string(),
                Some(j),
                format!("{:?} != {:?} + {:?}", hs.dim(j), hl.dim(j), hr.dim(j)),
            ),
        },
    ];
    Ok(VerifyReport::from_checks(
        "additivity".to_string(),
        "two explicit factorizations".to_string(),
        (lo, hi),
        checks,
    ))
}

fn radical_suite_checks(mf: &MatrixFactorization) -> Result<Vec<CheckOutcome>, VerifyError> {
    let field = mf.field;
    let n = mf.nvars();
    let var = |i: usize| Polynomial::variable(i, field, n);
    let power = |i: usize, k: u32| {
        let mut exps = vec![0u32; n];
        exps[i] = k;
        Polynomial::term(field.one(), Monomial::new(exps), field, n)
    };

    let mut checks = Vec::new();
    // Pure powers of every variable: radical is m.
    let powers: Vec<Polynomial> = (0..n).map(|i| power(i, i as u32 + 2)).collect();
    let tag_powers = radical_normalizer(&powers, n)?;
    // The variables themselves: the identity case.
    let linear: Vec<Polynomial> = (0..n).map(var).collect();
    let tag_linear = radical_normalizer(&linear, n)?;
    checks.push(CheckOutcome::of(
        "m_primary_powers_normalize_to_m".to_string(),
        tag_powers == RadicalTag::Maximal && tag_linear == RadicalTag::Maximal,
        None,
        format!("tags {tag_powers} and {tag_linear}"),
    ));
    checks.push(CheckOutcome::of(
        "normalization_constant_on_radical_class".to_string(),
        tag_powers == tag_linear,
        None,
        "powers and linear generators give the identical call".to_string(),
    ));
    if n >= 2 {
        let partial = vec![var(0)];
        let tag_partial = radical_normalizer(&partial, n)?;
        let mixed = {
            let mut m = var(0);
            for i in 1..n {
                m = m.mul(&var(i)).unwrap();
            }
            vec![m]
        };
        let tag_mixed = radical_normalizer(&mixed, n)?;
        checks.push(CheckOutcome::of(
            "non_m_primary_rejected".to_string(),
            tag_partial == RadicalTag::Unsupported && tag_mixed == RadicalTag::Unsupported,
            None,
            format!("tags {tag_partial} and {tag_mixed}"),
        ));
    }
    let non_monomial = vec![var(0).add(&Polynomial::one(field, n)).unwrap()];
    checks.push(CheckOutcome::of(
        "non_monomial_generator_is_an_error".to_string(),
        radical_normalizer(&non_monomial, n).is_err(),
        None,
        String::new(),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_spec() -> InstanceSpec {
        InstanceSpec {
            recipe: Recipe::Tensor { nvars: 2, arity: 1, degree: 2 },
            field: FieldSpec::Rationals,
            seed: 7,
        }
    }

    #[test]
    fn generation_is_deterministic_and_valid() {
        let a = generate_instance(&xy_spec()).unwrap();
        let b = generate_instance(&xy_spec()).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().is_valid());
        assert!(a.is_minimal());
    }

    #[test]
    fn empty_recipe_rejected() {
        let spec = InstanceSpec {
            recipe: Recipe::Tensor { nvars: 2, arity: 0, degree: 2 },
            field: FieldSpec::Rationals,
            seed: 1,
        };
        assert!(matches!(generate_instance(&spec), Err(VerifyError::EmptyRecipe)));
    }

    #[test]
    fn corpus_respects_bounds() {
        for spec in standard_corpus(20) {
            let mf = generate_instance(&spec).unwrap();
            assert!(mf.validate().is_valid(), "{}", spec.describe());
            assert!(mf.nvars() <= 3);
            assert!(mf.size() <= 8, "size {} for {}", mf.size(), spec.describe());
            assert!(mf.potential_degree().unwrap_or(0) <= 4);
        }
    }

    #[test]
    fn radical_normalizer_cases() {
        let field = FieldSpec::Rationals;
        let n = 2;
        let x = Polynomial::variable(0, field, n);
        let y = Polynomial::variable(1, field, n);
        let x2 = x.mul(&x).unwrap();
        let y3 = y.mul(&y).unwrap().mul(&y).unwrap();
        assert_eq!(radical_normalizer(&[x2.clone(), y3], n).unwrap(), RadicalTag::Maximal);
        assert_eq!(
            radical_normalizer(&[x.clone(), y.clone()], n).unwrap(),
            RadicalTag::Maximal
        );
        assert_eq!(radical_normalizer(std::slice::from_ref(&x), n).unwrap(), RadicalTag::Unsupported);
        let xy = x.mul(&y).unwrap();
        assert_eq!(radical_normalizer(&[xy], n).unwrap(), RadicalTag::Unsupported);
        let bad = x.add(&y).unwrap();
        assert!(matches!(
            radical_normalizer(&[bad], n),
            Err(VerifyError::NonMonomialGenerator(0))
        ));
    }

    #[test]
    fn suites_pass_on_generated_instance() {
        let spec = xy_spec();
        for suite in [
            Suite::Validate,
            Suite::Minimality,
            Suite::Periodicity,
            Suite::Additivity,
            Suite::Triviality,
            Suite::Acyclicity,
            Suite::DualityOracle,
            Suite::SyzygyFormula,
            Suite::Coincide,
            Suite::RadicalNormalizer,
        ] {
            let report = run_suite(suite, &spec, -10, 0, Exec::Sequential).unwrap();
            assert!(report.pass, "suite {suite:?} failed:\n{report}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = xy_spec();
        for suite in [
            Suite::Validate,
            Suite::Minimality,
            Suite::Periodicity,
            Suite::Additivity,
            Suite::Triviality,
            Suite::Acyclicity,
            Suite::DualityOracle,
            Suite::SyzygyFormula,
            Suite::Coincide,
            Suite::RadicalNormalizer,
        ] {
            let a = run_suite(suite, &spec, -8, 0, Exec::Sequential).unwrap();
            let b = run_suite(suite, &spec, -8, 0, Exec::default()).unwrap();
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap(),
                "suite {suite:?} not deterministic across execution modes"
            );
        }
    }

    #[test]
    fn unknown_suite_name() {
        assert!(matches!("nonsense".parse::<Suite>(), Err(VerifyError::UnknownSuite(_))));
        assert!("duality_oracle".parse::<Suite>().is_ok());
    }
}
