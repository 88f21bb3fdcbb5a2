//! The Macaulay inverse-system model of the injective hull `E = E(k)`.
//!
//! `E` is spanned by dual monomials with all exponents <= -1; a polynomial
//! acts by contraction: the monomial `x^b` sends `x^a` to `x^(a+b)` when the
//! result stays in the region, and to zero otherwise. `E` itself is never
//! materialized; only fixed-degree slices are, since each graded piece is
//! finite-dimensional. `E_R(k)` for the hypersurface `R = Q/(f)` appears as
//! the annihilator `(0 : f)` inside `E`.
//!
//! A copy of `E` with twist `w` holds the dual monomial `m` in internal
//! degree `m.degree() + w`, so a matrix with entries homogeneous of degree
//! `src_twist - tgt_twist` acts degree-zero, exactly as on the polynomial
//! side.

use std::collections::HashMap;
use std::fmt;

use num::traits::Signed;
use serde::Serialize;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{row_space, ScalarMatrix};
use crate::matrix::PolyMatrix;
use crate::monomial::{dual_monomials_of_degree, DualMonomial};
use crate::poly::{Homogeneity, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseError {
    /// A nonzero entry is not homogeneous of the degree forced by twists.
    InhomogeneousEntry { row: usize, col: usize, expected: i64 },
    TwistMismatch { rows: usize, cols: usize, tgt: usize, src: usize },
    InhomogeneousPotential,
}

impl fmt::Display for InverseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseError::InhomogeneousEntry { row, col, expected } => write!(
                f,
                "entry [{row}][{col}] is not homogeneous of degree {expected}"
            ),
            InverseError::TwistMismatch { rows, cols, tgt, src } => write!(
                f,
                "twist lengths ({tgt}, {src}) do not match matrix shape {rows}x{cols}"
            ),
            InverseError::InhomogeneousPotential => write!(f, "f must be homogeneous"),
        }
    }
}

impl std::error::Error for InverseError {}

/// Whether a slice records a subspace (kernel) or a quotient (cokernel) of
/// the ambient `E`-slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SliceMode {
    Kernel,
    Cokernel,
}

/// The finite-dimensional piece, at one internal degree, of a submodule or
/// quotient of `E^r` with twists. `vectors` holds exact coordinates over
/// `basis` in reduced echelon form: kernel basis vectors in kernel mode,
/// canonical quotient representatives in cokernel mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSlice {
    pub degree: i64,
    pub copies: usize,
    pub twists: Vec<i64>,
    pub mode: SliceMode,
    pub basis: Vec<(usize, DualMonomial)>,
    pub vectors: Vec<Vec<Scalar>>,
}

impl DualSlice {
    pub fn dim(&self) -> u64 {
        self.vectors.len() as u64
    }

    /// Basis monomials as strings; copies beyond the first are tagged.
    pub fn basis_strings(&self, vars: &[String]) -> Vec<String> {
        self.basis
            .iter()
            .map(|(c, m)| {
                if self.copies == 1 {
                    m.render(vars)
                } else {
                    format!("e{c}*{}", m.render(vars))
                }
            })
            .collect()
    }

    /// Each stored vector as a readable linear combination of basis
    /// monomials.
    pub fn vector_strings(&self, vars: &[String]) -> Vec<String> {
        let names = self.basis_strings(vars);
        self.vectors
            .iter()
            .map(|row| {
                let mut out = String::new();
                for (i, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let lead = out.is_empty();
                    let (sign, mag) = match c {
                        Scalar::Rational(r) if r.is_negative() => ("-", Scalar::Rational(-r)),
                        other => ("+", other.clone()),
                    };
                    if lead {
                        if sign == "-" {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if sign == "-" { " - " } else { " + " });
                    }
                    if mag.is_one(&FieldSpec::Rationals) || matches!(mag, Scalar::Residue(1)) {
                        out.push_str(&names[i]);
                    } else {
                        out.push_str(&format!("{}*{}", mag, names[i]));
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                out
            })
            .collect()
    }
}

/// An ordered ambient basis of an `E^r` slice: (copy index, dual monomial).
pub type SliceBasis = Vec<(usize, DualMonomial)>;

/// Contraction of a single dual monomial by a polynomial, extended linearly
/// over the polynomial's terms.
pub fn contract(p: &Polynomial, m: &DualMonomial) -> Vec<(DualMonomial, Scalar)> {
    let mut acc: HashMap<DualMonomial, Scalar> = HashMap::new();
    for (mono, coef) in p.terms() {
        if let Some(hit) = m.contract_by(mono) {
            match acc.remove(&hit) {
                None => {
                    acc.insert(hit, coef.clone());
                }
                Some(existing) => {
                    let sum = existing.add(coef, &p.field).unwrap();
                    if !sum.is_zero() {
                        acc.insert(hit, sum);
                    }
                }
            }
        }
    }
    let mut out: Vec<(DualMonomial, Scalar)> = acc.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The canonical ambient basis of `(E^r with twists)` in internal degree
/// `j`: dual monomials ordered graded-lex on negated exponents, then copy.
pub fn slice_basis(nvars: usize, twists: &[i64], j: i64) -> SliceBasis {
    let mut basis: SliceBasis = Vec::new();
    for (c, &w) in twists.iter().enumerate() {
        for m in dual_monomials_of_degree(nvars, j - w) {
            basis.push((c, m));
        }
    }
    basis.sort_by(|(ca, ma), (cb, mb)| ma.cmp(mb).then(ca.cmp(cb)));
    basis
}

fn check_compatible(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
) -> Result<(), InverseError> {
    if tgt_twists.len() != mat.rows || src_twists.len() != mat.cols {
        return Err(InverseError::TwistMismatch {
            rows: mat.rows,
            cols: mat.cols,
            tgt: tgt_twists.len(),
            src: src_twists.len(),
        });
    }
    for (i, &tw) in tgt_twists.iter().enumerate() {
        for (c, &sw) in src_twists.iter().enumerate() {
            let entry = mat.entry(i, c);
            if entry.is_zero() {
                continue;
            }
            let expected = sw - tw;
            match entry.homogeneity() {
                Homogeneity::Degree(d) if d == expected => {}
                _ => return Err(InverseError::InhomogeneousEntry { row: i, col: c, expected }),
            }
        }
    }
    Ok(())
}

/// Assembles the scalar matrix of the contraction action
/// `mat : (E^cols, src_twists) -> (E^rows, tgt_twists)` in internal degree
/// `j`; rows are indexed by the target basis, columns by the source basis.
fn contraction_matrix(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    j: i64,
) -> (SliceBasis, SliceBasis, ScalarMatrix) {
    let src = slice_basis(mat.nvars, src_twists, j);
    let tgt = slice_basis(mat.nvars, tgt_twists, j);
    let tgt_index: HashMap<&(usize, DualMonomial), usize> =
        tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = ScalarMatrix::zero(mat.field, tgt.len(), src.len());
    for (col, (c, m)) in src.iter().enumerate() {
        for i in 0..mat.rows {
            let entry = mat.entry(i, *c);
            if entry.is_zero() {
                continue;
            }
            for (hit, coef) in contract(entry, m) {
                let key = (i, hit);
                if let Some(&row) = tgt_index.get(&key) {
                    let cur = out.at(row, col).add(&coef, &mat.field).unwrap();
                    out.set(row, col, cur);
                }
            }
        }
    }
    (src, tgt, out)
}

/// Kernel of the contraction action in internal degree `j`, with canonical
/// echelon coordinates over the source basis.
pub fn matrix_kernel_slice(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    j: i64,
) -> Result<DualSlice, InverseError> {
    check_compatible(mat, src_twists, tgt_twists)?;
    let (src, _tgt, m) = contraction_matrix(mat, src_twists, tgt_twists, j);
    let null = m.nullspace();
    let (vectors, _) = row_space(mat.field, null, src.len());
    Ok(DualSlice {
        degree: j,
        copies: src_twists.len(),
        twists: src_twists.to_vec(),
        mode: SliceMode::Kernel,
        basis: src,
        vectors,
    })
}

/// Kernel dimension only (rank computation, no basis).
pub fn matrix_kernel_dim(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    j: i64,
) -> Result<u64, InverseError> {
    check_compatible(mat, src_twists, tgt_twists)?;
    let (src, _tgt, m) = contraction_matrix(mat, src_twists, tgt_twists, j);
    Ok(src.len() as u64 - m.rank() as u64)
}

/// Cokernel of the contraction action in internal degree `j`: quotient
/// dimension with canonical representatives (target basis elements away
/// from the image's pivot columns).
pub fn matrix_cokernel_slice(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    j: i64,
) -> Result<DualSlice, InverseError> {
    check_compatible(mat, src_twists, tgt_twists)?;
    let (src, tgt, m) = contraction_matrix(mat, src_twists, tgt_twists, j);
    // Rows of the image, as vectors in target coordinates.
    let images: Vec<Vec<Scalar>> = (0..src.len())
        .map(|col| (0..tgt.len()).map(|row| m.at(row, col).clone()).collect())
        .collect();
    let (_, pivots) = row_space(mat.field, images, tgt.len());
    let pivot_set: std::collections::HashSet<usize> = pivots.into_iter().collect();
    let field = mat.field;
    let vectors: Vec<Vec<Scalar>> = (0..tgt.len())
        .filter(|i| !pivot_set.contains(i))
        .map(|i| {
            let mut v = vec![field.zero(); tgt.len()];
            v[i] = field.one();
            v
        })
        .collect();
    Ok(DualSlice {
        degree: j,
        copies: tgt_twists.len(),
        twists: tgt_twists.to_vec(),
        mode: SliceMode::Cokernel,
        basis: tgt,
        vectors,
    })
}

/// The degree-`j` piece of `(0 :_E f) = ker(f . -)`, the inverse-system
/// model of `E_R(k)` for `R = Q/(f)`.
pub fn annihilator_slice(f: &Polynomial, j: i64) -> Result<DualSlice, InverseError> {
    let e = match f.homogeneity() {
        Homogeneity::Degree(d) => d,
        Homogeneity::Zero => 0,
        Homogeneity::Inhomogeneous => return Err(InverseError::InhomogeneousPotential),
    };
    let mat = PolyMatrix::from_rows(f.field, f.nvars, vec![vec![f.clone()]])
        .expect("1x1 matrix is well formed");
    matrix_kernel_slice(&mat, &[0], &[-e], j)
}

/// Dimension of `(0 :_E f)` in raw degree `g` (twist zero).
pub fn annihilator_dim(f: &Polynomial, g: i64) -> Result<u64, InverseError> {
    let e = match f.homogeneity() {
        Homogeneity::Degree(d) => d,
        Homogeneity::Zero => 0,
        Homogeneity::Inhomogeneous => return Err(InverseError::InhomogeneousPotential),
    };
    let mat = PolyMatrix::from_rows(f.field, f.nvars, vec![vec![f.clone()]])
        .expect("1x1 matrix is well formed");
    matrix_kernel_dim(&mat, &[0], &[-e], g)
}

/// Echelon basis of the annihilator subspace of the ambient slice
/// `(E^r, twists)` in internal degree `j`: the degree-`j` piece of
/// `(E_R)^r`.
pub(crate) fn annihilator_subspace(
    f: &Polynomial,
    twists: &[i64],
    j: i64,
) -> Result<DualSlice, InverseError> {
    let e = match f.homogeneity() {
        Homogeneity::Degree(d) => d,
        Homogeneity::Zero => 0,
        Homogeneity::Inhomogeneous => return Err(InverseError::InhomogeneousPotential),
    };
    let r = twists.len();
    let mut mat = PolyMatrix::zero(f.field, f.nvars, r, r);
    for i in 0..r {
        *mat.entry_mut(i, i) = f.clone();
    }
    let tgt: Vec<i64> = twists.iter().map(|w| w - e).collect();
    matrix_kernel_slice(&mat, twists, &tgt, j)
}

/// Cokernel, in internal degree `j`, of the contraction action restricted
/// to the annihilator submodule `(E_R)^r` on both sides. Returns the
/// quotient dimension and, when `with_vectors`, a slice carrying canonical
/// representative vectors in ambient coordinates over the target basis.
pub(crate) fn restricted_cokernel_slice(
    mat: &PolyMatrix,
    src_twists: &[i64],
    tgt_twists: &[i64],
    f: &Polynomial,
    j: i64,
    with_vectors: bool,
) -> Result<(u64, Option<DualSlice>), InverseError> {
    check_compatible(mat, src_twists, tgt_twists)?;
    let field = mat.field;
    let src_ann = annihilator_subspace(f, src_twists, j)?;
    let tgt_ann = annihilator_subspace(f, tgt_twists, j)?;
    let tgt_basis = tgt_ann.basis.clone();
    let tgt_index: HashMap<&(usize, DualMonomial), usize> =
        tgt_basis.iter().enumerate().map(|(i, k)| (k, i)).collect();

    // Push each annihilator basis vector of the source through the matrix.
    let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(src_ann.vectors.len());
    for v in &src_ann.vectors {
        let mut image = vec![field.zero(); tgt_basis.len()];
        for (col, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (c, m) = &src_ann.basis[col];
            for i in 0..mat.rows {
                let entry = mat.entry(i, *c);
                if entry.is_zero() {
                    continue;
                }
                for (hit, ecoef) in contract(entry, m) {
                    let key = (i, hit);
                    if let Some(&row) = tgt_index.get(&key) {
                        let add = coef.mul(&ecoef, &field).unwrap();
                        image[row] = image[row].add(&add, &field).unwrap();
                    }
                    // The image of an annihilator vector stays in the
                    // annihilator, so misses only occur off the target
                    // window and contribute nothing at this degree.
                }
            }
        }
        images.push(image);
    }

    // W / image, with W spanned by the annihilator echelon rows of the
    // target: coordinates of image vectors over W read off at W's pivots.
    let w_rows = &tgt_ann.vectors;
    let w_pivots: Vec<usize> = w_rows
        .iter()
        .map(|row| row.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero"))
        .collect();
    let coords: Vec<Vec<Scalar>> = images
        .iter()
        .map(|img| w_pivots.iter().map(|&p| img[p].clone()).collect())
        .collect();
    let (_, coord_pivots) = row_space(field, coords, w_rows.len());
    let pivot_set: std::collections::HashSet<usize> = coord_pivots.into_iter().collect();
    let dim = (w_rows.len() - pivot_set.len()) as u64;
    if !with_vectors {
        return Ok((dim, None));
    }
    let reps: Vec<Vec<Scalar>> = (0..w_rows.len())
        .filter(|i| !pivot_set.contains(i))
        .map(|i| w_rows[i].clone())
        .collect();
    Ok((
        dim,
        Some(DualSlice {
            degree: j,
            copies: tgt_twists.len(),
            twists: tgt_twists.to_vec(),
            mode: SliceMode::Cokernel,
            basis: tgt_basis,
            vectors: reps,
        }),
    ))
}

/// Ambient-coordinate basis of the target slice is empty exactly when the
/// whole slice vanishes; exposed for rank-nullity style checks.
pub fn ambient_dim(nvars: usize, twists: &[i64], j: i64) -> u64 {
    twists.iter().map(|&w| crate::monomial::e_dim(nvars, j, w)).sum()
}
