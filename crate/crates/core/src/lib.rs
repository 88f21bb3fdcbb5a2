//! Exact computation of stable local cohomology over graded hypersurfaces.
//!
//! The engine works with graded matrix factorizations `(A, B)` of a
//! homogeneous polynomial `f`, the maximal Cohen-Macaulay modules they
//! present, and the Macaulay inverse-system model of the injective hull
//! `E(k)`. Stable local cohomology at the maximal ideal is computed by the
//! parity kernel formula on `E`-slices, classical top local cohomology by
//! tensoring with the `f`-annihilator of `E`, and the structural identities
//! relating them are packaged as executable verification suites.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime fields);
//! every graded piece is finite-dimensional, so windowed results carry no
//! truncation error.

pub mod cohomology;
pub mod exec;
pub mod field;
pub mod format;
pub mod inverse;
pub mod linalg;
pub mod matrix;
pub mod mf;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod verify;

pub use cohomology::{
    coincide_check, gamma_stab_max, periodic_complex_check, slc_via_syzygy, stable_equiv,
    stable_shift, top_local_cohomology, GradedModuleView, PeriodicComplex, StableComparison,
};
pub use exec::Exec;
pub use field::{FieldSpec, Scalar};
pub use format::parse_mf;
pub use inverse::{annihilator_slice, contract, matrix_cokernel_slice, matrix_kernel_slice, DualSlice};
pub use matrix::PolyMatrix;
pub use mf::{HilbertTable, MatrixFactorization, MfError, ValidationReport};
pub use monomial::{e_dim, DualMonomial, Monomial};
pub use parse::parse_poly;
pub use poly::{Homogeneity, Polynomial};
pub use verify::{generate_instance, radical_normalizer, run_suite, InstanceSpec, Recipe, Suite, VerifyReport};
