//! Complex Hermitian matrix arithmetic at desk scale.
//!
//! Everything downstream (divergences, order probes, preserver maps) reduces
//! to a handful of primitives collected here: a dense complex matrix type,
//! Hermitian/positive-definite wrappers with validated invariants, a cyclic
//! Jacobi eigensolver, matrix functional calculus `f(A) = U f(Λ) U*`,
//! unitarily invariant norms, the Loewner order test, and seeded random
//! generation of unitaries and positive definite matrices.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the whole module is safe to use from concurrent threads.

mod calculus;
mod complex;
mod eig;
mod hermitian;
mod norms;
mod order;
mod random;

pub use calculus::{
    apply_function, logdet, matrix_exp, matrix_log, matrix_sqrt, real_trace_product, whiten,
};
pub use complex::{projector, vec_inner, vec_norm, ComplexMatrix};
pub use eig::{eig_hermitian, EigenDecomposition};
pub use hermitian::{HermitianMatrix, PDMatrix};
pub use norms::{singular_values, uinorm, uinorm_hermitian, NormKind};
pub use order::loewner_leq;
pub use random::{random_hermitian, random_pd, random_psd, random_unit_vector, random_unitary};

use thiserror::Error;

/// Errors produced by matrix construction and the linear-algebra kernels.
#[derive(Debug, Clone, Error)]
pub enum MatError {
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,
    #[error("entry count {got} does not match dim {dim} (expected {expected})")]
    EntryCount { dim: usize, got: usize, expected: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian: |A[{i},{j}] - conj(A[{j},{i}])| = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { i: usize, j: usize, deviation: f64, tolerance: f64 },
    #[error("matrix is not positive definite: smallest eigenvalue {lambda_min:.6e} is below threshold {threshold:.3e}")]
    NotPositiveDefinite { lambda_min: f64, threshold: f64 },
    #[error("eigenvalue {eigenvalue:.6e} lies outside the domain of the scalar function")]
    FunctionDomain { eigenvalue: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NonConvergence { sweeps: usize, off: f64 },
    #[error("matrix is singular or too ill-conditioned to invert")]
    Singular,
    #[error("invalid spectrum range: need 0 < lo <= hi, got [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("trace of a product of Hermitian matrices has non-real part {imaginary:.3e} beyond tolerance {tolerance:.3e}")]
    NonRealTrace { imaginary: f64, tolerance: f64 },
}

/// Threshold below which a candidate eigenvalue disqualifies a matrix from
/// the positive definite cone: `lambda_min > 1e-12 * max(1, |lambda|_max)`.
pub(crate) fn pd_threshold(abs_lambda_max: f64) -> f64 {
    1e-12 * abs_lambda_max.max(1.0)
}
