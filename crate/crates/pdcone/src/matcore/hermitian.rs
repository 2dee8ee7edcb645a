//! Hermitian and positive definite matrix wrappers with validated invariants.

use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::eig::{eig_hermitian, EigenDecomposition};
use super::{pd_threshold, MatError};

/// A Hermitian matrix. Construction checks conjugate symmetry within
/// `1e-12 * max|entry|` and then symmetrizes exactly, so stored entries
/// satisfy `A[i][j] == conj(A[j][i])` bit for bit and the diagonal is real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, MatError> {
        let n = m.dim();
        let tolerance = 1e-12 * m.max_abs_entry();
        for i in 0..n {
            for j in i..n {
                let deviation = (m.get(i, j) - m.get(j, i).conj()).norm();
                if deviation > tolerance {
                    return Err(MatError::NotHermitian {
                        i,
                        j,
                        deviation,
                        tolerance,
                    });
                }
            }
        }
        Ok(Self::symmetrize(m))
    }

    /// Exact symmetrization `(A + A*) / 2`; skips the Hermitian check.
    pub fn symmetrize(m: ComplexMatrix) -> Self {
        let n = m.dim();
        let inner = ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(m.get(i, i).re, 0.0)
            } else {
                (m.get(i, j) + m.get(j, i).conj()) * 0.5
            }
        });
        Self { inner }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            inner: ComplexMatrix::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(dim),
        }
    }

    pub fn from_diag(values: &[f64]) -> Self {
        Self {
            inner: ComplexMatrix::diag_real(values),
        }
    }

    /// Real symmetric data given by rows; panics if the rows are not symmetric.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let m = ComplexMatrix::from_real(rows);
        Self::new(m).expect("rows must form a symmetric matrix")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner.get(i, j)
    }

    /// Real trace (the diagonal is exactly real by construction).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            inner: &self.inner - &other.inner,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    /// Entrywise conjugate (equals the transpose; still Hermitian).
    pub fn conjugate(&self) -> Self {
        Self {
            inner: self.inner.conjugate(),
        }
    }

    /// Quadratic form `<A x, x>`, real for Hermitian `A`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        let ax = self.inner.mul_vec(x);
        super::complex::vec_inner(x, &ax).re
    }
}

/// A positive definite Hermitian matrix. Construction eigendecomposes the
/// matrix, requires `lambda_min > 1e-12 * max(1, |lambda|_max)` and caches
/// the decomposition for the functional-calculus operations downstream.
#[derive(Clone, Debug)]
pub struct PDMatrix {
    herm: HermitianMatrix,
    eig: EigenDecomposition,
}

impl PDMatrix {
    pub fn new(herm: HermitianMatrix) -> Result<Self, MatError> {
        let eig = eig_hermitian(&herm)?;
        let lambda_min = eig.eigenvalues()[0];
        let abs_max = eig
            .eigenvalues()
            .iter()
            .fold(0.0f64, |m, &l| m.max(l.abs()));
        let threshold = pd_threshold(abs_max);
        if lambda_min <= threshold {
            return Err(MatError::NotPositiveDefinite {
                lambda_min,
                threshold,
            });
        }
        Ok(Self { herm, eig })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(HermitianMatrix::identity(dim)).expect("identity is positive definite")
    }

    pub fn from_diag(values: &[f64]) -> Result<Self, MatError> {
        Self::new(HermitianMatrix::from_diag(values))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.herm.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.herm
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.herm.matrix()
    }

    pub fn eig(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.eig.eigenvalues()
    }

    pub fn trace(&self) -> f64 {
        self.herm.trace()
    }

    /// Scales by `t > 0`; the spectrum scales by `t` and the eigenvectors
    /// are unchanged, so no re-decomposition is needed.
    pub fn scale(&self, t: f64) -> Self {
        assert!(t > 0.0, "scale factor must be positive");
        Self {
            herm: self.herm.scale(t),
            eig: self.eig.scale(t),
        }
    }

    /// Entrywise conjugate; the spectrum is unchanged.
    pub fn conjugate(&self) -> Self {
        Self::new(self.herm.conjugate()).expect("conjugate of a PD matrix is PD")
    }

    /// `A^{-1}` through the cached spectral decomposition.
    pub fn inverse(&self) -> Self {
        self.spectral_map(|l| 1.0 / l)
    }

    /// `A^{1/2}` through the cached spectral decomposition.
    pub fn sqrt(&self) -> Self {
        self.spectral_map(f64::sqrt)
    }

    /// `A^{-1/2}` through the cached spectral decomposition.
    pub fn inv_sqrt(&self) -> Self {
        self.spectral_map(|l| 1.0 / l.sqrt())
    }

    fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let mapped = self.eig.apply_scalar(&f);
        Self::new(mapped).expect("positive spectral map of a PD matrix stays PD")
    }
}
