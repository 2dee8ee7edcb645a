//! Matrix functional calculus `f(A) = U f(Lambda) U*` and the derived maps
//! (exp, log, sqrt, whitening, log-determinant, traces of products).

use super::complex::ComplexMatrix;
use super::eig::eig_hermitian;
use super::hermitian::{HermitianMatrix, PDMatrix};
use super::MatError;

/// Applies a scalar function to a Hermitian matrix through its spectrum.
///
/// The closure returns `None` for arguments outside the function's domain,
/// which surfaces as [`MatError::FunctionDomain`] naming the offending
/// eigenvalue. The result commutes with `A` and is exactly Hermitian.
pub fn apply_function(
    a: &HermitianMatrix,
    f: impl Fn(f64) -> Option<f64>,
) -> Result<HermitianMatrix, MatError> {
    let decomposition = eig_hermitian(a)?;
    let mut mapped = Vec::with_capacity(decomposition.dim());
    for &lambda in decomposition.eigenvalues() {
        match f(lambda) {
            Some(v) if v.is_finite() => mapped.push(v),
            _ => return Err(MatError::FunctionDomain { eigenvalue: lambda }),
        }
    }
    Ok(decomposition.rebuild_with(&mapped))
}

/// `e^H` for Hermitian `H`; always positive definite.
pub fn matrix_exp(h: &HermitianMatrix) -> Result<PDMatrix, MatError> {
    let exp = apply_function(h, |x| Some(x.exp()))?;
    PDMatrix::new(exp)
}

/// `log A` for positive definite `A`, through the cached decomposition.
pub fn matrix_log(a: &PDMatrix) -> HermitianMatrix {
    a.eig().apply_scalar(f64::ln)
}

/// `A^{1/2}` for positive definite `A`.
pub fn matrix_sqrt(a: &PDMatrix) -> PDMatrix {
    a.sqrt()
}

/// `log det A = sum of log eigenvalues` (equivalently `tr log A`).
pub fn logdet(a: &PDMatrix) -> f64 {
    a.eigenvalues().iter().map(|&l| l.ln()).sum()
}

/// The whitened matrix `Y^{-1/2} X Y^{-1/2}`.
///
/// Positive definite, and similar to `X Y^{-1}` (hence the same spectrum);
/// equals the identity exactly when `X == Y` up to roundoff.
pub fn whiten(x: &PDMatrix, y: &PDMatrix) -> Result<PDMatrix, MatError> {
    if x.dim() != y.dim() {
        return Err(MatError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let isqrt = y.inv_sqrt();
    let raw = &(isqrt.matrix() * x.matrix()) * isqrt.matrix();
    PDMatrix::new(HermitianMatrix::symmetrize(raw))
}

/// `Re tr(A B)` for Hermitian `A`, `B`, with an internal check that the
/// imaginary part is roundoff-sized (`<= 1e-10 * scale`): the product of two
/// Hermitian matrices need not be Hermitian but its trace is always real.
pub fn real_trace_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64, MatError> {
    if a.dim() != b.dim() {
        return Err(MatError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim();
    let mut re = 0.0;
    let mut im = 0.0;
    for i in 0..n {
        for j in 0..n {
            let z = a.get(i, j) * b.get(j, i);
            re += z.re;
            im += z.im;
        }
    }
    let tolerance = 1e-10 * (1.0 + a.frobenius_norm() * b.frobenius_norm());
    if im.abs() > tolerance {
        return Err(MatError::NonRealTrace {
            imaginary: im,
            tolerance,
        });
    }
    Ok(re)
}

#[allow(dead_code)]
pub(crate) fn identity_check(m: &ComplexMatrix, tol: f64) -> bool {
    m.dist(&ComplexMatrix::identity(m.dim())) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn log_of_diagonal() {
        let a = HermitianMatrix::from_diag(&[1.0, E]);
        let r = apply_function(&a, |x| if x > 0.0 { Some(x.ln()) } else { None }).unwrap();
        assert!((r.get(0, 0).re - 0.0).abs() < 1e-14);
        assert!((r.get(1, 1).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn square_matches_hand_product() {
        let a = HermitianMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = apply_function(&a, |x| Some(x * x)).unwrap();
        let expected = HermitianMatrix::from_real(&[&[5.0, 4.0], &[4.0, 5.0]]);
        assert!(r.matrix().dist(expected.matrix()) < 1e-12);
    }

    #[test]
    fn identity_function_returns_input() {
        let a = HermitianMatrix::from_real(&[&[3.0, -1.0], &[-1.0, 0.5]]);
        let r = apply_function(&a, Some).unwrap();
        assert!(r.matrix().dist(a.matrix()) < 1e-12);
    }

    #[test]
    fn domain_error_names_eigenvalue() {
        let a = HermitianMatrix::from_diag(&[2.0, -3.0]);
        let err = apply_function(&a, |x| if x > 0.0 { Some(x.ln()) } else { None }).unwrap_err();
        match err {
            MatError::FunctionDomain { eigenvalue } => assert!((eigenvalue + 3.0).abs() < 1e-12),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn result_commutes_with_input() {
        let a = HermitianMatrix::from_real(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 0.5], &[0.0, 0.5, 1.0]]);
        let fa = apply_function(&a, |x| Some(x.exp())).unwrap();
        let left = a.matrix() * fa.matrix();
        let right = fa.matrix() * a.matrix();
        let scale = a.frobenius_norm() * fa.frobenius_norm();
        assert!(left.dist(&right) <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn exp_log_roundtrip() {
        let p = PDMatrix::from_diag(&[0.5, 2.0, 7.0]).unwrap();
        let back = matrix_exp(&matrix_log(&p)).unwrap();
        assert!(back.matrix().dist(p.matrix()) < 1e-8 * p.hermitian().frobenius_norm());
    }

    #[test]
    fn logdet_values() {
        assert!((logdet(&PDMatrix::identity(4))).abs() < 1e-14);
        let p = PDMatrix::from_diag(&[E, E * E]).unwrap();
        assert!((logdet(&p) - 3.0).abs() < 1e-12);
        let q = PDMatrix::from_diag(&[2.0, 0.5]).unwrap();
        assert!(logdet(&q).abs() < 1e-14);
        // tr log A route agrees.
        let tr_log: f64 = matrix_log(&q).trace();
        assert!((logdet(&q) - tr_log).abs() < 1e-9);
    }

    #[test]
    fn whiten_basics() {
        let x = PDMatrix::from_diag(&[4.0, 9.0]).unwrap();
        let id = PDMatrix::identity(2);
        let w = whiten(&x, &id).unwrap();
        assert!(w.matrix().dist(x.matrix()) < 1e-12);

        let same = whiten(&x, &x).unwrap();
        assert!(same.matrix().dist(&ComplexMatrix::identity(2)) < 1e-12);

        let a = PDMatrix::from_diag(&[8.0]).unwrap();
        let b = PDMatrix::from_diag(&[2.0]).unwrap();
        let s = whiten(&a, &b).unwrap();
        assert!((s.matrix().get(0, 0).re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn whiten_dimension_mismatch() {
        let x = PDMatrix::identity(2);
        let y = PDMatrix::identity(3);
        assert!(matches!(
            whiten(&x, &y),
            Err(MatError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_product_of_diagonals() {
        let a = HermitianMatrix::from_diag(&[1.0, 2.0]);
        let b = HermitianMatrix::from_diag(&[3.0, -4.0]);
        assert!((real_trace_product(&a, &b).unwrap() - (3.0 - 8.0)).abs() < 1e-14);
    }
}
