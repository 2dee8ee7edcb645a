//! The Loewner partial order on Hermitian matrices.

use super::eig::eig_hermitian;
use super::hermitian::HermitianMatrix;

/// Tests `B <= C` in the Loewner order: `C - B` is positive semidefinite.
///
/// Numerically, true iff `lambda_min(C - B) >= -tol * max(1, ||C - B||_F)`.
/// Panics if the dimensions differ.
pub fn loewner_leq(b: &HermitianMatrix, c: &HermitianMatrix, tol: f64) -> bool {
    assert_eq!(b.dim(), c.dim(), "matrix dimensions differ");
    let diff = c.sub(b);
    let d = eig_hermitian(&diff).expect("Jacobi converges on Hermitian input");
    let lambda_min = d.eigenvalues()[0];
    lambda_min >= -tol * diff.frobenius_norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_diagonals() {
        let b = HermitianMatrix::from_diag(&[1.0, 1.0]);
        let c = HermitianMatrix::from_diag(&[2.0, 3.0]);
        assert!(loewner_leq(&b, &c, 0.0));
        assert!(!loewner_leq(&c, &b, 1e-10));
    }

    #[test]
    fn incomparable_pair() {
        let b = HermitianMatrix::from_diag(&[2.0, 0.5]);
        let c = HermitianMatrix::identity(2);
        assert!(!loewner_leq(&b, &c, 1e-10)); // eigenvalue 2 > 1
        assert!(!loewner_leq(&c, &b, 1e-10));
    }

    #[test]
    fn reflexive() {
        let b = HermitianMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert!(loewner_leq(&b, &b, 0.0));
    }
}
