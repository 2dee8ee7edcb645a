//! Unitarily invariant norms: trace, Frobenius, operator.

use super::complex::ComplexMatrix;
use super::eig::eig_hermitian;
use super::hermitian::HermitianMatrix;
use super::MatError;

/// Selector for the three unitarily invariant norms the crate ships.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// Sum of singular values (Schatten 1).
    Trace,
    /// Hilbert-Schmidt norm, `sqrt(sum |a_ij|^2)` (Schatten 2).
    Frobenius,
    /// Largest singular value (Schatten infinity).
    Operator,
}

impl NormKind {
    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Trace => "trace",
            NormKind::Frobenius => "frobenius",
            NormKind::Operator => "operator",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trace" | "tr" | "1" => Some(NormKind::Trace),
            "frobenius" | "fro" | "2" => Some(NormKind::Frobenius),
            "operator" | "op" | "inf" => Some(NormKind::Operator),
            _ => None,
        }
    }
}

/// Singular values in ascending order, via the spectrum of `A* A`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, MatError> {
    let gram = HermitianMatrix::symmetrize(&a.adjoint() * a);
    let d = eig_hermitian(&gram)?;
    Ok(d.eigenvalues().iter().map(|&l| l.max(0.0).sqrt()).collect())
}

/// Evaluates a unitarily invariant norm of a square complex matrix.
pub fn uinorm(kind: NormKind, a: &ComplexMatrix) -> Result<f64, MatError> {
    match kind {
        NormKind::Frobenius => Ok(a.frobenius_norm()),
        NormKind::Trace => Ok(singular_values(a)?.iter().sum()),
        NormKind::Operator => {
            let sv = singular_values(a)?;
            Ok(*sv.last().expect("dimension is at least 1"))
        }
    }
}

/// Same norms for Hermitian input, where the singular values are the
/// absolute eigenvalues; skips the Gram matrix and its squared condition
/// number.
pub fn uinorm_hermitian(kind: NormKind, a: &HermitianMatrix) -> Result<f64, MatError> {
    match kind {
        NormKind::Frobenius => Ok(a.frobenius_norm()),
        NormKind::Trace => {
            let d = eig_hermitian(a)?;
            Ok(d.eigenvalues().iter().map(|l| l.abs()).sum())
        }
        NormKind::Operator => {
            let d = eig_hermitian(a)?;
            Ok(d.eigenvalues().iter().fold(0.0f64, |m, &l| m.max(l.abs())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_norm_sums_absolute_eigenvalues() {
        let a = ComplexMatrix::diag_real(&[2.0, -3.0]);
        assert!((uinorm(NormKind::Trace, &a).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn frobenius_of_ones() {
        let a = ComplexMatrix::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!((uinorm(NormKind::Frobenius, &a).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_is_max_singular_value() {
        let a = ComplexMatrix::diag_real(&[2.0, -3.0]);
        assert!((uinorm(NormKind::Operator, &a).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn norms_are_absolutely_homogeneous() {
        let a = ComplexMatrix::from_real(&[&[1.0, 2.0], &[0.0, -1.0]]);
        for kind in [NormKind::Trace, NormKind::Frobenius, NormKind::Operator] {
            let n1 = uinorm(kind, &a).unwrap();
            let n2 = uinorm(kind, &a.scale(-2.5)).unwrap();
            assert!((n2 - 2.5 * n1).abs() < 1e-10 * (1.0 + n1));
        }
    }

    #[test]
    fn hermitian_route_matches_general_route() {
        let a = crate::matcore::random_hermitian(4, 77, 2.0);
        for kind in [NormKind::Trace, NormKind::Frobenius, NormKind::Operator] {
            let general = uinorm(kind, a.matrix()).unwrap();
            let herm = uinorm_hermitian(kind, &a).unwrap();
            assert!((general - herm).abs() <= 1e-10 * (1.0 + general));
        }
    }

    #[test]
    fn parse_aliases() {
        assert_eq!(NormKind::parse("tr"), Some(NormKind::Trace));
        assert_eq!(NormKind::parse("fro"), Some(NormKind::Frobenius));
        assert_eq!(NormKind::parse("operator"), Some(NormKind::Operator));
        assert_eq!(NormKind::parse("nuclear"), None);
    }
}
