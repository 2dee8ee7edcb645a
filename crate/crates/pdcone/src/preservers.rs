//! Transformations of the positive definite cone and an empirical
//! divergence-preservation checker.
//!
//! Two families are represented. A [`CongruenceMap`] sends `A` to `T A T*`
//! for an invertible `T`, optionally conjugating the entries of `A` first
//! (which models the conjugate-linear case: every conjugate-linear operator
//! factors as entrywise conjugation followed by a linear congruence in a
//! fixed basis). An [`ExpLogMap`] sends `A` to `exp(T (log A) T* + X)` for
//! invertible `T` and Hermitian `X`; the image is always positive definite
//! since the exponent is Hermitian.
//!
//! [`check_preserves`] samples random pairs and compares `D(phi A, phi B)`
//! against `D(A, B)`, reporting the worst deviation and the first
//! counterexample beyond tolerance. Trial-to-seed assignment is
//! deterministic (seed plus trial index), so reports are reproducible.

use thiserror::Error;

use crate::divergences::{DivergenceError, DivergenceSpec};
use crate::matcore::{
    self, matrix_exp, matrix_log, singular_values, ComplexMatrix, HermitianMatrix, MatError,
    PDMatrix,
};

#[derive(Debug, Clone, Error)]
pub enum PreserverError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Divergence(#[from] DivergenceError),
    #[error("transformation matrix is singular: smallest singular value {smallest:.3e} vs largest {largest:.3e}")]
    SingularTransform { smallest: f64, largest: f64 },
    #[error("dimension mismatch: map acts on {map_dim}, argument has {arg_dim}")]
    DimensionMismatch { map_dim: usize, arg_dim: usize },
}

fn check_invertible(t: &ComplexMatrix) -> Result<(), PreserverError> {
    let sv = singular_values(t)?;
    let smallest = sv[0];
    let largest = *sv.last().expect("dimension at least 1");
    if smallest <= 1e-12 * largest {
        return Err(PreserverError::SingularTransform { smallest, largest });
    }
    Ok(())
}

/// The congruence `A -> T A T*`, conjugating entries first when
/// `conjugate_first` is set.
#[derive(Clone, Debug)]
pub struct CongruenceMap {
    t: ComplexMatrix,
    conjugate_first: bool,
}

impl CongruenceMap {
    pub fn new(t: ComplexMatrix, conjugate_first: bool) -> Result<Self, PreserverError> {
        check_invertible(&t)?;
        Ok(Self { t, conjugate_first })
    }

    /// Unitary congruence with a seeded random unitary.
    pub fn random_unitary(dim: usize, seed: u64, conjugate_first: bool) -> Self {
        Self {
            t: matcore::random_unitary(dim, seed),
            conjugate_first,
        }
    }

    pub fn transform(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn conjugate_first(&self) -> bool {
        self.conjugate_first
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn apply(&self, a: &PDMatrix) -> Result<PDMatrix, PreserverError> {
        if a.dim() != self.dim() {
            return Err(PreserverError::DimensionMismatch {
                map_dim: self.dim(),
                arg_dim: a.dim(),
            });
        }
        let base = if self.conjugate_first {
            a.matrix().conjugate()
        } else {
            a.matrix().clone()
        };
        let raw = &(&self.t * &base) * &self.t.adjoint();
        Ok(PDMatrix::new(HermitianMatrix::symmetrize(raw))?)
    }

    /// The inverse congruence. For the linear case this is congruence by
    /// `T^{-1}`; for the conjugate-linear case, by `conj(T^{-1})` with the
    /// entrywise conjugation retained.
    pub fn inverse(&self) -> Result<Self, PreserverError> {
        let t_inv = self.t.inverse()?;
        let t = if self.conjugate_first {
            t_inv.conjugate()
        } else {
            t_inv
        };
        Ok(Self {
            t,
            conjugate_first: self.conjugate_first,
        })
    }
}

/// The transformation `A -> exp(T (log A) T* + X)`.
#[derive(Clone, Debug)]
pub struct ExpLogMap {
    t: ComplexMatrix,
    x: HermitianMatrix,
}

impl ExpLogMap {
    pub fn new(t: ComplexMatrix, x: HermitianMatrix) -> Result<Self, PreserverError> {
        check_invertible(&t)?;
        if t.dim() != x.dim() {
            return Err(PreserverError::DimensionMismatch {
                map_dim: t.dim(),
                arg_dim: x.dim(),
            });
        }
        Ok(Self { t, x })
    }

    pub fn transform(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn offset(&self) -> &HermitianMatrix {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn apply(&self, a: &PDMatrix) -> Result<PDMatrix, PreserverError> {
        if a.dim() != self.dim() {
            return Err(PreserverError::DimensionMismatch {
                map_dim: self.dim(),
                arg_dim: a.dim(),
            });
        }
        let log_a = matrix_log(a);
        let conjugated = &(&self.t * log_a.matrix()) * &self.t.adjoint();
        let exponent = HermitianMatrix::symmetrize(conjugated).add(&self.x);
        Ok(matrix_exp(&exponent)?)
    }

    /// The inverse map `A -> exp(T^{-1} (log A) T^{-*} - T^{-1} X T^{-*})`.
    pub fn inverse(&self) -> Result<Self, PreserverError> {
        let t_inv = self.t.inverse()?;
        let moved = &(&t_inv * self.x.matrix()) * &t_inv.adjoint();
        let x = HermitianMatrix::symmetrize(moved).scale(-1.0);
        Ok(Self { t: t_inv, x })
    }
}

/// Either transformation family, for uniform checking.
#[derive(Clone, Debug)]
pub enum PreserverMap {
    Congruence(CongruenceMap),
    ExpLog(ExpLogMap),
}

impl PreserverMap {
    pub fn apply(&self, a: &PDMatrix) -> Result<PDMatrix, PreserverError> {
        match self {
            Self::Congruence(m) => m.apply(a),
            Self::ExpLog(m) => m.apply(a),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Congruence(m) => m.dim(),
            Self::ExpLog(m) => m.dim(),
        }
    }
}

/// Polar decomposition `T = U P` with `U` unitary and `P = sqrt(T* T)`
/// positive definite. Fails on singular `T`.
pub fn polar_decompose(t: &ComplexMatrix) -> Result<(ComplexMatrix, PDMatrix), PreserverError> {
    check_invertible(t)?;
    let gram = PDMatrix::new(HermitianMatrix::symmetrize(&t.adjoint() * t))?;
    let p = gram.sqrt();
    let u = t * p.inverse().matrix();
    Ok((u, p))
}

/// One divergence-preservation counterexample.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub a: PDMatrix,
    pub b: PDMatrix,
    pub original: f64,
    pub transformed: f64,
}

/// Outcome of an empirical preservation check.
#[derive(Clone, Debug)]
pub struct PreserveReport {
    pub trials: usize,
    pub max_deviation: f64,
    pub pass: bool,
    pub first_counterexample: Option<Counterexample>,
}

/// Samples `trials` random PD pairs with spectra in `[0.1, 10]` and compares
/// the divergence before and after the map. Passing means every deviation
/// stayed within `tol`; otherwise the first offending pair is reported.
pub fn check_preserves(
    spec: &DivergenceSpec,
    map: &PreserverMap,
    dim: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<PreserveReport, PreserverError> {
    assert!(trials >= 1, "at least one trial is required");
    let mut max_deviation = 0.0f64;
    let mut first_counterexample = None;
    for trial in 0..trials as u64 {
        let base = seed.wrapping_mul(0x517c_c1b7_2722_0a95).wrapping_add(trial);
        let a = matcore::random_pd(dim, base ^ 0x1, 0.1, 10.0)?;
        let b = matcore::random_pd(dim, base ^ 0x2, 0.1, 10.0)?;
        let original = spec.evaluate(&a, &b)?.value();
        let transformed = spec.evaluate(&map.apply(&a)?, &map.apply(&b)?)?.value();
        let deviation = (transformed - original).abs();
        if deviation > max_deviation {
            max_deviation = deviation;
        }
        if deviation > tol && first_counterexample.is_none() {
            first_counterexample = Some(Counterexample {
                a,
                b,
                original,
                transformed,
            });
        }
    }
    Ok(PreserveReport {
        trials,
        max_deviation,
        pass: first_counterexample.is_none(),
        first_counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pd(values: &[f64]) -> PDMatrix {
        PDMatrix::from_diag(values).unwrap()
    }

    #[test]
    fn identity_congruence_is_identity() {
        let m = CongruenceMap::new(ComplexMatrix::identity(2), false).unwrap();
        let a = matcore::random_pd(2, 4, 0.5, 5.0).unwrap();
        let out = m.apply(&a).unwrap();
        assert!(out.matrix().dist(a.matrix()) < 1e-12);
    }

    #[test]
    fn diagonal_congruence_scales() {
        let t = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let m = CongruenceMap::new(t, false).unwrap();
        let out = m.apply(&PDMatrix::identity(2)).unwrap();
        assert!(out.matrix().dist(pd(&[1.0, 4.0]).matrix()) < 1e-12);
    }

    #[test]
    fn conjugation_flips_imaginary_parts() {
        let entries = vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)];
        let a = PDMatrix::new(
            HermitianMatrix::new(ComplexMatrix::new(2, entries).unwrap()).unwrap(),
        )
        .unwrap();
        let m = CongruenceMap::new(ComplexMatrix::identity(2), true).unwrap();
        let out = m.apply(&a).unwrap();
        assert!((out.matrix().get(0, 1) - c(0.0, -1.0)).norm() < 1e-14);
        assert!((out.matrix().get(1, 0) - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_transform_rejected() {
        let t = ComplexMatrix::from_real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            CongruenceMap::new(t, false),
            Err(PreserverError::SingularTransform { .. })
        ));
    }

    #[test]
    fn explog_basic_values() {
        // T = I, X = 0: the identity map.
        let m = ExpLogMap::new(ComplexMatrix::identity(2), HermitianMatrix::zero(2)).unwrap();
        let a = matcore::random_pd(2, 8, 0.5, 5.0).unwrap();
        assert!(m.apply(&a).unwrap().matrix().dist(a.matrix()) < 1e-10);

        // T = I, X = I on the identity: e * I.
        let m = ExpLogMap::new(ComplexMatrix::identity(2), HermitianMatrix::identity(2)).unwrap();
        let out = m.apply(&PDMatrix::identity(2)).unwrap();
        assert!(out.matrix().dist(&ComplexMatrix::diag_real(&[E, E])) < 1e-12);

        // 1x1: T = sqrt(2), A = e gives exp(2 log e) = e^2.
        let m = ExpLogMap::new(
            ComplexMatrix::diag_real(&[2f64.sqrt()]),
            HermitianMatrix::zero(1),
        )
        .unwrap();
        let out = m.apply(&pd(&[E])).unwrap();
        assert!((out.matrix().get(0, 0).re - E * E).abs() < 1e-10);
    }

    #[test]
    fn explog_with_unitary_t_matches_congruence() {
        let u = matcore::random_unitary(3, 31);
        let explog = ExpLogMap::new(u.clone(), HermitianMatrix::zero(3)).unwrap();
        let congruence = CongruenceMap::new(u, false).unwrap();
        let a = matcore::random_pd(3, 32, 0.5, 5.0).unwrap();
        let via_explog = explog.apply(&a).unwrap();
        let via_congruence = congruence.apply(&a).unwrap();
        assert!(via_explog.matrix().dist(via_congruence.matrix()) < 1e-9);
    }

    #[test]
    fn polar_decomposition_cases() {
        // Already unitary: P = I.
        let u0 = matcore::random_unitary(3, 40);
        let (u, p) = polar_decompose(&u0).unwrap();
        assert!(p.matrix().dist(&ComplexMatrix::identity(3)) < 1e-10);
        assert!(u.dist(&u0) < 1e-10);

        // Already positive: U = I.
        let t = ComplexMatrix::diag_real(&[2.0, 3.0]);
        let (u, p) = polar_decompose(&t).unwrap();
        assert!(u.dist(&ComplexMatrix::identity(2)) < 1e-12);
        assert!(p.matrix().dist(&t) < 1e-12);

        // Sign/modulus split in 1x1.
        let t = ComplexMatrix::diag_real(&[-2.0]);
        let (u, p) = polar_decompose(&t).unwrap();
        assert!((u.get(0, 0) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((p.matrix().get(0, 0).re - 2.0).abs() < 1e-12);

        // General invertible T: T = U P with U unitary.
        let t = ComplexMatrix::new(
            2,
            vec![c(1.0, 0.5), c(-0.3, 1.0), c(2.0, 0.0), c(0.2, -0.7)],
        )
        .unwrap();
        let (u, p) = polar_decompose(&t).unwrap();
        let recomposed = &u * p.matrix();
        assert!(recomposed.dist(&t) <= 1e-9 * t.frobenius_norm());
        let gram = &u.adjoint() * &u;
        assert!(gram.dist(&ComplexMatrix::identity(2)) < 1e-9);
    }

    #[test]
    fn congruence_factors_through_polar_parts() {
        let t = ComplexMatrix::new(
            2,
            vec![c(1.0, 0.2), c(0.4, -0.1), c(-0.3, 0.8), c(1.5, 0.0)],
        )
        .unwrap();
        let (u, p) = polar_decompose(&t).unwrap();
        let whole = CongruenceMap::new(t, false).unwrap();
        let by_p = CongruenceMap::new(p.matrix().clone(), false).unwrap();
        let by_u = CongruenceMap::new(u, false).unwrap();
        let a = matcore::random_pd(2, 50, 0.5, 5.0).unwrap();
        let direct = whole.apply(&a).unwrap();
        let factored = by_u.apply(&by_p.apply(&a).unwrap()).unwrap();
        assert!(direct.matrix().dist(factored.matrix()) < 1e-9);
    }

    #[test]
    fn inverse_laws_roundtrip() {
        let t = ComplexMatrix::new(
            2,
            vec![c(1.0, 0.3), c(0.2, -0.4), c(-0.5, 0.1), c(1.2, 0.0)],
        )
        .unwrap();
        let a = matcore::random_pd(2, 60, 0.5, 5.0).unwrap();

        for conjugate_first in [false, true] {
            let m = CongruenceMap::new(t.clone(), conjugate_first).unwrap();
            let back = m.inverse().unwrap().apply(&m.apply(&a).unwrap()).unwrap();
            assert!(
                back.matrix().dist(a.matrix()) <= 1e-8 * a.hermitian().frobenius_norm(),
                "conjugate_first = {conjugate_first}"
            );
        }

        let x = matcore::random_hermitian(2, 61, 0.5);
        let m = ExpLogMap::new(t, x).unwrap();
        let back = m.inverse().unwrap().apply(&m.apply(&a).unwrap()).unwrap();
        assert!(back.matrix().dist(a.matrix()) <= 1e-8 * a.hermitian().frobenius_norm());
    }

    #[test]
    fn check_preserves_stein_under_diagonal_congruence() {
        let spec: DivergenceSpec = "stein".parse().unwrap();
        let map = PreserverMap::Congruence(
            CongruenceMap::new(ComplexMatrix::diag_real(&[1.0, 2.0]), false).unwrap(),
        );
        let report = check_preserves(&spec, &map, 2, 50, 7, 1e-9).unwrap();
        assert!(report.pass, "max deviation {}", report.max_deviation);
    }

    #[test]
    fn check_preserves_finds_power_two_counterexample() {
        let spec: DivergenceSpec = "bregman:power:2".parse().unwrap();
        let map = PreserverMap::Congruence(
            CongruenceMap::new(ComplexMatrix::diag_real(&[1.0, 2.0]), false).unwrap(),
        );
        let report = check_preserves(&spec, &map, 2, 50, 7, 1e-8).unwrap();
        assert!(!report.pass);
        assert!(report.max_deviation > 0.1);
        assert!(report.first_counterexample.is_some());

        // The hand-checkable pair: A = I, B = 2I maps to 17 vs 2.
        let a = PDMatrix::identity(2);
        let b = pd(&[2.0, 2.0]);
        let original = spec.evaluate(&a, &b).unwrap().value();
        let transformed = spec
            .evaluate(
                &map.apply(&a).unwrap(),
                &map.apply(&b).unwrap(),
            )
            .unwrap()
            .value();
        assert!((original - 2.0).abs() < 1e-12);
        assert!((transformed - 17.0).abs() < 1e-12);
    }

    #[test]
    fn check_preserves_umegaki_under_unitary() {
        let spec: DivergenceSpec = "umegaki".parse().unwrap();
        let map = PreserverMap::Congruence(CongruenceMap::random_unitary(3, 70, false));
        let report = check_preserves(&spec, &map, 3, 30, 8, 1e-8).unwrap();
        assert!(report.pass, "max deviation {}", report.max_deviation);
    }
}
