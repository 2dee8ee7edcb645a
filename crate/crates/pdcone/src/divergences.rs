//! Divergence evaluations on the positive definite cone.
//!
//! From a convex generator `f` this module evaluates
//!
//! ```text
//! Bregman:      H_f(X, Y) = tr( f(X) - f(Y) - f'(Y)(X - Y) )
//! Jensen:       J_{f,l}(X, Y) = tr( l f(X) + (1-l) f(Y) - f(l X + (1-l) Y) )
//! symmetrized:  H_f(A, B) + H_f(B, A) = tr( (f'(A) - f'(B)) (A - B) )
//! ```
//!
//! together with the whitened-norm distance measure
//! `d_{N,g}(X, Y) = N(g(Y^{-1/2} X Y^{-1/2}))` and three independent closed
//! forms: Stein's loss `tr XY^{-1} - log det XY^{-1} - n`, the quantum
//! relative entropy `tr(A(log A - log B) - (A - B))`, and the
//! log-determinant divergence `log det(l X + (1-l) Y) - l log det X -
//! (1-l) log det Y`. The closed forms double as oracles: each one must agree
//! with the generator route it shadows, and the test suites hold them to it.
//!
//! Bregman and Jensen evaluations accept positive *semi*definite inputs when
//! the generator carries the finite limits needed at the spectrum boundary
//! (`limit_at_zero` for Jensen, both limits for Bregman): eigenvalues that
//! are zero up to the positive-definiteness threshold are snapped to exactly
//! zero and the declared limit is substituted, while any positive eigenvalue
//! is evaluated directly.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::generators::{parse_gauge, parse_generator, ConvexGenerator, GaugeFunction, GeneratorError};
use crate::matcore::{
    self, eig_hermitian, logdet, real_trace_product, uinorm_hermitian, whiten, HermitianMatrix,
    MatError, NormKind, PDMatrix,
};

/// Values in `[-1e-9, 0)` are treated as roundoff and clamped to zero;
/// anything more negative signals an implementation bug, not noise.
pub const NEGATIVE_CLAMP: f64 = -1e-9;

#[derive(Debug, Clone, Error)]
pub enum DivergenceError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("jensen weight must lie in (0, 1), got {0}")]
    LambdaOutOfRange(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator '{generator}' lacks the finite {which} limit at 0 required for a boundary eigenvalue")]
    BoundaryLimitMissing { generator: String, which: &'static str },
    #[error("matrix has eigenvalue {eigenvalue:.6e} below the semidefinite tolerance -{tolerance:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64, tolerance: f64 },
    #[error("divergence evaluated to {0:.6e}, below the roundoff clamp {NEGATIVE_CLAMP:.1e}; internal inconsistency")]
    NegativeValue(f64),
    #[error("unknown divergence spec '{0}'")]
    UnknownSpec(String),
}

/// A nonnegative divergence value. Construction clamps roundoff-sized
/// negatives to zero and rejects anything below [`NEGATIVE_CLAMP`].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DivergenceValue(f64);

impl DivergenceValue {
    pub fn new(value: f64) -> Result<Self, DivergenceError> {
        if value >= 0.0 {
            Ok(Self(value))
        } else if value >= NEGATIVE_CLAMP {
            Ok(Self(0.0))
        } else {
            Err(DivergenceError::NegativeValue(value))
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

fn check_dims(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<(), DivergenceError> {
    if x.dim() != y.dim() {
        return Err(DivergenceError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<(), DivergenceError> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(DivergenceError::LambdaOutOfRange(lambda))
    }
}

/// Which scalar function of the generator a spectral evaluation uses.
#[derive(Clone, Copy)]
enum Part {
    Eval,
    Deriv,
}

impl Part {
    fn limit(self, f: &ConvexGenerator) -> Option<f64> {
        match self {
            Part::Eval => f.limit_at_zero,
            Part::Deriv => f.deriv_limit_at_zero,
        }
    }

    fn apply(self, f: &ConvexGenerator, x: f64) -> f64 {
        match self {
            Part::Eval => f.eval(x),
            Part::Deriv => f.deriv(x),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Part::Eval => "f",
            Part::Deriv => "f'",
        }
    }
}

fn psd_snap_tolerance(eigenvalues: &[f64]) -> f64 {
    let abs_max = eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    1e-12 * abs_max.max(1.0)
}

/// Evaluates `f` or `f'` at an eigenvalue with the boundary rule: positive
/// arguments directly, arguments that vanish up to the PSD tolerance through
/// the declared limit, anything more negative is an error.
fn spectral_value(
    f: &ConvexGenerator,
    part: Part,
    lambda: f64,
    tolerance: f64,
) -> Result<f64, DivergenceError> {
    if lambda > 0.0 {
        let v = part.apply(f, lambda);
        if v.is_finite() {
            return Ok(v);
        }
        return Err(DivergenceError::Mat(MatError::FunctionDomain {
            eigenvalue: lambda,
        }));
    }
    if lambda >= -tolerance {
        part.limit(f)
            .ok_or_else(|| DivergenceError::BoundaryLimitMissing {
                generator: f.name().to_string(),
                which: part.name(),
            })
    } else {
        Err(DivergenceError::NotPositiveSemidefinite {
            eigenvalue: lambda,
            tolerance,
        })
    }
}

/// `tr f(H)` (or `tr f'(H)`) through the spectrum, boundary-aware.
fn spectral_trace(
    f: &ConvexGenerator,
    part: Part,
    h: &HermitianMatrix,
) -> Result<f64, DivergenceError> {
    let d = eig_hermitian(h)?;
    let tolerance = psd_snap_tolerance(d.eigenvalues());
    let mut sum = 0.0;
    for &lambda in d.eigenvalues() {
        sum += spectral_value(f, part, lambda, tolerance)?;
    }
    Ok(sum)
}

/// The matrix `f'(H)`, boundary-aware.
fn deriv_matrix(f: &ConvexGenerator, h: &HermitianMatrix) -> Result<HermitianMatrix, DivergenceError> {
    let d = eig_hermitian(h)?;
    let tolerance = psd_snap_tolerance(d.eigenvalues());
    let mut mapped = Vec::with_capacity(d.dim());
    for &lambda in d.eigenvalues() {
        mapped.push(spectral_value(f, Part::Deriv, lambda, tolerance)?);
    }
    Ok(d.rebuild_with(&mapped))
}

/// The Bregman `f`-divergence `tr(f(X) - f(Y) - f'(Y)(X - Y))`.
///
/// Inputs may touch the semidefinite boundary when `f` carries both limits
/// at zero. Zero exactly when `X == Y` for strictly convex `f`.
pub fn bregman(
    f: &ConvexGenerator,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(x, y)?;
    let tr_fx = spectral_trace(f, Part::Eval, x)?;
    let tr_fy = spectral_trace(f, Part::Eval, y)?;
    let fpy = deriv_matrix(f, y)?;
    let cross = real_trace_product(&fpy, &x.sub(y))?;
    DivergenceValue::new(tr_fx - tr_fy - cross)
}

/// The Jensen divergence `tr(l f(X) + (1-l) f(Y) - f(l X + (1-l) Y))`.
pub fn jensen(
    f: &ConvexGenerator,
    lambda: f64,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<DivergenceValue, DivergenceError> {
    check_lambda(lambda)?;
    check_dims(x, y)?;
    let mid = x.scale(lambda).add(&y.scale(1.0 - lambda));
    let tr_fx = spectral_trace(f, Part::Eval, x)?;
    let tr_fy = spectral_trace(f, Part::Eval, y)?;
    let tr_fm = spectral_trace(f, Part::Eval, &mid)?;
    DivergenceValue::new(lambda * tr_fx + (1.0 - lambda) * tr_fy - tr_fm)
}

/// The symmetrized Bregman divergence, computed through the trace identity
/// `tr((f'(A) - f'(B))(A - B))`; agrees with `H_f(A,B) + H_f(B,A)`.
pub fn symmetrized_bregman(
    f: &ConvexGenerator,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(a, b)?;
    let fpa = deriv_matrix(f, a)?;
    let fpb = deriv_matrix(f, b)?;
    let value = real_trace_product(&fpa.sub(&fpb), &a.sub(b))?;
    DivergenceValue::new(value)
}

/// The whitened-norm distance measure `N(g(Y^{-1/2} X Y^{-1/2}))`.
pub fn gdm(
    norm: NormKind,
    gauge: &GaugeFunction,
    x: &PDMatrix,
    y: &PDMatrix,
) -> Result<DivergenceValue, DivergenceError> {
    let w = whiten(x, y)?;
    let gw = matcore::apply_function(w.hermitian(), |t| {
        if t > 0.0 {
            Some(gauge.eval(t))
        } else {
            None
        }
    })?;
    let value = uinorm_hermitian(norm, &gw)?;
    DivergenceValue::new(value)
}

/// Stein's loss `tr XY^{-1} - log det XY^{-1} - n`, generator-free.
pub fn stein_loss(x: &PDMatrix, y: &PDMatrix) -> Result<DivergenceValue, DivergenceError> {
    check_dims(x.hermitian(), y.hermitian())?;
    let y_inv = y.inverse();
    let tr = real_trace_product(x.hermitian(), y_inv.hermitian())?;
    let n = x.dim() as f64;
    DivergenceValue::new(tr - (logdet(x) - logdet(y)) - n)
}

/// The quantum relative entropy `tr(A(log A - log B) - (A - B))`.
pub fn umegaki(a: &PDMatrix, b: &PDMatrix) -> Result<DivergenceValue, DivergenceError> {
    check_dims(a.hermitian(), b.hermitian())?;
    // tr(A log A) through the spectrum of A; tr(A log B) as a trace product.
    let tr_a_log_a: f64 = a.eigenvalues().iter().map(|&l| l * l.ln()).sum();
    let log_b = matcore::matrix_log(b);
    let tr_a_log_b = real_trace_product(a.hermitian(), &log_b)?;
    let value = tr_a_log_a - tr_a_log_b - a.trace() + b.trace();
    DivergenceValue::new(value)
}

/// The log-determinant divergence
/// `log det(l X + (1-l) Y) - l log det X - (1-l) log det Y`.
///
/// Evaluated through log-determinants rather than the non-Hermitian product
/// `X^l Y^{1-l}`, which keeps the whole computation inside the Hermitian
/// functional calculus.
pub fn logdet_alpha(
    lambda: f64,
    x: &PDMatrix,
    y: &PDMatrix,
) -> Result<DivergenceValue, DivergenceError> {
    check_lambda(lambda)?;
    check_dims(x.hermitian(), y.hermitian())?;
    let mid = PDMatrix::new(
        x.hermitian()
            .scale(lambda)
            .add(&y.hermitian().scale(1.0 - lambda)),
    )?;
    let value = logdet(&mid) - lambda * logdet(x) - (1.0 - lambda) * logdet(y);
    DivergenceValue::new(value)
}

/// A divergence selected by name, as used by the CLI and the suites.
#[derive(Clone, Debug)]
pub enum DivergenceSpec {
    Bregman(ConvexGenerator),
    Jensen { lambda: f64, generator: ConvexGenerator },
    Gdm { norm: NormKind, gauge: GaugeFunction },
    SteinLoss,
    Umegaki,
    LogDetAlpha { lambda: f64 },
}

impl DivergenceSpec {
    pub fn jensen(lambda: f64, generator: ConvexGenerator) -> Result<Self, DivergenceError> {
        check_lambda(lambda)?;
        Ok(Self::Jensen { lambda, generator })
    }

    pub fn logdet_alpha(lambda: f64) -> Result<Self, DivergenceError> {
        check_lambda(lambda)?;
        Ok(Self::LogDetAlpha { lambda })
    }

    /// Evaluates the divergence on a pair of positive definite matrices.
    pub fn evaluate(&self, x: &PDMatrix, y: &PDMatrix) -> Result<DivergenceValue, DivergenceError> {
        match self {
            Self::Bregman(f) => bregman(f, x.hermitian(), y.hermitian()),
            Self::Jensen { lambda, generator } => {
                jensen(generator, *lambda, x.hermitian(), y.hermitian())
            }
            Self::Gdm { norm, gauge } => gdm(*norm, gauge, x, y),
            Self::SteinLoss => stein_loss(x, y),
            Self::Umegaki => umegaki(x, y),
            Self::LogDetAlpha { lambda } => logdet_alpha(*lambda, x, y),
        }
    }
}

impl fmt::Display for DivergenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bregman(g) => write!(f, "bregman:{}", g.name()),
            Self::Jensen { lambda, generator } => write!(f, "jensen:{lambda}:{}", generator.name()),
            Self::Gdm { norm, gauge } => write!(f, "gdm:{}:{}", norm.name(), gauge.name()),
            Self::SteinLoss => write!(f, "stein"),
            Self::Umegaki => write!(f, "umegaki"),
            Self::LogDetAlpha { lambda } => write!(f, "logdetalpha:{lambda}"),
        }
    }
}

impl FromStr for DivergenceSpec {
    type Err = DivergenceError;

    /// Parses the stable encodings `bregman:<generator>`,
    /// `jensen:<lambda>:<generator>`, `gdm:<norm>:<gauge>`, `stein`,
    /// `umegaki`, `logdetalpha:<lambda>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DivergenceError::UnknownSpec(s.to_string());
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("stein", None) => Ok(Self::SteinLoss),
            ("umegaki", None) => Ok(Self::Umegaki),
            ("logdetalpha", Some(l)) => {
                let lambda: f64 = l.parse().map_err(|_| bad())?;
                Self::logdet_alpha(lambda)
            }
            ("bregman", Some(g)) => Ok(Self::Bregman(parse_generator(g)?)),
            ("jensen", Some(r)) => {
                let (l, g) = r.split_once(':').ok_or_else(bad)?;
                let lambda: f64 = l.parse().map_err(|_| bad())?;
                Self::jensen(lambda, parse_generator(g)?)
            }
            ("gdm", Some(r)) => {
                let (n, g) = r.split_once(':').ok_or_else(bad)?;
                let norm = NormKind::parse(n).ok_or_else(bad)?;
                Ok(Self::Gdm {
                    norm,
                    gauge: parse_gauge(g)?,
                })
            }
            _ => Err(bad()),
        }
    }
}
