//! Numerical laboratory connecting divergence differences to the Loewner
//! order.
//!
//! For fixed `B, C` the sets probed here are
//!
//! ```text
//! { H_f(B, A) - H_f(C, A) | A PD }   -- left-argument differences
//! { H_f(A, B) - H_f(A, C) | A PD }   -- right-argument differences
//! { J_{f,l}(A, B) - J_{f,l}(A, C) | A PD }
//! ```
//!
//! each of which is bounded from below precisely when an order relation
//! holds (`B <= C` for the first and third, `f'(B) <= f'(C)` for the
//! second). Boundedness is not decidable from finitely many samples, so the
//! probes return *evidence*: on the ordered side every sampled difference
//! must respect the analytic lower bound that the order provides; on the
//! non-ordered side an explicit witness family drives the difference down a
//! geometric schedule, and the verdict is "unbounded" once the trace is
//! strictly decreasing and crosses `-ESCAPE_FACTOR * (1 + |initial|)`.
//!
//! The module also measures scaling-homogeneity defects and packages the
//! classical inequalities (Peierls, Weyl, trace-exp monotonicity) that the
//! boundedness arguments lean on.

use num_complex::Complex64;
use thiserror::Error;

use crate::divergences::{jensen, DivergenceError, DivergenceSpec};
use crate::generators::ConvexGenerator;
use crate::matcore::{
    self, eig_hermitian, loewner_leq, projector, real_trace_product, vec_norm, ComplexMatrix,
    HermitianMatrix, MatError, PDMatrix,
};

/// A witness trace is ruled unbounded once it decreases strictly and ends
/// below `-ESCAPE_FACTOR * (1 + |first sample|)`.
pub const ESCAPE_FACTOR: f64 = 1e3;

/// Slack allowed when checking sampled differences against analytic bounds.
pub const BOUND_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Error)]
pub enum OrderLabError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Divergence(#[from] DivergenceError),
    #[error("generator '{generator}' does not satisfy the probe hypothesis: {hypothesis}")]
    HypothesisNotMet {
        generator: String,
        hypothesis: &'static str,
    },
    #[error("witness vector must have unit norm, got {0}")]
    NotUnitVector(f64),
    #[error("shift m = {m} is too small: m I - (1 - lambda) C must be positive definite")]
    ShiftTooSmall { m: f64 },
    #[error("basis is not orthonormal: worst Gram deviation {0:.3e}")]
    NotOrthonormal(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Evidence gathered by a boundedness probe.
#[derive(Clone, Debug)]
pub struct ProbeVerdict {
    /// Whether the observations are consistent with a lower bound.
    pub bounded_below_evidence: bool,
    /// Minimum difference over all samples and witness evaluations.
    pub min_observed: f64,
    /// `(t, difference)` pairs along the witness schedule (empty when the
    /// ordered branch ran and no witness was needed).
    pub witness_trace: Vec<(f64, f64)>,
    /// `<(B - C) x, x>` for the chosen witness direction, when one exists.
    pub epsilon: Option<f64>,
}

fn check_unit(x: &[Complex64]) -> Result<(), OrderLabError> {
    let norm = vec_norm(x);
    if (norm - 1.0).abs() > 1e-12 {
        return Err(OrderLabError::NotUnitVector(norm));
    }
    Ok(())
}

/// The default witness schedule `t = 10^k`, `k = 0..=6`.
pub fn default_t_schedule() -> Vec<f64> {
    (0..=6).map(|k| 10f64.powi(k)).collect()
}

/// `H_f(B, A) - H_f(C, A)` by the expansion
/// `tr f(B) - tr f(C) + tr f'(A)(C - B)`; the `tr f(A)` and linear-in-`A`
/// terms cancel, so the identity is both cheaper and better conditioned
/// than subtracting two divergences.
pub fn bregman_left_diff(
    f: &ConvexGenerator,
    b: &PDMatrix,
    c: &PDMatrix,
    a: &PDMatrix,
) -> Result<f64, OrderLabError> {
    let tr_fb: f64 = b.eigenvalues().iter().map(|&l| f.eval(l)).sum();
    let tr_fc: f64 = c.eigenvalues().iter().map(|&l| f.eval(l)).sum();
    let fpa = a.eig().apply_scalar(|l| f.deriv(l));
    let cross = real_trace_product(&fpa, &c.hermitian().sub(b.hermitian()))?;
    Ok(tr_fb - tr_fc + cross)
}

/// `H_f(A, B) - H_f(A, C)` by the expansion
/// `tr (f'(C) - f'(B)) A + tr( f(C) - f(B) - (f'(C) C - f'(B) B) )`.
pub fn bregman_right_diff(
    f: &ConvexGenerator,
    a: &PDMatrix,
    b: &PDMatrix,
    c: &PDMatrix,
) -> Result<f64, OrderLabError> {
    let fpb = b.eig().apply_scalar(|l| f.deriv(l));
    let fpc = c.eig().apply_scalar(|l| f.deriv(l));
    let linear = real_trace_product(&fpc.sub(&fpb), a.hermitian())?;
    let constant: f64 = c
        .eigenvalues()
        .iter()
        .map(|&l| f.eval(l) - f.deriv(l) * l)
        .sum::<f64>()
        - b.eigenvalues()
            .iter()
            .map(|&l| f.eval(l) - f.deriv(l) * l)
            .sum::<f64>();
    Ok(linear + constant)
}

/// The rank-one spectral witness `t P_x + (I - P_x)` with eigenvalues
/// `{t, 1, ..., 1}`.
pub fn claim_a_witness(x: &[Complex64], t: f64) -> Result<PDMatrix, OrderLabError> {
    check_unit(x)?;
    if t <= 0.0 {
        return Err(OrderLabError::Precondition(format!(
            "witness scale t must be positive, got {t}"
        )));
    }
    let n = x.len();
    let p = projector(x);
    let raw = ComplexMatrix::from_fn(n, |i, j| {
        let id = if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        id + p.get(i, j) * (t - 1.0)
    });
    Ok(PDMatrix::new(HermitianMatrix::symmetrize(raw))?)
}

/// The Jensen witness `A_t = (1/lambda)(m I + t P_x - (1 - lambda) C)`,
/// chosen so that `lambda A_t + (1 - lambda) C = m I + t P_x`.
pub fn claim_b_witness(
    lambda: f64,
    c: &PDMatrix,
    x: &[Complex64],
    m: f64,
    t: f64,
) -> Result<PDMatrix, OrderLabError> {
    check_unit(x)?;
    if t < 0.0 {
        return Err(OrderLabError::Precondition(format!(
            "witness scale t must be nonnegative, got {t}"
        )));
    }
    let n = c.dim();
    let shifted = HermitianMatrix::from_diag(&vec![m; n]).sub(&c.hermitian().scale(1.0 - lambda));
    if PDMatrix::new(shifted.clone()).is_err() {
        return Err(OrderLabError::ShiftTooSmall { m });
    }
    let p = projector(x);
    let raw = ComplexMatrix::from_fn(n, |i, j| {
        (shifted.get(i, j) + p.get(i, j) * t) / lambda
    });
    Ok(PDMatrix::new(HermitianMatrix::symmetrize(raw))?)
}

/// Default shift for the Jensen witness: the smallest comfortable `m` with
/// `m I - (1 - lambda) C` positive definite, with a small safety margin.
pub fn default_claim_b_shift(lambda: f64, c: &PDMatrix) -> f64 {
    let lambda_max = *c.eigenvalues().last().expect("dimension at least 1");
    (1.0 - lambda) * lambda_max * 1.01 + 0.01
}

fn unbounded_verdict(trace: &[(f64, f64)]) -> bool {
    if trace.len() < 2 {
        return false;
    }
    let first = trace[0].1;
    let strictly_decreasing = trace.windows(2).all(|w| w[1].1 < w[0].1);
    let escaped = trace.last().unwrap().1 <= -ESCAPE_FACTOR * (1.0 + first.abs());
    strictly_decreasing && escaped
}

/// The eigenvector of `d` with the most negative eigenvalue, paired with it.
fn most_negative_direction(d: &HermitianMatrix) -> Result<(Vec<Complex64>, f64), OrderLabError> {
    let decomposition = eig_hermitian(d)?;
    let lambda = decomposition.eigenvalues()[0];
    Ok((decomposition.eigenvector(0), lambda))
}

fn sample_pd(dim: usize, seed: u64, trial: u64) -> Result<PDMatrix, OrderLabError> {
    // Deterministic per-trial streams; spectra in [0.1, 10] keep divergence
    // magnitudes moderate.
    Ok(matcore::random_pd(
        dim,
        seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(trial),
        0.1,
        10.0,
    )?)
}

/// Probes boundedness of the left-argument Bregman differences.
///
/// Requires `f'` bounded below (with the declared bound `k`) and unbounded
/// above. If `B <= C`, every sampled difference must respect the analytic
/// bound `tr f(B) - tr f(C) + k tr(C - B) - 1e-8`. Otherwise the witness
/// `t P_x + (I - P_x)` is evaluated along the schedule, where `x` is the
/// most negative eigendirection of `C - B`.
pub fn probe_claim_a(
    f: &ConvexGenerator,
    b: &PDMatrix,
    c: &PDMatrix,
    t_schedule: &[f64],
    random_trials: usize,
    seed: u64,
) -> Result<ProbeVerdict, OrderLabError> {
    let k = f
        .deriv_bounded_below
        .ok_or_else(|| OrderLabError::HypothesisNotMet {
            generator: f.name().to_string(),
            hypothesis: "f' must be bounded from below",
        })?;
    if !f.deriv_unbounded_above {
        return Err(OrderLabError::HypothesisNotMet {
            generator: f.name().to_string(),
            hypothesis: "f' must be unbounded from above",
        });
    }

    let ordered = loewner_leq(b.hermitian(), c.hermitian(), 1e-10);
    let mut min_observed = f64::INFINITY;
    let mut samples_ok = true;

    let tr_fb: f64 = b.eigenvalues().iter().map(|&l| f.eval(l)).sum();
    let tr_fc: f64 = c.eigenvalues().iter().map(|&l| f.eval(l)).sum();
    let analytic_bound = tr_fb - tr_fc + k * (c.trace() - b.trace()) - BOUND_SLACK;

    for trial in 0..random_trials {
        let a = sample_pd(b.dim(), seed, trial as u64)?;
        let diff = bregman_left_diff(f, b, c, &a)?;
        min_observed = min_observed.min(diff);
        if ordered && diff < analytic_bound {
            samples_ok = false;
        }
    }

    if ordered {
        return Ok(ProbeVerdict {
            bounded_below_evidence: samples_ok,
            min_observed,
            witness_trace: Vec::new(),
            epsilon: None,
        });
    }

    let (x, _) = most_negative_direction(&c.hermitian().sub(b.hermitian()))?;
    let epsilon = b.hermitian().quadratic_form(&x) - c.hermitian().quadratic_form(&x);
    let mut witness_trace = Vec::with_capacity(t_schedule.len());
    for &t in t_schedule {
        let a = claim_a_witness(&x, t)?;
        let diff = bregman_left_diff(f, b, c, &a)?;
        min_observed = min_observed.min(diff);
        witness_trace.push((t, diff));
    }
    let unbounded = unbounded_verdict(&witness_trace);
    Ok(ProbeVerdict {
        bounded_below_evidence: !unbounded,
        min_observed,
        witness_trace,
        epsilon: Some(epsilon),
    })
}

/// Probes boundedness of the right-argument Bregman differences against the
/// derivative-order criterion `f'(B) <= f'(C)`.
///
/// On the ordered side the linear term `tr (f'(C) - f'(B)) A` is nonnegative
/// for positive definite `A`, so every sampled difference must stay above
/// the constant term minus slack. On the non-ordered side the witness
/// `t P_x + (I - P_x)` rides the most negative eigendirection of
/// `f'(C) - f'(B)`, whose linear term dominates.
pub fn probe_fprime_order(
    f: &ConvexGenerator,
    b: &PDMatrix,
    c: &PDMatrix,
    t_schedule: &[f64],
    seed: u64,
) -> Result<ProbeVerdict, OrderLabError> {
    if !f.strictly_convex {
        return Err(OrderLabError::HypothesisNotMet {
            generator: f.name().to_string(),
            hypothesis: "f must be strictly convex",
        });
    }
    let fpb = b.eig().apply_scalar(|l| f.deriv(l));
    let fpc = c.eig().apply_scalar(|l| f.deriv(l));
    let ordered = loewner_leq(&fpb, &fpc, 1e-10);

    let constant: f64 = c
        .eigenvalues()
        .iter()
        .map(|&l| f.eval(l) - f.deriv(l) * l)
        .sum::<f64>()
        - b.eigenvalues()
            .iter()
            .map(|&l| f.eval(l) - f.deriv(l) * l)
            .sum::<f64>();

    let random_trials = 25;
    let mut min_observed = f64::INFINITY;
    let mut samples_ok = true;
    for trial in 0..random_trials {
        let a = sample_pd(b.dim(), seed ^ 0xf00d, trial)?;
        let diff = bregman_right_diff(f, &a, b, c)?;
        min_observed = min_observed.min(diff);
        if ordered && diff < constant - BOUND_SLACK {
            samples_ok = false;
        }
    }

    if ordered {
        return Ok(ProbeVerdict {
            bounded_below_evidence: samples_ok,
            min_observed,
            witness_trace: Vec::new(),
            epsilon: None,
        });
    }

    let (x, _) = most_negative_direction(&fpc.sub(&fpb))?;
    let mut witness_trace = Vec::with_capacity(t_schedule.len());
    for &t in t_schedule {
        let a = claim_a_witness(&x, t)?;
        let diff = bregman_right_diff(f, &a, b, c)?;
        min_observed = min_observed.min(diff);
        witness_trace.push((t, diff));
    }
    let unbounded = unbounded_verdict(&witness_trace);
    Ok(ProbeVerdict {
        bounded_below_evidence: !unbounded,
        min_observed,
        witness_trace,
        epsilon: None,
    })
}

/// Probes boundedness of the Jensen differences
/// `J_{f,l}(A, B) - J_{f,l}(A, C)`.
///
/// Requires a finite `lim_{x->0+} f(x)` and `f'` unbounded above. On the
/// non-ordered side the witness `A_t = (1/l)(m I + t P_x - (1-l) C)` is
/// evaluated along the schedule with `x` the direction along which `B`
/// exceeds `C`.
#[allow(clippy::too_many_arguments)]
pub fn probe_claim_b(
    f: &ConvexGenerator,
    lambda: f64,
    b: &PDMatrix,
    c: &PDMatrix,
    t_schedule: &[f64],
    random_trials: usize,
    seed: u64,
) -> Result<ProbeVerdict, OrderLabError> {
    if f.limit_at_zero.is_none() {
        return Err(OrderLabError::HypothesisNotMet {
            generator: f.name().to_string(),
            hypothesis: "f must have a finite limit at 0",
        });
    }
    if !f.deriv_unbounded_above {
        return Err(OrderLabError::HypothesisNotMet {
            generator: f.name().to_string(),
            hypothesis: "f' must be unbounded from above",
        });
    }

    let jensen_diff = |a: &PDMatrix| -> Result<f64, OrderLabError> {
        let jb = jensen(f, lambda, a.hermitian(), b.hermitian())?.value();
        let jc = jensen(f, lambda, a.hermitian(), c.hermitian())?.value();
        Ok(jb - jc)
    };

    let ordered = loewner_leq(b.hermitian(), c.hermitian(), 1e-10);
    let mut min_observed = f64::INFINITY;
    for trial in 0..random_trials {
        let a = sample_pd(b.dim(), seed ^ 0xbeef, trial as u64)?;
        min_observed = min_observed.min(jensen_diff(&a)?);
    }

    if ordered {
        return Ok(ProbeVerdict {
            bounded_below_evidence: true,
            min_observed,
            witness_trace: Vec::new(),
            epsilon: None,
        });
    }

    let (x, _) = most_negative_direction(&c.hermitian().sub(b.hermitian()))?;
    let epsilon = b.hermitian().quadratic_form(&x) - c.hermitian().quadratic_form(&x);
    let m = default_claim_b_shift(lambda, c);
    let mut witness_trace = Vec::with_capacity(t_schedule.len());
    for &t in t_schedule {
        let a = claim_b_witness(lambda, c, &x, m, t)?;
        let diff = jensen_diff(&a)?;
        min_observed = min_observed.min(diff);
        witness_trace.push((t, diff));
    }
    let unbounded = unbounded_verdict(&witness_trace);
    Ok(ProbeVerdict {
        bounded_below_evidence: !unbounded,
        min_observed,
        witness_trace,
        epsilon: Some(epsilon),
    })
}

/// `|D(tX, tY) - D(X, Y)|`: the homogeneity defect of a divergence under
/// simultaneous scaling of both arguments by `t > 0`.
pub fn homogeneity_defect(
    spec: &DivergenceSpec,
    t: f64,
    x: &PDMatrix,
    y: &PDMatrix,
) -> Result<f64, OrderLabError> {
    assert!(t > 0.0, "scale factor must be positive");
    let base = spec.evaluate(x, y)?.value();
    let scaled = spec.evaluate(&x.scale(t), &y.scale(t))?.value();
    Ok((scaled - base).abs())
}

/// Report of a two-sided scalar inequality check.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Checks `sum_j f(<A y_j, y_j>) <= tr f(A)` for an orthonormal basis.
///
/// Equality holds exactly when the basis diagonalizes `A`.
pub fn peierls_check(
    f: &ConvexGenerator,
    a: &PDMatrix,
    basis: &[Vec<Complex64>],
) -> Result<InequalityReport, OrderLabError> {
    let n = a.dim();
    if basis.len() != n {
        return Err(OrderLabError::Precondition(format!(
            "basis has {} vectors for dimension {n}",
            basis.len()
        )));
    }
    let mut worst = 0.0f64;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let inner = matcore::vec_inner(u, v);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner - Complex64::new(target, 0.0)).norm());
        }
    }
    if worst > 1e-10 {
        return Err(OrderLabError::NotOrthonormal(worst));
    }
    let lhs: f64 = basis
        .iter()
        .map(|y| f.eval(a.hermitian().quadratic_form(y)))
        .sum();
    let rhs: f64 = a.eigenvalues().iter().map(|&l| f.eval(l)).sum();
    let scale = 1.0 + lhs.abs().max(rhs.abs());
    Ok(InequalityReport {
        pass: lhs <= rhs + 1e-9 * scale,
        lhs,
        rhs,
    })
}

/// Report of the eigenvalue-domination check.
#[derive(Clone, Debug)]
pub struct WeylReport {
    pub pass: bool,
    /// `min_i (lambda_i(C) - lambda_i(B))` over ascending eigenvalues.
    pub min_gap: f64,
}

/// For `B <= C`, the ascending eigenvalues must dominate pairwise.
pub fn weyl_check(b: &HermitianMatrix, c: &HermitianMatrix) -> Result<WeylReport, OrderLabError> {
    if !loewner_leq(b, c, 1e-10) {
        return Err(OrderLabError::Precondition(
            "weyl check requires B <= C in the Loewner order".into(),
        ));
    }
    let eb = eig_hermitian(b)?;
    let ec = eig_hermitian(c)?;
    let min_gap = eb
        .eigenvalues()
        .iter()
        .zip(ec.eigenvalues())
        .map(|(&mu, &la)| la - mu)
        .fold(f64::INFINITY, f64::min);
    Ok(WeylReport {
        pass: min_gap >= -1e-9,
        min_gap,
    })
}

/// For `H1 <= H2`, checks `tr e^{H1} <= tr e^{H2}`.
pub fn trace_exp_monotone_check(
    h1: &HermitianMatrix,
    h2: &HermitianMatrix,
) -> Result<InequalityReport, OrderLabError> {
    if !loewner_leq(h1, h2, 1e-10) {
        return Err(OrderLabError::Precondition(
            "trace-exp check requires H1 <= H2 in the Loewner order".into(),
        ));
    }
    let tr_exp = |h: &HermitianMatrix| -> Result<f64, OrderLabError> {
        let d = eig_hermitian(h)?;
        Ok(d.eigenvalues().iter().map(|&l| l.exp()).sum())
    };
    let lhs = tr_exp(h1)?;
    let rhs = tr_exp(h2)?;
    let scale = 1.0 + rhs.abs();
    Ok(InequalityReport {
        pass: lhs <= rhs + 1e-9 * scale,
        lhs,
        rhs,
    })
}
