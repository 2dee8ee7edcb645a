//! Scalar convex generator functions and gauge functions.
//!
//! A [`ConvexGenerator`] packages a differentiable convex function `f` on
//! `(0, inf)` with its derivative and the boundary/convexity metadata the
//! divergence layer and the order probes gate on: finite limits at `0+`
//! (when they exist), strict convexity, a lower bound for `f'`, and whether
//! `f'` is unbounded from above. The flags are declared by the constructors
//! rather than inferred numerically -- boundedness of a derivative is not
//! decidable from finitely many samples -- and [`check_convexity`] audits
//! the declarations.
//!
//! A [`GaugeFunction`] packages a continuous `g` on `(0, inf)` that vanishes
//! exactly at `1` and doubles its magnitude under squaring of the argument:
//! `|g(y^2)| >= K |g(y)|` for a constant `K > 1` stored with the function.
//! [`check_gauge`] audits both conditions on a caller-supplied grid.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Error)]
pub enum GeneratorError {
    #[error("power generator requires exponent p > 1, got {0}")]
    PowerExponent(f64),
    #[error("log-affine generator requires a <= 0 for convexity, got a = {0}")]
    LogAffineCoefficient(f64),
    #[error("gauge parameter must lie in (0, 1), got {0}")]
    GaugeParameter(f64),
    #[error("unknown generator spec '{0}' (expected power:p, entropy, neglog, or logaffine:a:b:c)")]
    UnknownGenerator(String),
    #[error("unknown gauge spec '{0}' (expected stein or logdetalpha:lambda)")]
    UnknownGauge(String),
    #[error("convexity check needs a grid of at least 3 points, got {0}")]
    GridTooSmall(usize),
}

/// A differentiable convex function on `(0, inf)` with derivative and the
/// metadata consumed by the divergence and order-probe layers.
#[derive(Clone)]
pub struct ConvexGenerator {
    name: String,
    eval: ScalarFn,
    deriv: ScalarFn,
    /// `lim_{x->0+} f(x)` when finite.
    pub limit_at_zero: Option<f64>,
    /// `lim_{x->0+} f'(x)` when finite.
    pub deriv_limit_at_zero: Option<f64>,
    pub strictly_convex: bool,
    /// A lower bound `k <= f'(x)` for all `x > 0`, when one exists.
    pub deriv_bounded_below: Option<f64>,
    /// Whether `sup f' = +inf`.
    pub deriv_unbounded_above: bool,
}

impl ConvexGenerator {
    /// Assembles a generator from raw parts. The declared metadata is the
    /// caller's responsibility; [`check_convexity`] can audit it.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        limit_at_zero: Option<f64>,
        deriv_limit_at_zero: Option<f64>,
        strictly_convex: bool,
        deriv_bounded_below: Option<f64>,
        deriv_unbounded_above: bool,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            limit_at_zero,
            deriv_limit_at_zero,
            strictly_convex,
            deriv_bounded_below,
            deriv_unbounded_above,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    #[inline]
    pub fn deriv(&self, x: f64) -> f64 {
        (self.deriv)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The generator `x -> f(x) + b x + c`. Adding an affine function leaves
    /// every Bregman and Jensen divergence unchanged, which the test suites
    /// exercise directly.
    pub fn affine_shift(&self, b: f64, c: f64) -> Self {
        let eval = self.eval.clone();
        let deriv = self.deriv.clone();
        Self {
            name: format!("{}+affine({b},{c})", self.name),
            eval: Arc::new(move |x| eval(x) + b * x + c),
            deriv: Arc::new(move |x| deriv(x) + b),
            limit_at_zero: self.limit_at_zero.map(|l| l + c),
            deriv_limit_at_zero: self.deriv_limit_at_zero.map(|d| d + b),
            strictly_convex: self.strictly_convex,
            deriv_bounded_below: self.deriv_bounded_below.map(|k| k + b),
            deriv_unbounded_above: self.deriv_unbounded_above,
        }
    }
}

impl fmt::Debug for ConvexGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexGenerator")
            .field("name", &self.name)
            .field("limit_at_zero", &self.limit_at_zero)
            .field("deriv_limit_at_zero", &self.deriv_limit_at_zero)
            .field("strictly_convex", &self.strictly_convex)
            .field("deriv_bounded_below", &self.deriv_bounded_below)
            .field("deriv_unbounded_above", &self.deriv_unbounded_above)
            .finish()
    }
}

/// The standard generator family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StdGenerator {
    /// `x^p` with `p > 1`.
    Power(f64),
    /// `x log x - x`.
    Entropy,
    /// `-log x`.
    NegLog,
    /// `a log x + b x + c` with `a <= 0`.
    LogAffine(f64, f64, f64),
}

/// Builds one of the standard generators with its metadata populated.
pub fn std_generator(kind: StdGenerator) -> Result<ConvexGenerator, GeneratorError> {
    match kind {
        StdGenerator::Power(p) => {
            if !(p > 1.0) || !p.is_finite() {
                return Err(GeneratorError::PowerExponent(p));
            }
            Ok(ConvexGenerator::custom(
                format!("power:{p}"),
                move |x| x.powf(p),
                move |x| p * x.powf(p - 1.0),
                Some(0.0),
                Some(0.0),
                true,
                Some(0.0),
                true,
            ))
        }
        StdGenerator::Entropy => Ok(ConvexGenerator::custom(
            "entropy",
            |x| x * x.ln() - x,
            f64::ln,
            Some(0.0),
            None, // log x -> -inf
            true,
            None, // f' unbounded below
            true,
        )),
        StdGenerator::NegLog => Ok(ConvexGenerator::custom(
            "neglog",
            |x| -x.ln(),
            |x| -1.0 / x,
            None, // -log x -> +inf
            None,
            true,
            None,  // -1/x -> -inf near 0
            false, // sup f' = 0
        )),
        StdGenerator::LogAffine(a, b, c) => {
            if a > 0.0 || !a.is_finite() {
                return Err(GeneratorError::LogAffineCoefficient(a));
            }
            let (limit, dlimit, dlower) = if a == 0.0 {
                (Some(c), Some(b), Some(b))
            } else {
                (None, None, None)
            };
            Ok(ConvexGenerator::custom(
                format!("logaffine:{a}:{b}:{c}"),
                move |x| a * x.ln() + b * x + c,
                move |x| a / x + b,
                limit,
                dlimit,
                a < 0.0,
                dlower,
                false, // a/x + b climbs to b, never beyond
            ))
        }
    }
}

/// Parses the stable string identifiers `power:p`, `entropy`, `neglog`,
/// `logaffine:a:b:c`.
pub fn parse_generator(s: &str) -> Result<ConvexGenerator, GeneratorError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || GeneratorError::UnknownGenerator(s.to_string());
    match parts.as_slice() {
        ["entropy"] => std_generator(StdGenerator::Entropy),
        ["neglog"] => std_generator(StdGenerator::NegLog),
        ["power", p] => {
            let p: f64 = p.parse().map_err(|_| bad())?;
            std_generator(StdGenerator::Power(p))
        }
        ["logaffine", a, b, c] => {
            let a: f64 = a.parse().map_err(|_| bad())?;
            let b: f64 = b.parse().map_err(|_| bad())?;
            let c: f64 = c.parse().map_err(|_| bad())?;
            std_generator(StdGenerator::LogAffine(a, b, c))
        }
        _ => Err(bad()),
    }
}

/// A gauge function `g` on `(0, inf)`: zero exactly at `1`, and
/// `|g(y^2)| >= K |g(y)|` for the stored constant `K > 1`.
#[derive(Clone)]
pub struct GaugeFunction {
    name: String,
    eval: ScalarFn,
    /// The squaring constant of the gauge condition.
    pub big_k: f64,
}

impl GaugeFunction {
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        big_k: f64,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            big_k,
        }
    }

    #[inline]
    pub fn eval(&self, y: f64) -> f64 {
        (self.eval)(y)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same gauge with a different declared constant; for audit probes.
    pub fn with_k(&self, big_k: f64) -> Self {
        Self {
            name: self.name.clone(),
            eval: self.eval.clone(),
            big_k,
        }
    }
}

impl fmt::Debug for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeFunction")
            .field("name", &self.name)
            .field("big_k", &self.big_k)
            .finish()
    }
}

/// The standard gauges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StdGauge {
    /// `g(y) = y - log y - 1`.
    Stein,
    /// `g(y) = log((lambda y + 1 - lambda) / y^lambda)` for `lambda` in (0,1).
    LogDetAlpha(f64),
}

/// Builds one of the standard gauges; both carry the constant `K = 2`.
pub fn std_gauge(kind: StdGauge) -> Result<GaugeFunction, GeneratorError> {
    match kind {
        StdGauge::Stein => Ok(GaugeFunction::custom(
            "stein",
            |y| y - y.ln() - 1.0,
            2.0,
        )),
        StdGauge::LogDetAlpha(lambda) => {
            if !(lambda > 0.0 && lambda < 1.0) {
                return Err(GeneratorError::GaugeParameter(lambda));
            }
            Ok(GaugeFunction::custom(
                format!("logdetalpha:{lambda}"),
                move |y| (lambda * y + (1.0 - lambda)).ln() - lambda * y.ln(),
                2.0,
            ))
        }
    }
}

/// Parses the stable gauge identifiers `stein`, `logdetalpha:lambda`.
pub fn parse_gauge(s: &str) -> Result<GaugeFunction, GeneratorError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || GeneratorError::UnknownGauge(s.to_string());
    match parts.as_slice() {
        ["stein"] => std_gauge(StdGauge::Stein),
        ["logdetalpha", l] => {
            let lambda: f64 = l.parse().map_err(|_| bad())?;
            std_gauge(StdGauge::LogDetAlpha(lambda))
        }
        _ => Err(bad()),
    }
}

/// Outcome of the numerical convexity audit.
#[derive(Clone, Debug)]
pub struct ConvexityReport {
    pub pass: bool,
    /// Worst excess of `f(lx + (1-l)y)` over the chord, beyond tolerance.
    pub worst_midpoint_violation: f64,
    /// Worst decrease of `f'` between consecutive grid points.
    pub worst_monotonicity_violation: f64,
}

/// Audits midpoint convexity and monotonicity of the derivative on a
/// log-spaced grid over `[1e-3, 1e3]` with seeded interpolation weights.
pub fn check_convexity(
    f: &ConvexGenerator,
    grid_size: usize,
    seed: u64,
) -> Result<ConvexityReport, GeneratorError> {
    if grid_size < 3 {
        return Err(GeneratorError::GridTooSmall(grid_size));
    }
    let grid = log_grid(1e-3, 1e3, grid_size);
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    let mut worst_midpoint = f64::NEG_INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        for &y in &grid[i + 1..] {
            let fx = f.eval(x);
            let fy = f.eval(y);
            let tolerance = 1e-9 * (1.0 + fx.abs() + fy.abs());
            for lambda in [0.5, rng.random::<f64>(), rng.random::<f64>()] {
                let lambda = lambda.clamp(1e-6, 1.0 - 1e-6);
                let mid = lambda * x + (1.0 - lambda) * y;
                let violation = f.eval(mid) - (lambda * fx + (1.0 - lambda) * fy) - tolerance;
                worst_midpoint = worst_midpoint.max(violation);
            }
        }
    }

    let mut worst_monotonicity = f64::NEG_INFINITY;
    for w in grid.windows(2) {
        let d0 = f.deriv(w[0]);
        let d1 = f.deriv(w[1]);
        let tolerance = 1e-9 * (1.0 + d0.abs() + d1.abs());
        worst_monotonicity = worst_monotonicity.max(d0 - d1 - tolerance);
    }

    Ok(ConvexityReport {
        pass: worst_midpoint <= 0.0 && worst_monotonicity <= 0.0,
        worst_midpoint_violation: worst_midpoint,
        worst_monotonicity_violation: worst_monotonicity,
    })
}

/// Band half-widths for the gauge audit around `y = 1`: inside the inner
/// band `g` must vanish (to 1e-9); outside the outer band it must not.
/// Between the two, continuity makes either verdict acceptable and the
/// point is skipped.
const GAUGE_INNER_BAND: f64 = 1e-9;
const GAUGE_OUTER_BAND: f64 = 1e-6;
const GAUGE_ZERO_TOLERANCE: f64 = 1e-9;

/// Outcome of the gauge-condition audit.
#[derive(Clone, Debug)]
pub struct GaugeReport {
    pub a1_pass: bool,
    pub a2_pass: bool,
    /// `sup |g(y)|` over grid points with `|y - 1| <= 1e-9`.
    pub max_abs_inside_band: f64,
    /// `inf |g(y)|` over grid points with `|y - 1| >= 1e-6`.
    pub min_abs_outside_band: f64,
    /// `inf |g(y^2)| / |g(y)|` over grid points outside the band.
    pub min_squaring_ratio: f64,
}

impl GaugeReport {
    pub fn pass(&self) -> bool {
        self.a1_pass && self.a2_pass
    }
}

/// Audits the two gauge conditions on a positive grid.
pub fn check_gauge(g: &GaugeFunction, grid: &[f64]) -> GaugeReport {
    let mut max_inside = 0.0f64;
    let mut min_outside = f64::INFINITY;
    let mut min_ratio = f64::INFINITY;
    for &y in grid {
        debug_assert!(y > 0.0, "gauge grid must be positive");
        let gy = g.eval(y).abs();
        let dist = (y - 1.0).abs();
        if dist <= GAUGE_INNER_BAND {
            max_inside = max_inside.max(gy);
        } else if dist >= GAUGE_OUTER_BAND {
            min_outside = min_outside.min(gy);
            let gy2 = g.eval(y * y).abs();
            min_ratio = min_ratio.min(gy2 / gy);
        }
    }
    GaugeReport {
        a1_pass: max_inside <= GAUGE_ZERO_TOLERANCE && min_outside > GAUGE_ZERO_TOLERANCE,
        a2_pass: min_ratio >= g.big_k - 1e-9,
        max_abs_inside_band: max_inside,
        min_abs_outside_band: min_outside,
        min_squaring_ratio: min_ratio,
    }
}

/// A log-spaced grid of `n >= 2` points from `lo` to `hi` (both positive).
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|k| lo * (step * k as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn power_two_values_and_metadata() {
        let f = std_generator(StdGenerator::Power(2.0)).unwrap();
        assert!((f.eval(3.0) - 9.0).abs() < 1e-14);
        assert!((f.deriv(3.0) - 6.0).abs() < 1e-14);
        assert_eq!(f.limit_at_zero, Some(0.0));
        assert_eq!(f.deriv_limit_at_zero, Some(0.0));
        assert_eq!(f.deriv_bounded_below, Some(0.0));
        assert!(f.deriv_unbounded_above);
        assert!(f.strictly_convex);
    }

    #[test]
    fn entropy_values_and_metadata() {
        let f = std_generator(StdGenerator::Entropy).unwrap();
        assert!((f.eval(1.0) + 1.0).abs() < 1e-14);
        assert!(f.deriv(1.0).abs() < 1e-14);
        assert_eq!(f.limit_at_zero, Some(0.0));
        assert_eq!(f.deriv_limit_at_zero, None);
        assert_eq!(f.deriv_bounded_below, None);
        assert!(f.deriv_unbounded_above);
    }

    #[test]
    fn neglog_values_and_metadata() {
        let f = std_generator(StdGenerator::NegLog).unwrap();
        assert!((f.eval(E) + 1.0).abs() < 1e-14);
        assert!((f.deriv(E) + 1.0 / E).abs() < 1e-14);
        assert_eq!(f.limit_at_zero, None);
        assert_eq!(f.deriv_limit_at_zero, None);
        assert!(!f.deriv_unbounded_above);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(std_generator(StdGenerator::Power(1.0)).is_err());
        assert!(std_generator(StdGenerator::Power(0.5)).is_err());
        assert!(std_generator(StdGenerator::LogAffine(0.5, 0.0, 0.0)).is_err());
        assert!(std_gauge(StdGauge::LogDetAlpha(0.0)).is_err());
        assert!(std_gauge(StdGauge::LogDetAlpha(1.0)).is_err());
    }

    #[test]
    fn log_affine_strictness_flag() {
        let strict = std_generator(StdGenerator::LogAffine(-1.0, 2.0, 3.0)).unwrap();
        assert!(strict.strictly_convex);
        let affine = std_generator(StdGenerator::LogAffine(0.0, 2.0, 3.0)).unwrap();
        assert!(!affine.strictly_convex);
        assert_eq!(affine.limit_at_zero, Some(3.0));
        assert_eq!(affine.deriv_limit_at_zero, Some(2.0));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for f in [
            std_generator(StdGenerator::Power(1.5)).unwrap(),
            std_generator(StdGenerator::Power(2.0)).unwrap(),
            std_generator(StdGenerator::Power(3.0)).unwrap(),
            std_generator(StdGenerator::Entropy).unwrap(),
            std_generator(StdGenerator::NegLog).unwrap(),
            std_generator(StdGenerator::LogAffine(-1.5, 0.7, -0.3)).unwrap(),
        ] {
            for &x in &log_grid(1e-3, 1e3, 41) {
                let h = 1e-5 * x;
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let d = f.deriv(x);
                assert!(
                    (fd - d).abs() <= 1e-6 * d.abs().max(1.0),
                    "{} at x={x}: fd={fd} vs deriv={d}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn stein_gauge_values() {
        let g = std_gauge(StdGauge::Stein).unwrap();
        assert!(g.eval(1.0).abs() < 1e-15);
        // g(y^2) - 2 g(y) = (y - 1)^2; at y = 2 the difference is exactly 1.
        assert!((g.eval(4.0) - 2.0 * g.eval(2.0) - 1.0).abs() < 1e-14);
        assert_eq!(g.big_k, 2.0);
    }

    #[test]
    fn logdet_alpha_gauge_vanishes_at_one() {
        let g = std_gauge(StdGauge::LogDetAlpha(0.5)).unwrap();
        assert!(g.eval(1.0).abs() < 1e-15);
        assert_eq!(g.big_k, 2.0);
    }

    #[test]
    fn convexity_audit_passes_standard_generators() {
        for f in [
            std_generator(StdGenerator::Power(2.0)).unwrap(),
            std_generator(StdGenerator::LogAffine(-1.0, 0.0, 0.0)).unwrap(),
        ] {
            let report = check_convexity(&f, 25, 42).unwrap();
            assert!(report.pass, "{}: {report:?}", f.name());
        }
    }

    #[test]
    fn convexity_audit_fails_corrupted_generator() {
        let bad = ConvexGenerator::custom(
            "corrupt",
            |x| -x * x,
            |x| -x,
            Some(0.0),
            Some(0.0),
            false,
            None,
            false,
        );
        let report = check_convexity(&bad, 25, 42).unwrap();
        assert!(!report.pass);
        assert!(report.worst_midpoint_violation > 0.0);
        assert!(report.worst_monotonicity_violation > 0.0);
    }

    #[test]
    fn gauge_audit_on_log_grid() {
        let grid = log_grid(1e-2, 1e2, 200);
        let stein = std_gauge(StdGauge::Stein).unwrap();
        let report = check_gauge(&stein, &grid);
        assert!(report.pass(), "{report:?}");
        assert!(report.min_squaring_ratio >= 2.0 - 1e-9);

        let ld = std_gauge(StdGauge::LogDetAlpha(0.5)).unwrap();
        let report = check_gauge(&ld, &grid);
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn gauge_audit_fails_with_inflated_constant() {
        // Near y = 1 the squaring ratio of the stein gauge tends to 4, so a
        // declared constant of 5 must fail on a grid that approaches 1.
        let grid = log_grid(1e-2, 1e2, 501);
        let stein5 = std_gauge(StdGauge::Stein).unwrap().with_k(5.0);
        let report = check_gauge(&stein5, &grid);
        assert!(!report.a2_pass);
        assert!(report.min_squaring_ratio < 5.0);
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_generator("power:2").unwrap().name(), "power:2");
        assert_eq!(parse_generator("entropy").unwrap().name(), "entropy");
        assert_eq!(
            parse_generator("logaffine:-1:0:0").unwrap().name(),
            "logaffine:-1:0:0"
        );
        assert!(parse_generator("power").is_err());
        assert!(parse_generator("power:0.5").is_err());
        assert_eq!(parse_gauge("stein").unwrap().name(), "stein");
        assert_eq!(
            parse_gauge("logdetalpha:0.5").unwrap().name(),
            "logdetalpha:0.5"
        );
        assert!(parse_gauge("logdetalpha:1.5").is_err());
    }

    #[test]
    fn affine_shift_adjusts_metadata() {
        let f = std_generator(StdGenerator::Power(2.0)).unwrap();
        let g = f.affine_shift(3.0, -1.0);
        assert!((g.eval(2.0) - (4.0 + 6.0 - 1.0)).abs() < 1e-14);
        assert!((g.deriv(2.0) - (4.0 + 3.0)).abs() < 1e-14);
        assert_eq!(g.limit_at_zero, Some(-1.0));
        assert_eq!(g.deriv_limit_at_zero, Some(3.0));
        assert_eq!(g.deriv_bounded_below, Some(3.0));
    }
}
