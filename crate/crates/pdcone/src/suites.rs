//! The verification suites behind `pdcone verify`.
//!
//! Each runner draws its own seeded samples, checks one family of claims,
//! and returns a [`SuiteReport`]. Runners take a [`SuiteConfig`] whose
//! optional fields fall back to the per-suite defaults listed with each
//! function; passing explicit values reproduces any run exactly, since all
//! sampling is ChaCha-seeded and single-threaded evaluation order is fixed.
//!
//! The eleven public suite names are in [`SUITE_NAMES`]; `closedforms`
//! additionally folds in the nonnegativity and identity-of-indiscernibles
//! checks so that a full `verify all` covers every acceptance property.

use crate::divergences::{logdet_alpha, stein_loss, DivergenceSpec};
use crate::generators::{
    check_gauge, log_grid, std_gauge, std_generator, StdGauge, StdGenerator,
};
use crate::matcore::{
    self, eig_hermitian, loewner_leq, matrix_log, random_hermitian, random_pd, random_psd,
    random_unitary, ComplexMatrix, HermitianMatrix, PDMatrix,
};
use crate::orderlab::{
    default_t_schedule, homogeneity_defect, peierls_check, probe_claim_a, probe_claim_b,
    probe_fprime_order, trace_exp_monotone_check, weyl_check, BOUND_SLACK,
};
use crate::preservers::{check_preserves, polar_decompose, CongruenceMap, ExpLogMap, PreserverMap};
use crate::report::SuiteReport;

/// Shared knobs for the suite runners. `trials` and `tol` fall back to the
/// per-suite defaults when unset; `dim` caps each suite's dimension range.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub dim: usize,
    pub trials: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dim: 8,
            trials: None,
            seed: 42,
            tol: None,
        }
    }
}

impl SuiteConfig {
    fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn dims(&self, lo: usize, hi: usize) -> Vec<usize> {
        let hi = hi.min(self.dim.max(lo));
        (lo..=hi).collect()
    }

    fn salted(&self, salt: u64) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(salt)
    }
}

/// The suite names accepted by `pdcone verify --suite`.
pub const SUITE_NAMES: [&str; 11] = [
    "closedforms",
    "invariance",
    "homogeneity",
    "claimA",
    "claimB",
    "fprime-order",
    "metric-sqrt",
    "gauges",
    "inequalities",
    "preservers",
    "eigensolver",
];

/// Runs one suite by CLI name; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteReport> {
    match name {
        "closedforms" => {
            let mut report = run_closedforms(cfg);
            absorb(&mut report, run_nonnegativity(cfg));
            Some(report)
        }
        "invariance" => Some(run_invariance(cfg)),
        "homogeneity" => Some(run_homogeneity(cfg)),
        "claimA" => Some(run_claim_a(cfg)),
        "claimB" => Some(run_claim_b(cfg)),
        "fprime-order" => Some(run_fprime_order(cfg)),
        "metric-sqrt" => Some(run_metric_sqrt(cfg)),
        "gauges" => Some(run_gauges(cfg)),
        "inequalities" => Some(run_inequalities(cfg)),
        "preservers" => Some(run_preservers(cfg)),
        "eigensolver" => Some(run_eigensolver(cfg)),
        _ => None,
    }
}

/// Runs every suite in the fixed [`SUITE_NAMES`] order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, cfg).expect("known suite name"))
        .collect()
}

fn absorb(into: &mut SuiteReport, other: SuiteReport) {
    into.trials += other.trials;
    into.passes += other.passes;
    into.failures += other.failures;
    if other.worst.abs() > into.worst.abs() {
        into.worst = other.worst;
    }
    if into.counterexample.is_none() {
        into.counterexample = other.counterexample;
    }
}

/// Divergence specs exercised by the cross-cutting suites: one per family,
/// covering every generator class, every norm, and every closed form.
pub fn representative_specs() -> Vec<DivergenceSpec> {
    [
        "bregman:power:2",
        "bregman:power:1.5",
        "bregman:entropy",
        "bregman:neglog",
        "jensen:0.3:power:2",
        "jensen:0.5:power:2",
        "jensen:0.5:entropy",
        "jensen:0.5:neglog",
        "jensen:0.7:neglog",
        "gdm:trace:stein",
        "gdm:frobenius:stein",
        "gdm:operator:stein",
        "gdm:trace:logdetalpha:0.5",
        "stein",
        "umegaki",
        "logdetalpha:0.3",
        "logdetalpha:0.5",
        "logdetalpha:0.7",
    ]
    .into_iter()
    .map(|s| s.parse().expect("representative specs are well formed"))
    .collect()
}

fn pair(seed: u64, trial: u64, dim: usize, lo: f64, hi: f64) -> (PDMatrix, PDMatrix) {
    let base = seed.wrapping_add(trial.wrapping_mul(0x517c_c1b7_2722_0a95));
    let x = random_pd(dim, base ^ 0x1111, lo, hi).expect("valid range");
    let y = random_pd(dim, base ^ 0x2222, lo, hi).expect("valid range");
    (x, y)
}

/// `B <= C` by construction: `C = B + PSD`.
fn ordered_pair(seed: u64, trial: u64, dim: usize) -> (PDMatrix, PDMatrix) {
    let base = seed.wrapping_add(trial.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let b = random_pd(dim, base ^ 0x3333, 0.2, 5.0).expect("valid range");
    let bump = random_psd(dim, base ^ 0x4444, 2.0);
    let c = PDMatrix::new(b.hermitian().add(&bump)).expect("PD plus PSD stays PD");
    (b, c)
}

/// A pair with `B` decisively not below `C`: the most negative eigenvalue of
/// `C - B` is at most `-0.5`, so order-violation witnesses have real room to
/// push. Redraws deterministically until the separation holds.
fn nonordered_pair(seed: u64, trial: u64, dim: usize) -> (PDMatrix, PDMatrix) {
    for attempt in 0..1000u64 {
        let (b, c) = pair(
            seed ^ 0x5555,
            trial.wrapping_mul(1009).wrapping_add(attempt),
            dim,
            0.1,
            5.0,
        );
        let diff = c.hermitian().sub(b.hermitian());
        let lambda_min = eig_hermitian(&diff).expect("hermitian").eigenvalues()[0];
        if lambda_min <= -0.5 {
            return (b, c);
        }
    }
    unreachable!("independent samples separate within the attempt budget");
}

fn rel_close(a: f64, b: f64, tol: f64) -> (bool, f64) {
    let scale = a.abs().max(b.abs()).max(1.0);
    let deviation = (a - b).abs() / scale;
    (deviation <= tol, deviation)
}

// ---------------------------------------------------------------------------
// closedforms: every closed form agrees with its generator route.
// Defaults: 100 pairs per dim over dims 1..=6, relative tolerance 1e-8.
// ---------------------------------------------------------------------------
pub fn run_closedforms(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("closedforms");
    let trials = cfg.trials_or(100);
    let tol = cfg.tol_or(1e-8);
    let neglog = std_generator(StdGenerator::NegLog).unwrap();
    let entropy = std_generator(StdGenerator::Entropy).unwrap();
    let stein_gauge = std_gauge(StdGauge::Stein).unwrap();
    let lambdas = [0.3, 0.5, 0.7];

    for dim in cfg.dims(1, 6) {
        for trial in 0..trials as u64 {
            let (x, y) = pair(cfg.salted(0xc1), trial, dim, 0.1, 10.0);
            let check = |label: &str, a: f64, b: f64, report: &mut SuiteReport| {
                let (ok, deviation) = rel_close(a, b, tol);
                report.record(ok, deviation, || {
                    format!("{label} dim={dim} trial={trial}: {a:.12e} vs {b:.12e}")
                });
            };

            let sl = stein_loss(&x, &y).unwrap().value();
            let h_neglog = crate::divergences::bregman(&neglog, x.hermitian(), y.hermitian())
                .unwrap()
                .value();
            check("stein_vs_bregman_neglog", sl, h_neglog, &mut report);

            let gdm_stein =
                crate::divergences::gdm(matcore::NormKind::Trace, &stein_gauge, &x, &y)
                    .unwrap()
                    .value();
            check("gdm_trace_stein_vs_stein", gdm_stein, sl, &mut report);

            let um = crate::divergences::umegaki(&x, &y).unwrap().value();
            let h_entropy = crate::divergences::bregman(&entropy, x.hermitian(), y.hermitian())
                .unwrap()
                .value();
            check("umegaki_vs_bregman_entropy", um, h_entropy, &mut report);

            for lambda in lambdas {
                let ld = logdet_alpha(lambda, &x, &y).unwrap().value();
                let j = crate::divergences::jensen(&neglog, lambda, x.hermitian(), y.hermitian())
                    .unwrap()
                    .value();
                check("logdetalpha_vs_jensen_neglog", ld, j, &mut report);

                let gauge = std_gauge(StdGauge::LogDetAlpha(lambda)).unwrap();
                let g = crate::divergences::gdm(matcore::NormKind::Trace, &gauge, &x, &y)
                    .unwrap()
                    .value();
                check("gdm_trace_logdetalpha_vs_closed", g, ld, &mut report);
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// nonnegativity and identity of indiscernibles, folded into `closedforms`
// for the CLI. Defaults: 500 pairs, value threshold 1e-8 against relative
// distance threshold 1e-6.
// ---------------------------------------------------------------------------
pub fn run_nonnegativity(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("nonnegativity");
    let trials = cfg.trials_or(500);
    let specs = representative_specs();
    let dims = cfg.dims(1, 6);

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let (x, y) = pair(cfg.salted(0xe2), trial, dim, 0.5, 5.0);
        let spec = &specs[(trial as usize) % specs.len()];

        // Nonnegativity: construction clamps roundoff and errors beyond it.
        match spec.evaluate(&x, &y) {
            Ok(v) => report.record(v.value() >= 0.0, 0.0, || {
                format!("{spec} dim={dim} trial={trial}: negative value {}", v.value())
            }),
            Err(e) => report.record(false, 1.0, || {
                format!("{spec} dim={dim} trial={trial}: {e}")
            }),
        }

        // Equal inputs: the value must vanish below 1e-8.
        let same = spec.evaluate(&x, &x).unwrap().value();
        report.record(same <= 1e-8, same, || {
            format!("{spec} dim={dim} trial={trial}: D(X,X) = {same:.3e}")
        });

        // Distinct inputs at relative distance 1e-2 (far above the 1e-6
        // identity threshold): the value must not vanish.
        let bump = random_hermitian(dim, cfg.salted(0xe3) ^ trial, 1.0);
        let delta = 0.01 * x.hermitian().frobenius_norm() / bump.frobenius_norm().max(1e-300);
        let x_near = PDMatrix::new(x.hermitian().add(&bump.scale(delta)))
            .expect("small perturbation keeps the matrix PD");
        let near = spec.evaluate(&x_near, &x).unwrap().value();
        report.record(near > 1e-8, if near > 1e-8 { 0.0 } else { 1e-8 - near }, || {
            format!("{spec} dim={dim} trial={trial}: D at distance 1e-2 is {near:.3e}")
        });

        // Independent inputs: clearly positive.
        let far = spec.evaluate(&x, &y).unwrap().value();
        report.record(far > 1e-8, 0.0, || {
            format!("{spec} dim={dim} trial={trial}: D(X,Y) = {far:.3e}")
        });
    }
    report
}

// ---------------------------------------------------------------------------
// invariance: unitary and antiunitary congruences preserve everything;
// general invertible congruences preserve exactly the whitening-based
// divergences and demonstrably break the rest.
// Defaults: 200 trials, tolerance 1e-8, dims 2..=4.
// ---------------------------------------------------------------------------
pub fn run_invariance(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("invariance");
    let trials = cfg.trials_or(200);
    let tol = cfg.tol_or(1e-8);
    let specs = representative_specs();
    let dims = cfg.dims(2, 4);

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let (x, y) = pair(cfg.salted(0xa1), trial, dim, 0.1, 10.0);
        let spec = &specs[(trial as usize) % specs.len()];
        let base = spec.evaluate(&x, &y).unwrap().value();

        for conjugate_first in [false, true] {
            let map = CongruenceMap::random_unitary(dim, cfg.salted(0xa2) ^ trial, conjugate_first);
            let transformed = spec
                .evaluate(&map.apply(&x).unwrap(), &map.apply(&y).unwrap())
                .unwrap()
                .value();
            let (ok, deviation) = rel_close(base, transformed, tol);
            report.record(ok, deviation, || {
                format!(
                    "{spec} dim={dim} trial={trial} conjugate={conjugate_first}: \
                     {base:.12e} vs {transformed:.12e}"
                )
            });
        }
    }

    // General invertible congruences: T = U diag(1..=dim) is decisively
    // non-unitary. The whitening-based divergences must still be preserved.
    let whitening_specs: Vec<DivergenceSpec> = [
        "stein",
        "logdetalpha:0.3",
        "logdetalpha:0.5",
        "logdetalpha:0.7",
        "gdm:trace:stein",
        "gdm:frobenius:stein",
        "gdm:operator:stein",
        "gdm:trace:logdetalpha:0.5",
    ]
    .into_iter()
    .map(|s| s.parse().unwrap())
    .collect();

    for dim in cfg.dims(2, 4) {
        let t_diag: Vec<f64> = (1..=dim).map(|k| k as f64).collect();
        let t = &random_unitary(dim, cfg.salted(0xa3)) * &ComplexMatrix::diag_real(&t_diag);
        let map = PreserverMap::Congruence(CongruenceMap::new(t, false).unwrap());

        for spec in &whitening_specs {
            let r = check_preserves(spec, &map, dim, 25, cfg.salted(0xa4), tol).unwrap();
            report.record(r.pass, r.max_deviation, || {
                format!("{spec} dim={dim}: non-unitary congruence deviated by {:.3e}", r.max_deviation)
            });
        }

        // ... while the non-whitening divergences must break visibly.
        for spec_str in ["bregman:power:2", "umegaki", "jensen:0.5:power:2"] {
            let spec: DivergenceSpec = spec_str.parse().unwrap();
            let r = check_preserves(&spec, &map, dim, 100, cfg.salted(0xa5), 0.1).unwrap();
            let found = !r.pass && r.max_deviation > 0.1;
            report.record(found, if found { 0.0 } else { r.max_deviation }, || {
                format!(
                    "{spec} dim={dim}: expected a counterexample with deviation > 0.1, \
                     worst was {:.3e}",
                    r.max_deviation
                )
            });
        }
    }
    report
}

// ---------------------------------------------------------------------------
// homogeneity: scaling both arguments leaves log-affine-generated and
// whitening-based divergences unchanged; power/entropy divergences shift.
// Defaults: 50 pairs, defect tolerance 1e-9, t in {0.1, 0.5, 2, 10}.
// ---------------------------------------------------------------------------
pub fn run_homogeneity(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("homogeneity");
    let trials = cfg.trials_or(50);
    let tol = cfg.tol_or(1e-9);
    let t_grid = [0.1, 0.5, 2.0, 10.0];
    let dims = cfg.dims(1, 4);

    let mut invariant_specs: Vec<DivergenceSpec> = vec![
        "stein".parse().unwrap(),
        "logdetalpha:0.3".parse().unwrap(),
        "logdetalpha:0.5".parse().unwrap(),
        "logdetalpha:0.7".parse().unwrap(),
        "gdm:trace:stein".parse().unwrap(),
        "gdm:frobenius:stein".parse().unwrap(),
        "gdm:operator:stein".parse().unwrap(),
        "gdm:trace:logdetalpha:0.5".parse().unwrap(),
    ];
    for (a, b, c) in [(-1.0, 0.0, 0.0), (-0.5, 1.0, 0.3), (-2.0, -0.7, 1.1)] {
        let f = std_generator(StdGenerator::LogAffine(a, b, c)).unwrap();
        invariant_specs.push(DivergenceSpec::Bregman(f.clone()));
        invariant_specs.push(DivergenceSpec::jensen(0.3, f.clone()).unwrap());
        invariant_specs.push(DivergenceSpec::jensen(0.5, f).unwrap());
    }

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let (x, y) = pair(cfg.salted(0xb1), trial, dim, 0.2, 5.0);
        let spec = &invariant_specs[(trial as usize) % invariant_specs.len()];
        for t in t_grid {
            let defect = homogeneity_defect(spec, t, &x, &y).unwrap();
            report.record(defect <= tol, defect, || {
                format!("{spec} dim={dim} trial={trial} t={t}: defect {defect:.3e}")
            });
        }
    }

    // The power/entropy families scale: at X = 4I, Y = I, t = 2 each defect
    // is an O(1) quantity, far above the 0.1 detection threshold.
    let scaling_specs = [
        "bregman:power:2",
        "jensen:0.5:power:2",
        "bregman:entropy",
        "jensen:0.5:entropy",
        "umegaki",
    ];
    for dim in cfg.dims(1, 4) {
        let x = PDMatrix::from_diag(&vec![4.0; dim]).unwrap();
        let y = PDMatrix::identity(dim);
        for spec_str in scaling_specs {
            let spec: DivergenceSpec = spec_str.parse().unwrap();
            let defect = homogeneity_defect(&spec, 2.0, &x, &y).unwrap();
            report.record(defect > 0.1, if defect > 0.1 { 0.0 } else { defect }, || {
                format!("{spec} dim={dim}: expected scaling defect > 0.1, got {defect:.3e}")
            });
        }
    }
    report
}

// ---------------------------------------------------------------------------
// claimA: left-argument Bregman differences are bounded below iff B <= C.
// Defaults: 50 ordered + 50 non-ordered pairs, f = x^2 (k = 0).
// ---------------------------------------------------------------------------
pub fn run_claim_a(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("claimA");
    let trials = cfg.trials_or(50);
    let f = std_generator(StdGenerator::Power(2.0)).unwrap();
    let schedule = default_t_schedule();
    let dims = cfg.dims(2, 4);

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];

        let (b, c) = ordered_pair(cfg.salted(0xd1), trial, dim);
        let v = probe_claim_a(&f, &b, &c, &schedule, 20, cfg.salted(0xd2) ^ trial).unwrap();
        let tr_f = |m: &PDMatrix| m.eigenvalues().iter().map(|&l| f.eval(l)).sum::<f64>();
        let bound = tr_f(&b) - tr_f(&c); // k = 0 for x^2
        let margin = v.min_observed - (bound - BOUND_SLACK);
        report.record(v.bounded_below_evidence && margin >= 0.0, (-margin).max(0.0), || {
            format!(
                "ordered dim={dim} trial={trial}: min {:.6e} vs bound {:.6e}",
                v.min_observed, bound
            )
        });

        let (b, c) = nonordered_pair(cfg.salted(0xd3), trial, dim);
        let v = probe_claim_a(&f, &b, &c, &schedule, 20, cfg.salted(0xd4) ^ trial).unwrap();
        let first = v.witness_trace.first().map(|w| w.1).unwrap_or(0.0);
        let last = v.witness_trace.last().map(|w| w.1).unwrap_or(0.0);
        let escaped = last <= -1e3 * (1.0 + first.abs());
        let shortfall = (last + 1e3 * (1.0 + first.abs())).max(0.0);
        report.record(!v.bounded_below_evidence && escaped, shortfall, || {
            format!(
                "non-ordered dim={dim} trial={trial}: witness reached {last:.3e} \
                 from {first:.3e}"
            )
        });
    }
    report
}

// ---------------------------------------------------------------------------
// claimB: Jensen differences are bounded below iff B <= C.
// Defaults: 50 ordered + 50 non-ordered pairs per lambda in {0.3, 0.5}.
// ---------------------------------------------------------------------------
pub fn run_claim_b(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("claimB");
    let trials = cfg.trials_or(50);
    let f = std_generator(StdGenerator::Power(2.0)).unwrap();
    let schedule = default_t_schedule();
    let dims = cfg.dims(2, 4);

    for lambda in [0.3, 0.5] {
        for trial in 0..trials as u64 {
            let dim = dims[(trial as usize) % dims.len()];

            let (b, c) = ordered_pair(cfg.salted(0xd5), trial, dim);
            let v =
                probe_claim_b(&f, lambda, &b, &c, &schedule, 20, cfg.salted(0xd6) ^ trial).unwrap();
            // x^2 increases on the positive axis, so eigenvalue domination
            // bounds the difference by (1 - lambda)(tr f(B) - tr f(C)).
            let tr_f = |m: &PDMatrix| m.eigenvalues().iter().map(|&l| f.eval(l)).sum::<f64>();
            let bound = (1.0 - lambda) * (tr_f(&b) - tr_f(&c));
            let margin = v.min_observed - (bound - BOUND_SLACK);
            report.record(v.bounded_below_evidence && margin >= 0.0, (-margin).max(0.0), || {
                format!(
                    "ordered dim={dim} trial={trial} lambda={lambda}: min {:.6e} vs bound {bound:.6e}",
                    v.min_observed
                )
            });

            let (b, c) = nonordered_pair(cfg.salted(0xd7), trial, dim);
            let v =
                probe_claim_b(&f, lambda, &b, &c, &schedule, 20, cfg.salted(0xd8) ^ trial).unwrap();
            let first = v.witness_trace.first().map(|w| w.1).unwrap_or(0.0);
            let last = v.witness_trace.last().map(|w| w.1).unwrap_or(0.0);
            let escaped = last <= -1e3 * (1.0 + first.abs());
            let shortfall = (last + 1e3 * (1.0 + first.abs())).max(0.0);
            report.record(!v.bounded_below_evidence && escaped, shortfall, || {
                format!(
                    "non-ordered dim={dim} trial={trial} lambda={lambda}: \
                     witness reached {last:.3e} from {first:.3e}"
                )
            });
        }
    }
    report
}

// ---------------------------------------------------------------------------
// fprime-order: right-argument Bregman differences are bounded below iff
// f'(B) <= f'(C); for entropy that is the matrix-log order.
// Defaults: 50 pairs (half constructed ordered, half separated).
// ---------------------------------------------------------------------------
pub fn run_fprime_order(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("fprime-order");
    let trials = cfg.trials_or(50);
    let f = std_generator(StdGenerator::Entropy).unwrap();
    let schedule = default_t_schedule();
    let dims = cfg.dims(2, 4);

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let (b, c) = if trial % 2 == 0 {
            // log-ordered by construction: B = e^H, C = e^{H + PSD}.
            let h = random_hermitian(dim, cfg.salted(0xf1) ^ trial, 0.6);
            let bump = random_psd(dim, cfg.salted(0xf2) ^ trial, 1.0);
            let b = matcore::matrix_exp(&h).unwrap();
            let c = matcore::matrix_exp(&h.add(&bump)).unwrap();
            (b, c)
        } else {
            // decisively separated in the log order: redraw until the most
            // negative eigenvalue of log C - log B is at most -0.3.
            let mut found = None;
            for attempt in 0..1000u64 {
                let (b, c) = pair(
                    cfg.salted(0xf3),
                    trial.wrapping_mul(733).wrapping_add(attempt),
                    dim,
                    0.1,
                    5.0,
                );
                let diff = matrix_log(&c).sub(&matrix_log(&b));
                let lambda_min = eig_hermitian(&diff).unwrap().eigenvalues()[0];
                if lambda_min <= -0.3 {
                    found = Some((b, c));
                    break;
                }
            }
            found.expect("independent samples separate in the log order")
        };

        let expected = loewner_leq(&matrix_log(&b), &matrix_log(&c), 1e-10);
        let v = probe_fprime_order(&f, &b, &c, &schedule, cfg.salted(0xf4) ^ trial).unwrap();
        report.record(v.bounded_below_evidence == expected, 0.0, || {
            format!(
                "dim={dim} trial={trial}: log-order {expected} but probe said {}",
                v.bounded_below_evidence
            )
        });
    }
    report
}

// ---------------------------------------------------------------------------
// metric-sqrt: sqrt of the lambda = 1/2 log-determinant divergence obeys the
// triangle inequality. Defaults: 500 triples, slack 1e-10, dims 2..=4.
// ---------------------------------------------------------------------------
pub fn run_metric_sqrt(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("metric-sqrt");
    let trials = cfg.trials_or(500);
    let tol = cfg.tol_or(1e-10);
    let dims = cfg.dims(2, 4);

    let d = |x: &PDMatrix, y: &PDMatrix| logdet_alpha(0.5, x, y).unwrap().value().sqrt();

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let (x, y) = pair(cfg.salted(0x6d31), trial, dim, 0.1, 10.0);
        let z = random_pd(dim, cfg.salted(0x6d32) ^ trial, 0.1, 10.0).unwrap();
        let excess = d(&x, &z) - d(&x, &y) - d(&y, &z);
        report.record(excess <= tol, excess.max(0.0), || {
            format!("dim={dim} trial={trial}: triangle excess {excess:.3e}")
        });
    }
    report
}

// ---------------------------------------------------------------------------
// gauges: both standard gauges satisfy the vanishing-at-one and squaring
// conditions with constant 2 on a log grid over [1e-2, 1e2]; an inflated
// constant must be caught. Defaults: 200 grid points.
// ---------------------------------------------------------------------------
pub fn run_gauges(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("gauges");
    let points = cfg.trials_or(200).max(10);
    let grid = log_grid(1e-2, 1e2, points);

    let mut gauges = vec![std_gauge(StdGauge::Stein).unwrap()];
    for lambda in [0.3, 0.5, 0.7] {
        gauges.push(std_gauge(StdGauge::LogDetAlpha(lambda)).unwrap());
    }
    for gauge in &gauges {
        let r = check_gauge(gauge, &grid);
        let margin = r.min_squaring_ratio - gauge.big_k;
        report.record(r.pass(), (-margin).max(0.0), || {
            format!("{}: {r:?}", gauge.name())
        });
    }

    // Expected-negative probe: the squaring ratio of the stein gauge tends
    // to 4 near 1, so K = 5 must fail on a grid that approaches 1.
    let inflated = std_gauge(StdGauge::Stein).unwrap().with_k(5.0);
    let dense = log_grid(1e-2, 1e2, points.max(400));
    let r = check_gauge(&inflated, &dense);
    report.record(!r.a2_pass, if r.a2_pass { r.min_squaring_ratio } else { 0.0 }, || {
        format!("inflated-constant probe unexpectedly passed: {r:?}")
    });
    report
}

// ---------------------------------------------------------------------------
// inequalities: Peierls, eigenvalue domination, and trace-exp monotonicity
// on constructed instances. Defaults: 100 instances each.
// ---------------------------------------------------------------------------
pub fn run_inequalities(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("inequalities");
    let trials = cfg.trials_or(100);
    let dims = cfg.dims(2, 6);
    let generators = [
        std_generator(StdGenerator::Power(2.0)).unwrap(),
        std_generator(StdGenerator::Entropy).unwrap(),
        std_generator(StdGenerator::NegLog).unwrap(),
    ];

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let f = &generators[(trial as usize) % generators.len()];

        // Peierls with a random orthonormal basis.
        let a = random_pd(dim, cfg.salted(0x11) ^ trial, 0.2, 5.0).unwrap();
        let u = random_unitary(dim, cfg.salted(0x12) ^ trial);
        let basis: Vec<Vec<num_complex::Complex64>> = (0..dim)
            .map(|j| (0..dim).map(|i| u.get(i, j)).collect())
            .collect();
        let r = peierls_check(f, &a, &basis).unwrap();
        report.record(r.pass, (r.lhs - r.rhs).max(0.0), || {
            format!("peierls dim={dim} trial={trial}: lhs {:.6e} rhs {:.6e}", r.lhs, r.rhs)
        });

        // Peierls in the eigenbasis: equality to 1e-10.
        let eigbasis: Vec<Vec<num_complex::Complex64>> =
            (0..dim).map(|k| a.eig().eigenvector(k)).collect();
        let r = peierls_check(f, &a, &eigbasis).unwrap();
        let gap = (r.lhs - r.rhs).abs();
        let scale = 1.0 + r.rhs.abs();
        report.record(r.pass && gap <= 1e-10 * scale, gap, || {
            format!("peierls eigenbasis dim={dim} trial={trial}: |lhs - rhs| = {gap:.3e}")
        });

        // Eigenvalue domination under a PSD bump.
        let b = random_hermitian(dim, cfg.salted(0x13) ^ trial, 1.0);
        let c = HermitianMatrix::symmetrize(
            b.matrix() + random_psd(dim, cfg.salted(0x14) ^ trial, 2.0).matrix(),
        );
        let r = weyl_check(&b, &c).unwrap();
        report.record(r.pass, (-r.min_gap).max(0.0), || {
            format!("weyl dim={dim} trial={trial}: min gap {:.3e}", r.min_gap)
        });

        // Trace-exp monotonicity under a PSD bump.
        let h1 = random_hermitian(dim, cfg.salted(0x15) ^ trial, 0.8);
        let h2 = h1.add(&random_psd(dim, cfg.salted(0x16) ^ trial, 1.5));
        let r = trace_exp_monotone_check(&h1, &h2).unwrap();
        report.record(r.pass, (r.lhs - r.rhs).max(0.0), || {
            format!("trace-exp dim={dim} trial={trial}: lhs {:.6e} rhs {:.6e}", r.lhs, r.rhs)
        });

        // Trace-exp on the spectral-witness shape: (log t) s^2 P_x + mu I
        // against (log t) T^2 + M, where s is the top eigenvalue of a PD T
        // with eigenvector x, and mu is the bottom eigenvalue of M.
        let t_mat = random_pd(dim, cfg.salted(0x17) ^ trial, 0.5, 3.0).unwrap();
        let top = t_mat.eigenvalues()[dim - 1];
        let x = t_mat.eig().eigenvector(dim - 1);
        let m = random_hermitian(dim, cfg.salted(0x18) ^ trial, 1.0);
        let mu = eig_hermitian(&m).unwrap().eigenvalues()[0];
        let t_sq = t_mat.eig().apply_scalar(|l| l * l);
        for t_scale in [1.0f64, 10.0, 100.0] {
            let log_t = t_scale.ln();
            let h1 = HermitianMatrix::symmetrize(
                &matcore::projector(&x).scale(log_t * top * top)
                    + HermitianMatrix::from_diag(&vec![mu; dim]).matrix(),
            );
            let h2 = t_sq.scale(log_t).add(&m);
            let r = trace_exp_monotone_check(&h1, &h2).unwrap();
            report.record(r.pass, (r.lhs - r.rhs).max(0.0), || {
                format!(
                    "trace-exp witness dim={dim} trial={trial} t={t_scale}: \
                     lhs {:.6e} rhs {:.6e}",
                    r.lhs, r.rhs
                )
            });
        }
    }
    report
}

// ---------------------------------------------------------------------------
// preservers: polar decomposition, congruence factorization, the exp-log /
// congruence coincidence for unitary T, inverse laws, and the positive
// preservation checks. Defaults: 50 trials.
// ---------------------------------------------------------------------------
pub fn run_preservers(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("preservers");
    let trials = cfg.trials_or(50);
    let dims = cfg.dims(1, 4);

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let t = random_invertible(dim, cfg.salted(0x21) ^ trial);

        // Polar decomposition: T = U P, U unitary, P positive definite.
        let (u, p) = polar_decompose(&t).unwrap();
        let recomposed = &u * p.matrix();
        let rel = recomposed.dist(&t) / t.frobenius_norm().max(1.0);
        report.record(rel <= 1e-9, rel, || {
            format!("polar dim={dim} trial={trial}: |UP - T| relative {rel:.3e}")
        });
        let ortho = (&u.adjoint() * &u).dist(&ComplexMatrix::identity(dim));
        report.record(ortho <= 1e-9, ortho, || {
            format!("polar dim={dim} trial={trial}: |U*U - I| = {ortho:.3e}")
        });

        // Congruence by T factors through congruence by P then by U.
        let a = random_pd(dim, cfg.salted(0x22) ^ trial, 0.2, 5.0).unwrap();
        let whole = CongruenceMap::new(t.clone(), false).unwrap();
        let by_p = CongruenceMap::new(p.matrix().clone(), false).unwrap();
        let by_u = CongruenceMap::new(u, false).unwrap();
        let direct = whole.apply(&a).unwrap();
        let factored = by_u.apply(&by_p.apply(&a).unwrap()).unwrap();
        let gap = direct.matrix().dist(factored.matrix())
            / direct.hermitian().frobenius_norm().max(1.0);
        report.record(gap <= 1e-9, gap, || {
            format!("factorization dim={dim} trial={trial}: gap {gap:.3e}")
        });

        // Exp-log with unitary T and zero offset is the unitary congruence.
        let w = random_unitary(dim, cfg.salted(0x23) ^ trial);
        let explog = ExpLogMap::new(w.clone(), HermitianMatrix::zero(dim)).unwrap();
        let congruence = CongruenceMap::new(w, false).unwrap();
        let lhs = explog.apply(&a).unwrap();
        let rhs = congruence.apply(&a).unwrap();
        let gap = lhs.matrix().dist(rhs.matrix()) / rhs.hermitian().frobenius_norm().max(1.0);
        report.record(gap <= 1e-9, gap, || {
            format!("explog-vs-congruence dim={dim} trial={trial}: gap {gap:.3e}")
        });

        // Inverse laws for both families.
        for conjugate_first in [false, true] {
            let m = CongruenceMap::new(t.clone(), conjugate_first).unwrap();
            let back = m.inverse().unwrap().apply(&m.apply(&a).unwrap()).unwrap();
            let gap = back.matrix().dist(a.matrix()) / a.hermitian().frobenius_norm().max(1.0);
            report.record(gap <= 1e-8, gap, || {
                format!(
                    "congruence inverse dim={dim} trial={trial} \
                     conjugate={conjugate_first}: gap {gap:.3e}"
                )
            });
        }
        let x_off = random_hermitian(dim, cfg.salted(0x24) ^ trial, 0.4);
        let t_mild = random_near_isometry(dim, cfg.salted(0x26) ^ trial);
        let m = ExpLogMap::new(t_mild, x_off).unwrap();
        let back = m.inverse().unwrap().apply(&m.apply(&a).unwrap()).unwrap();
        let gap = back.matrix().dist(a.matrix()) / a.hermitian().frobenius_norm().max(1.0);
        report.record(gap <= 1e-8, gap, || {
            format!("explog inverse dim={dim} trial={trial}: gap {gap:.3e}")
        });
    }

    // Positive preservation checks on a fixed non-unitary congruence.
    for dim in cfg.dims(2, 4) {
        let t_diag: Vec<f64> = (1..=dim).map(|k| k as f64).collect();
        let map = PreserverMap::Congruence(
            CongruenceMap::new(ComplexMatrix::diag_real(&t_diag), false).unwrap(),
        );
        for spec_str in ["stein", "logdetalpha:0.5"] {
            let spec: DivergenceSpec = spec_str.parse().unwrap();
            let r = check_preserves(&spec, &map, dim, 50, cfg.salted(0x25), 1e-9).unwrap();
            report.record(r.pass, r.max_deviation, || {
                format!("{spec} dim={dim}: deviation {:.3e}", r.max_deviation)
            });
        }
    }
    report
}

fn random_invertible(dim: usize, seed: u64) -> ComplexMatrix {
    for attempt in 0..100u64 {
        let h = random_hermitian(dim, seed.wrapping_add(attempt), 1.0);
        let skew = random_hermitian(dim, seed.wrapping_add(attempt) ^ 0x99, 1.0);
        let t = ComplexMatrix::from_fn(dim, |i, j| {
            h.get(i, j) + skew.get(i, j) * num_complex::Complex64::new(0.0, 0.5)
        });
        // Keep the condition number moderate so inverse-law roundtrips stay
        // far from the tolerance they are checked against.
        let sv = matcore::singular_values(&t).unwrap();
        if sv[0] >= 1e-3 * sv[dim - 1] {
            return t;
        }
    }
    unreachable!("random matrices are invertible within the attempt budget");
}

/// An invertible matrix with singular values in `[0.8, 1.25]`; exp-log
/// roundtrips through such a map keep exponent norms small enough for f64
/// to resolve the inverse law sharply.
fn random_near_isometry(dim: usize, seed: u64) -> ComplexMatrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x1ce_b00da);
    let u = random_unitary(dim, rng.random::<u64>());
    let v = random_unitary(dim, rng.random::<u64>());
    let sigma: Vec<f64> = (0..dim).map(|_| 0.8 + 0.45 * rng.random::<f64>()).collect();
    &(&u * &ComplexMatrix::diag_real(&sigma)) * &v.adjoint()
}

// ---------------------------------------------------------------------------
// eigensolver: reconstruction and orthonormality residuals, including
// degenerate spectra. Defaults: 200 matrices over dims 1..=8, bound 1e-10.
// ---------------------------------------------------------------------------
pub fn run_eigensolver(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("eigensolver");
    let trials = cfg.trials_or(200);
    let tol = cfg.tol_or(1e-10);
    let dims = cfg.dims(1, 8);

    let check = |a: &HermitianMatrix, label: &str, report: &mut SuiteReport| {
        let d = eig_hermitian(a).unwrap();
        let norm = a.frobenius_norm();
        let recon = d.reconstruct().dist(a.matrix());
        let rel = if norm > 0.0 { recon / norm } else { recon };
        report.record(rel <= tol, rel, || {
            format!("{label}: reconstruction residual {rel:.3e}")
        });
        let u = d.eigenvectors();
        let ortho = (&u.adjoint() * u).dist(&ComplexMatrix::identity(a.dim()));
        report.record(ortho <= tol, ortho, || {
            format!("{label}: orthonormality residual {ortho:.3e}")
        });
    };

    for trial in 0..trials as u64 {
        let dim = dims[(trial as usize) % dims.len()];
        let scale = [0.1, 1.0, 10.0][(trial as usize) % 3];
        let a = random_hermitian(dim, cfg.salted(0x31) ^ trial, scale);
        check(&a, &format!("random dim={dim} trial={trial}"), &mut report);
    }

    // Degenerate spectra: rotated diag(1, 1, 2).
    for trial in 0..trials as u64 / 4 {
        let u = random_unitary(3, cfg.salted(0x32) ^ trial);
        let raw = ComplexMatrix::from_fn(3, |i, j| {
            let d = [1.0, 1.0, 2.0];
            (0..3).map(|k| u.get(i, k) * d[k] * u.get(j, k).conj()).sum()
        });
        let a = HermitianMatrix::symmetrize(raw);
        check(&a, &format!("degenerate trial={trial}"), &mut report);
        let d = eig_hermitian(&a).unwrap();
        let e = d.eigenvalues();
        let gap = (e[0] - 1.0).abs().max((e[1] - 1.0).abs()).max((e[2] - 2.0).abs());
        report.record(gap <= 1e-10, gap, || {
            format!("degenerate trial={trial}: eigenvalues {e:?}")
        });
    }
    report
}
