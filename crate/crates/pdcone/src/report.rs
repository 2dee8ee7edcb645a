//! Line-oriented suite reports, grep-friendly by construction.

use std::fmt;

/// Aggregated outcome of one verification suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    /// Worst deviation observed, in the suite's own metric.
    pub worst: f64,
    /// Optional description of the first failing case (matrix dumps or a
    /// short token summary).
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            trials: 0,
            passes: 0,
            failures: 0,
            worst: 0.0,
            counterexample: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    /// Records one check outcome, tracking the worst deviation and keeping
    /// the first counterexample description.
    pub fn record(&mut self, ok: bool, deviation: f64, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if deviation.abs() > self.worst.abs() {
            self.worst = deviation;
        }
        if ok {
            self.passes += 1;
        } else {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// The one-line `PASS|FAIL <suite> trials=<n> worst=<dev>` form.
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} trials={} worst={:.3e}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            self.trials,
            self.worst
        )
    }

    /// Key=value tokens for the machine-readable dump.
    pub fn dump_line(&self) -> String {
        let mut line = format!(
            "suite={} pass={} trials={} passes={} failures={} worst={:.17e}",
            self.name,
            self.pass(),
            self.trials,
            self.passes,
            self.failures,
            self.worst
        );
        if let Some(ce) = &self.counterexample {
            line.push_str(" counterexample=");
            line.push_str(&ce.replace('\n', ";"));
        }
        line
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}
