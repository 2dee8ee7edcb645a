//! Command implementations behind the `pdcone` binary.
//!
//! Exit codes: 0 on success (and all suites passing), 1 when a verification
//! suite fails, 2 on usage, parse, or domain errors.

use std::path::Path;

use crate::divergences::DivergenceSpec;
use crate::matcore;
use crate::matfile;
use crate::suites::{run_all, run_suite, SuiteConfig, SUITE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `pdcone compute --spec <spec> <X.mat> <Y.mat>`: prints the divergence
/// value with 15 significant digits.
pub fn cmd_compute(spec_string: &str, x_path: &Path, y_path: &Path) -> i32 {
    let spec: DivergenceSpec = match spec_string.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let x = match matfile::read_pd(x_path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let y = match matfile::read_pd(y_path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match spec.evaluate(&x, &y) {
        Ok(v) => {
            println!("{:.14e}", v.value());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// `pdcone gen --dim N --seed S [--lo a --hi b] -o <path>`: writes a seeded
/// random positive definite matrix in the file format.
pub fn cmd_gen(dim: usize, seed: u64, lo: f64, hi: f64, out: &Path) -> i32 {
    let m = match matcore::random_pd(dim, seed, lo, hi) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match matfile::write_matrix(out, m.matrix()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// `pdcone verify --suite <name|all> [...]`: one summary line per suite on
/// stdout, optional key=value dump file, exit 0 iff everything passed.
pub fn cmd_verify(suite: &str, cfg: &SuiteConfig, dump: Option<&Path>) -> i32 {
    let reports = if suite == "all" {
        run_all(cfg)
    } else {
        match run_suite(suite, cfg) {
            Some(r) => vec![r],
            None => {
                eprintln!(
                    "error: unknown suite '{suite}' (expected one of: all, {})",
                    SUITE_NAMES.join(", ")
                );
                return EXIT_USAGE;
            }
        }
    };

    for report in &reports {
        println!("{}", report.summary_line());
        if !report.pass() {
            if let Some(ce) = &report.counterexample {
                println!("  first counterexample: {ce}");
            }
        }
    }

    if let Some(path) = dump {
        let mut text = String::new();
        for report in &reports {
            text.push_str(&report.dump_line());
            text.push('\n');
        }
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }

    if reports.iter().all(|r| r.pass()) {
        EXIT_OK
    } else {
        EXIT_SUITE_FAILED
    }
}
