use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pdcone::cli;
use pdcone::suites::SuiteConfig;

/// Divergences on the positive definite cone: evaluation, seeded matrix
/// generation, and the numerical verification suites.
#[derive(Parser)]
#[command(name = "pdcone", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a divergence between two matrices in .mat files.
    Compute {
        /// Divergence spec, e.g. stein, umegaki, logdetalpha:0.5,
        /// bregman:power:2, jensen:0.5:neglog, gdm:trace:stein.
        #[arg(long)]
        spec: String,
        /// First (left) argument.
        x: PathBuf,
        /// Second (right) argument.
        y: PathBuf,
    },
    /// Generate a seeded random positive definite matrix file.
    Gen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        /// Smallest admissible eigenvalue.
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        /// Largest admissible eigenvalue.
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run verification suites and print one PASS/FAIL line per suite.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Maximum matrix dimension the suites sample.
        #[arg(long, default_value_t = 8)]
        dim: usize,
        /// Trial count; defaults to each suite's own standard count.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Tolerance override; defaults to each suite's own threshold.
        #[arg(long)]
        tol: Option<f64>,
        /// Write a key=value report dump to this path.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compute { spec, x, y } => cli::cmd_compute(&spec, &x, &y),
        Command::Gen {
            dim,
            seed,
            lo,
            hi,
            out,
        } => cli::cmd_gen(dim, seed, lo, hi, &out),
        Command::Verify {
            suite,
            dim,
            trials,
            seed,
            tol,
            dump,
        } => {
            let cfg = SuiteConfig {
                dim,
                trials,
                seed,
                tol,
            };
            cli::cmd_verify(&suite, &cfg, dump.as_deref())
        }
    };
    ExitCode::from(code as u8)
}
