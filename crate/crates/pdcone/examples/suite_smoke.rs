use pdcone::suites::{run_all, SuiteConfig};

fn main() {
    let cfg = SuiteConfig { dim: 8, trials: None, seed: 42, tol: None };
    let start = std::time::Instant::now();
    for report in run_all(&cfg) {
        println!("{report}");
        if let Some(ce) = &report.counterexample {
            println!("   first counterexample: {ce}");
        }
    }
    println!("elapsed: {:?}", start.elapsed());
}
