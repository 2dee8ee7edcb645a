//! End-to-end tests of the pdcone binary: file formats, output precision,
//! determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdcone"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pdcone-cli-{}-{name}", std::process::id()));
    p
}

fn write_file(name: &str, contents: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn compute_stein_scalar_value() {
    let x = write_file("x21.mat", "2\n2 0 0 0\n0 0 1 0\n");
    let y = write_file("eye2.mat", "2\n1 0 0 0\n0 0 1 0\n");
    let out = run(&["compute", "--spec", "stein", x.to_str().unwrap(), y.to_str().unwrap()]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - (1.0 - std::f64::consts::LN_2)).abs() < 1e-12);
    // 15 significant digits: d.(14 digits)e<exp>
    assert!(stdout(&out).trim().contains("e"));
    std::fs::remove_file(x).ok();
    std::fs::remove_file(y).ok();
}

#[test]
fn compute_jensen_neglog_value() {
    let x = write_file("x4.mat", "1\n4 0\n");
    let y = write_file("y1.mat", "1\n1 0\n");
    let out = run(&[
        "compute",
        "--spec",
        "jensen:0.5:neglog",
        x.to_str().unwrap(),
        y.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 1.25f64.ln()).abs() < 1e-12);
    std::fs::remove_file(x).ok();
    std::fs::remove_file(y).ok();
}

#[test]
fn compute_self_divergence_is_zero() {
    let x = write_file("self.mat", "2\n3 0 1 0\n1 0 2 0\n");
    let out = run(&[
        "compute",
        "--spec",
        "bregman:power:2",
        x.to_str().unwrap(),
        x.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!(value.abs() < 1e-10);
    std::fs::remove_file(x).ok();
}

#[test]
fn compute_rejects_bad_inputs_with_exit_2() {
    let x = write_file("good.mat", "1\n2 0\n");
    // Unknown spec.
    let out = run(&["compute", "--spec", "banana", x.to_str().unwrap(), x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Non-Hermitian file.
    let bad = write_file("nonherm.mat", "2\n2 0 0 1\n0 1 2 0\n");
    let out = run(&["compute", "--spec", "stein", bad.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(msg.contains("Hermitian"), "{msg}");

    // Indefinite matrix where positive definite is required.
    let neg = write_file("negdef.mat", "1\n-1 0\n");
    let out = run(&["compute", "--spec", "stein", neg.to_str().unwrap(), x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive definite"));

    std::fs::remove_file(x).ok();
    std::fs::remove_file(bad).ok();
    std::fs::remove_file(neg).ok();
}

#[test]
fn gen_is_deterministic_and_validates() {
    let p1 = tmp("gen1.mat");
    let p2 = tmp("gen2.mat");
    for p in [&p1, &p2] {
        let out = run(&[
            "gen", "--dim", "3", "--seed", "7", "--lo", "0.5", "--hi", "5",
            "-o", p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&p1).unwrap(),
        std::fs::read(&p2).unwrap(),
        "same seed must give byte-identical files"
    );
    // The generated file round-trips through the PD validation in compute.
    let out = run(&["compute", "--spec", "stein", p1.to_str().unwrap(), p2.to_str().unwrap()]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!(value.abs() < 1e-12, "identical matrices have zero divergence");
    std::fs::remove_file(p1).ok();
    std::fs::remove_file(p2).ok();
}

#[test]
fn gen_degenerate_range_writes_scaled_identity() {
    let p = tmp("gen-forced.mat");
    let out = run(&["gen", "--dim", "1", "--seed", "9", "--lo", "2", "--hi", "2", "-o", p.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("1"));
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(row, vec![2.0, 0.0]);
    std::fs::remove_file(p).ok();
}

#[test]
fn gen_rejects_invalid_range() {
    let p = tmp("gen-bad.mat");
    let out = run(&["gen", "--dim", "2", "--seed", "1", "--lo", "0", "--hi", "1", "-o", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_suite_passes_and_is_deterministic() {
    let args = [
        "verify", "--suite", "gauges", "--dim", "4", "--trials", "60", "--seed", "42",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert!(out1.status.success());
    assert_eq!(stdout(&out1), stdout(&out2), "reports must be byte-identical");
    assert!(stdout(&out1).starts_with("PASS gauges"));
}

#[test]
fn verify_all_reports_every_suite_in_order() {
    let out = run(&["verify", "--suite", "all", "--trials", "5", "--seed", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let names: Vec<&str> = text
        .lines()
        .filter_map(|l| l.split_whitespace().nth(1))
        .collect();
    assert_eq!(
        names,
        vec![
            "closedforms", "invariance", "homogeneity", "claimA", "claimB",
            "fprime-order", "metric-sqrt", "gauges", "inequalities",
            "preservers", "eigensolver",
        ]
    );
}

#[test]
fn verify_dump_writes_key_value_tokens() {
    let dump = tmp("dump.txt");
    let out = run(&[
        "verify", "--suite", "eigensolver", "--trials", "8",
        "--dump", dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("suite=eigensolver pass=true trials="));
    assert!(text.contains("worst="));
    std::fs::remove_file(dump).ok();
}

#[test]
fn verify_exit_codes() {
    // Unknown suite: usage error.
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));

    // An absurdly tight tolerance forces a legitimate FAIL and exit 1.
    let out = run(&[
        "verify", "--suite", "closedforms", "--trials", "5", "--tol", "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL closedforms"));
}
