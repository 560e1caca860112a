use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dirac-bounds"));
    c.env_remove("DIRAC_BOUNDS_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn constants_endpoints() {
    let o = run(&["constants", "--nu", "0"]);
    assert_eq!(code(&o), 0);
    assert!((json(&o)["c_nu"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = run(&["constants", "--nu", "1"]);
    let v = json(&o);
    assert_eq!(v["c_nu"].as_f64().unwrap(), 0.0);
    assert!((v["non_critical"].as_f64().unwrap() - (229f64.sqrt() - 8.0) / 15.0).abs() < 1e-12);
}

#[test]
fn constants_schema_at_half() {
    let v = json(&run(&["constants", "--nu", "0.5"]));
    for key in ["nu", "upsilon", "eta", "c_nu", "non_critical", "massive_1", "massive_2", "alpha_threshold"] {
        assert!(v[key].as_f64().is_some_and(f64::is_finite), "{key}");
    }
    let csv = run(&["constants", "--nu", "0.5", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().next().unwrap().split(',').any(|h| h == "c_nu"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["constants", "--nu", "1.5"][..],
        &["constants", "--nu", "-0.1"],
        &["constants"],
        &["no-such-command"],
        &["certify", "--target", "c3"],
        &["spectrum", "--s", "0.3"],
        &["spectrum", "--l", "0", "--s", "-0.5"],
        &["furry", "--nu", "0.5", "--pot", "cubic"],
        &["furry", "--nu", "0.5", "--pot", "file"],
        &["curve", "--n", "1"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 1, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn curve_rows_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.csv");
    assert_eq!(code(&run(&["curve", "--n", "2", "--out", two.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&two).unwrap();
    assert_eq!(text.lines().skip(1).count(), 2);

    let path = dir.path().join("c.csv");
    assert_eq!(code(&run(&["curve", "--n", "101", "--out", path.to_str().unwrap()])), 0);
    let mut rd = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<(f64, f64)> = rd.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0], (0.0, 1.0));
    assert_eq!(rows[100], (1.0, 0.0));
    assert!(rows.windows(2).all(|w| w[1].1 < w[0].1));
    assert_eq!(rows, dirac_core::constants::curve_samples(101).unwrap());

    let bad = dir.path().join("missing").join("c.csv");
    assert_eq!(code(&run(&["curve", "--n", "5", "--out", bad.to_str().unwrap()])), 1);
}

#[test]
fn certify_exit_codes() {
    let o = run(&["certify", "--target", "c2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "certified");

    // depth 0 cannot split a single cell, so the bisection gives up
    let o = run(&["certify", "--target", "appendix-a", "--depth", "0"]);
    assert_eq!(code(&o), 2);
    assert_ne!(json(&o)["status"], "certified");

    let o = bin().args(["certify", "--target", "appendix-a", "--depth", "0"]).env("DIRAC_BOUNDS_PRECISION", "40").output().unwrap();
    assert_eq!(code(&o), 0);
    let o = bin().args(["certify", "--target", "c2"]).env("DIRAC_BOUNDS_PRECISION", "lots").output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn certify_all_has_six_certificates() {
    let o = run(&["--jobs", "2", "certify", "--target", "all"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 6);
    assert!(steps.iter().all(|s| s["status"] == "certified"));
    for key in ["target", "domain", "status", "worst", "cells", "depth"] {
        assert!(steps[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn massive_free_spectrum_gap() {
    let o = run(&["spectrum", "--nu", "0", "--M", "1", "--l", "0", "--s", "0.5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,eigenvalue"));
    let eig: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(eig.len(), 2048);
    let min = eig.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    assert!((0.995..=1.001).contains(&min), "{min}");

    let v = json(&run(&["spectrum", "--nu", "0", "--M", "1", "--grid", "256"]));
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 512);
}

#[test]
fn furry_binds_at_critical_coupling() {
    let o = run(&["furry", "--nu", "1", "--l", "0", "--s", "0.5", "--pot", "exp", "--strength", "0.1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["negatives"].as_u64().unwrap() >= 1);
    assert!(v["clr_bound"].is_null());
}

#[test]
fn furry_reads_potential_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let rows: String = (0..=400).map(|k| k as f64 * 0.05).map(|r| format!("{r},{}\n", 2.0 * (-r as f64).exp())).collect();
    std::fs::write(&path, format!("r,v\n{rows}")).unwrap();
    let o = run(&["furry", "--nu", "0.5", "--grid", "256", "--pot", "file", "--pot-file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(v["negatives"].as_f64().unwrap() <= v["clr_bound"].as_f64().unwrap());
}

#[test]
fn virtual_level_verdicts() {
    let v = json(&run(&["virtual-level", "--pot", "zero"]));
    assert_eq!(v["verdict"], "not-guaranteed");
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    let v = json(&run(&["virtual-level", "--pot", "gaussian", "--strength", "0.01", "--theta-order", "8", "--phi-order", "8"]));
    assert_eq!(v["verdict"], "negative-eigenvalue-guaranteed");
}

#[test]
fn rayleigh_is_seeded() {
    let args = ["rayleigh", "--nu", "0.5", "--grid", "128", "--trials", "20", "--seed", "3"];
    let a = json(&run(&args));
    let b = json(&run(&args));
    assert_eq!(a, b);
    assert!(a["worst_ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn lt_and_transform() {
    let v = json(&run(&["lt", "--nu", "0.5", "--gamma", "2"]));
    assert!((v["value"].as_f64().unwrap() - 0.463_355_867_809_538_96).abs() < 1e-12);
    let o = run(&["transform", "--kind", "mellin", "--tau-max", "0", "--points", "2", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let re: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    // Γ(1/2)/√(2π)
    assert!((re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7, "{re}");
}
