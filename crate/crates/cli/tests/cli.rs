use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quarterplane::heat::HeatPoint;
use quarterplane::kdv::{example2_v, DEFAULT_EPSILON};
use quarterplane::oracle::erfc_solution;
use serde_json::Value;

fn qp(args: &[&str]) -> Output {
    qp_env(args, &[])
}

fn qp_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quarterplane"));
    cmd.args(args).env_remove("QUARTERPLANE_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn rows(p: &Path) -> Vec<[f64; 4]> {
    let text = fs::read_to_string(p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,t,value,abs_error"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

fn out(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn heat_step_matches_erfc() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["solve", "--eq", "heat", "--u0", "0", "--g0", "1", "--f", "0", "--grid", "default", "--out", &out(&d, "s")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = rows(&d.path().join("s/solution.csv"));
    assert_eq!(rows.len(), 128);
    for [x, t, v, e] in rows {
        let exact = erfc_solution(x, t).unwrap();
        assert!((v - exact).abs() <= 1e-10, "({x}, {t}): {v} vs {exact}");
        assert!(e <= 1e-10);
    }
    let m = read_json(&d.path().join("s/manifest.json"));
    assert_eq!(m["warnings"].as_array().unwrap().len(), 1);
    assert!(m["warnings"][0].as_str().unwrap().starts_with("incompatible data"));
    assert_eq!(m["compatibility"]["conditions"][0]["pass"], false);
}

#[test]
fn kdv_step_matches_example() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["solve", "--eq", "kdv", "--u0", "0", "--g0", "1", "--f", "0", "--grid", "1,1", "--out", &out(&d, "s")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = rows(&d.path().join("s/solution.csv"));
    let v = example2_v(HeatPoint::new(1.0, 1.0).unwrap(), DEFAULT_EPSILON, 1e-12).unwrap();
    assert!((r[0][2] - v).abs() < 1e-10, "{} vs {v}", r[0][2]);
}

#[test]
fn zero_data_give_zeros() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["solve", "--eq", "heat", "--u0", "0", "--g0", "0", "--f", "0", "--out", &out(&d, "s")]);
    assert_eq!(code(&o), 0);
    assert!(rows(&d.path().join("s/solution.csv")).iter().all(|r| r[2] == 0.0 && r[3] == 0.0));
    let m = read_json(&d.path().join("s/manifest.json"));
    assert!(m["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn manifest_reproduces_the_run() {
    let d = tempfile::tempdir().unwrap();
    let a = out(&d, "a");
    let o = qp(&["solve", "--eq", "kdv", "--u0", "x*exp(-x^2)", "--g0", "t", "--grid", "0.5:2:3,log:0.1:1:2", "--tol", "1e-9", "--out", &a]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let manifest = d.path().join("a/manifest.json");
    let b = out(&d, "b");
    let o = qp(&["solve", "--config", manifest.to_str().unwrap(), "--out", &b]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["solution.csv", "manifest.json"] {
        assert_eq!(fs::read(d.path().join("a").join(f)).unwrap(), fs::read(d.path().join("b").join(f)).unwrap(), "{f}");
    }
}

#[test]
fn tolerance_precedence() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("c.json");
    let tol_of = |dir: &str| read_json(&d.path().join(dir).join("manifest.json"))["tol"].as_f64().unwrap();
    let base = ["solve", "--eq", "heat", "--data", "step", "--grid", "1,1"];

    let o = qp_env(&[&base[..], &["--out", &out(&d, "env")]].concat(), &[("QUARTERPLANE_TOL", "1e-7")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(tol_of("env"), 1e-7);

    fs::write(&cfg, r#"{"tol": 1e-8}"#).unwrap();
    let o = qp_env(
        &[&base[..], &["--config", cfg.to_str().unwrap(), "--out", &out(&d, "cfg")]].concat(),
        &[("QUARTERPLANE_TOL", "1e-7")],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(tol_of("cfg"), 1e-8);

    let o = qp_env(
        &[&base[..], &["--config", cfg.to_str().unwrap(), "--tol", "1e-9", "--out", &out(&d, "flag")]].concat(),
        &[("QUARTERPLANE_TOL", "1e-7")],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(tol_of("flag"), 1e-9);

    let o = qp(&[&base[..], &["--out", &out(&d, "default")]].concat());
    assert_eq!(tol_of("default"), 1e-10, "{}", stderr(&o));

    let o = qp_env(&[&base[..], &["--out", &out(&d, "bad")]].concat(), &[("QUARTERPLANE_TOL", "tiny")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn compatible_custom_data_carry_no_warning() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["solve", "--eq", "kdv", "--u0", "sin(x)*exp(-x^2)", "--g0", "7*t", "--grid", "1,1", "--out", &out(&d, "s")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m = read_json(&d.path().join("s/manifest.json"));
    assert!(m["warnings"].as_array().unwrap().is_empty(), "{m}");
}

#[test]
fn csv_uses_seventeen_digits() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["solve", "--eq", "heat", "--data", "step", "--grid", "0.1,0.1", "--out", &out(&d, "s")]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(d.path().join("s/solution.csv")).unwrap();
    let line = text.lines().nth(1).unwrap();
    assert!(line.starts_with("0.10000000000000001,0.10000000000000001,"), "{line}");
}

#[test]
fn first_heat_counterexample() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["counterexample", "--eq", "heat", "--n", "1", "--out", &out(&d, "c")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["witness.csv", "certificate.json", "explain.json", "explain.txt", "manifest.json"] {
        assert!(d.path().join("c").join(f).exists(), "{f}");
    }
    let cert = read_json(&d.path().join("c/certificate.json"));
    let p = cert["l2_exponent_fit"]["p"].as_f64().unwrap();
    assert!((p + 1.5).abs() < 1e-3, "{p}");
    let text = fs::read_to_string(d.path().join("c/explain.txt")).unwrap();
    assert!(text.contains("uniform L2 bound"));
    assert!(rows(&d.path().join("c/witness.csv")).iter().any(|r| r[2].abs() > 1e-3));
}

#[test]
fn kdv_counterexample_certifies() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["counterexample", "--eq", "kdv", "--n", "2", "--out", &out(&d, "c")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let e = read_json(&d.path().join("c/explain.json"));
    assert!(e["l2_exponent"].as_f64().unwrap() < 0.0);
}

#[test]
fn counterexample_orders_are_checked() {
    assert_eq!(code(&qp(&["counterexample", "--eq", "heat", "--n", "0"])), 2);
    assert_eq!(code(&qp(&["counterexample", "--eq", "kdv", "--n", "7"])), 2);
}

#[test]
fn failed_certification_names_the_clause() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("c.json");
    fs::write(&cfg, r#"{"probe": {"thresholds": {"residual": 1e-30}}}"#).unwrap();
    let o = qp(&["counterexample", "--eq", "heat", "--n", "1", "--config", cfg.to_str().unwrap(), "--out", &out(&d, "c")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("clause `residual`"), "{}", stderr(&o));
}

#[test]
fn verify_compatible_utm_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["verify", "--eq", "heat", "--data", "exp-compat", "--candidate", "utm", "--out", &out(&d, "v")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = read_json(&d.path().join("v/report.json"));
    assert_eq!(r["passed"], true);
}

#[test]
fn verify_witness_fails_only_integrability() {
    let d = tempfile::tempdir().unwrap();
    let o = qp(&["verify", "--eq", "heat", "--data", "zero", "--candidate", "witness:1", "--out", &out(&d, "v")]);
    assert_eq!(code(&o), 1);
    let m = read_json(&d.path().join("v/manifest.json"));
    assert_eq!(m["failed_clauses"], serde_json::json!(["integrability"]));
}

#[test]
fn verify_zero_solution_of_kdv() {
    let o = qp(&["verify", "--eq", "kdv", "--data", "zero", "--candidate", "utm"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["passed"], true);
}

#[test]
fn verify_rejects_non_solutions() {
    let o = qp(&["verify", "--eq", "heat", "--data", "zero", "--candidate", "x*t"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = r["clauses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"decay"), "{failed:?}");
}

#[test]
fn parse_errors_carry_a_column() {
    let o = qp(&["verify", "--eq", "heat", "--candidate", "x +* t"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("column 4"), "{}", stderr(&o));
    let o = qp(&["solve", "--eq", "heat", "--u0", "exp(-x", "--grid", "1,1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("column"), "{}", stderr(&o));
}
