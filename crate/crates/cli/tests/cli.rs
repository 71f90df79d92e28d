use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn pbe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbe")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn verify_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pbe(&["verify", "--n", "3", "--omega", "-0.4", "--which", "sin", "--variant", "cnot", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = stdout_json(&o);
    assert_eq!(summary["report"]["passed"], Value::Bool(true));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert!(report["max_abs_error"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn failed_verification_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbe(&["verify", "--n", "2", "--omega", "1", "--tol", "1e-300", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"]["kind"], "verification");
    assert!(dir.path().join("verify.json").exists());
    let o = pbe(&["verify", "--tol=-1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"]["kind"], "config");
}

#[test]
fn usage_errors_are_json_with_status_two() {
    let o = pbe(&["verify", "--n", "three"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_json(&o);
    assert!(err["error"]["kind"].as_str().unwrap().starts_with("usage"));
    assert!(err["error"]["message"].as_str().unwrap().contains("three"));
    assert_eq!(pbe(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn help_is_plain_text() {
    let o = pbe(&["--help"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("export-circuit"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("elliptic.json");
    fs::write(&cfg, r#"{"d":1.0,"a0":1.5,"omega_x":2.0,"n":3,"extra":1}"#).unwrap();
    let o = pbe(&["export-circuit", "--kind", "elliptic", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr_json(&o)["error"]["message"].as_str().unwrap().contains("extra"));
}

#[test]
fn missing_config_file_names_the_path() {
    let o = pbe(&["adr", "--config", "/nonexistent/adr.json", "--out", "/tmp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr_json(&o)["error"]["message"].as_str().unwrap().contains("/nonexistent/adr.json"));
}

#[test]
fn exported_circuit_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbe(&["export-circuit", "--kind", "shift", "--n", "3", "--direction", "right", "--decompose", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("circuit.json")).unwrap();
    let c = pbe_core::circuit::Circuit::from_json(&text).unwrap();
    assert_eq!(stdout_json(&o)["gates"].as_u64().unwrap() as usize, c.len());
}

#[test]
fn p0_sweep_matches_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbe(&["p0-sweep", "--n", "3", "--points", "16", "--state", "random", "--seed", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = pbe_core::io::parse_csv(&fs::read_to_string(dir.path().join("p0_sweep.csv")).unwrap()).unwrap();
    let p0 = table.floats("p0").unwrap();
    let closed = table.floats("p0_closed_form").unwrap();
    assert_eq!(p0.len(), 16);
    assert!(p0.iter().zip(&closed).all(|(a, b)| (a - b).abs() <= 1e-12));
}
