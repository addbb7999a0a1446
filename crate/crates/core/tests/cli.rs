use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn plmorse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plmorse")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    assert!(plmorse(&full).status.success());
    path
}

#[test]
fn analyze_fan_reports_central_component() {
    let dir = tempdir().unwrap();
    let net = generate(dir.path(), "fan2.json", &["--fan", "2"]);
    let report = json(&plmorse(&["analyze", &net]));
    for key in ["thresholds", "components", "global", "global_h_complexity", "stable", "coarse", "counts", "vertices", "flags"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    let central = report["components"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["level"] == "0" && c["ranks"] == serde_json::json!([0, 2, 0]));
    assert!(central.is_some(), "{report}");
}

#[test]
fn analyze_writes_report_file() {
    let dir = tempdir().unwrap();
    let net = generate(dir.path(), "cb.json", &["--coarse-bound", "4"]);
    let out = dir.path().join("report.json");
    let status = plmorse(&["analyze", &net, "--report", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["coarse"]["sublevel"], serde_json::json!([0, 2, 0]));
}

#[test]
fn analyze_rejects_nontransversal_with_exit_2() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("nt.json");
    // the second layer vanishes on the quadrant where both first-layer units are off
    std::fs::write(
        &path,
        r#"{"layers": [
            {"weights": [["1", "0"], ["0", "1"]], "bias": ["0", "0"], "activation": "relu"},
            {"weights": [["1", "1"]], "bias": ["0"], "activation": "relu"},
            {"weights": [["1"]], "bias": ["0"], "activation": "none"}
        ]}"#,
    )
    .unwrap();
    let out = plmorse(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"layers": [{"weights": [["1", "x"]], "bias": ["0"]}]}"#).unwrap();
    let out = plmorse(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!plmorse(&["analyze", "--no-such-flag", "x"]).status.success());
}

#[test]
fn montecarlo_is_deterministic() {
    let args = ["montecarlo", "--plmorse", "2", "3", "--trials", "10", "--seed", "1"];
    let a = plmorse(&args);
    let b = plmorse(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let summary = json(&a);
    assert_eq!(summary["trials"], 10);
}

#[test]
fn export_svg_draws_one_line_per_unit() {
    let dir = tempdir().unwrap();
    let net = generate(dir.path(), "fan2.json", &["--fan", "2"]);
    let out = plmorse(&["export-svg", &net]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("<svg"));
    assert_eq!(svg.matches("<line ").count(), 6);
}

#[test]
fn export_svg_needs_planar_input() {
    let dir = tempdir().unwrap();
    let net = generate(dir.path(), "r.json", &["--random", "3,2,1", "--seed", "4"]);
    let out = plmorse(&["export-svg", &net]);
    assert!(!out.status.success());
}

#[test]
fn oracle_counts_components() {
    let dir = tempdir().unwrap();
    let net = generate(dir.path(), "fan1.json", &["--fan", "1"]);
    let out = json(&plmorse(&["oracle", &net, "--threshold", "-1/4", "--resolution", "1/16", "--box", "4"]));
    assert_eq!(out["betti"][0], 2);
}

#[test]
fn generate_random_is_reproducible() {
    let a = plmorse(&["generate", "--random", "2,3,1", "--seed", "9"]);
    let b = plmorse(&["generate", "--random", "2,3,1", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let net = json(&a);
    assert_eq!(net["layers"].as_array().unwrap().len(), 2);
}
