use std::path::PathBuf;
use std::process::Command;

use plurikit::suite::{CriterionResult, Level, SuiteReport};
use plurikit_cli::{check_report, suite_exit, Exit};
use serde_json::{json, Value};

const HYPERCOMPLEX: &str = r#"{"n": 2, "X": [["0","1"],["-1","0"]], "Y": [["0","0"],["0","0"]]}"#;

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("plurikit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn bin(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_plurikit")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn validate_certifies_the_hypercomplex_pair() {
    let f = scratch("hyp.json", HYPERCOMPLEX);
    let (code, v, err) = bin(&["validate", "--input", f.to_str().unwrap(), "--samples", "4096"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "certified");
    assert!(check_report(&v).is_ok());
    assert!(err.contains("elapsed"));
}

#[test]
fn cohomology_at_minus_one_vanishes() {
    let f = scratch("hyp2.json", HYPERCOMPLEX);
    let (code, v, _) = bin(&["cohomology", "--input", f.to_str().unwrap(), "--twist", "-1", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["h0"], 0);
    assert_eq!(v["result"]["h1"], 0);
}

#[test]
fn malformed_json_reports_its_position() {
    let f = scratch("bad.json", "{\"n\": 2,\n \"X\": [[\"0\", }");
    let (code, v, err) = bin(&["validate", "--input", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");
    assert!(check_report(&v).is_ok());
}

#[test]
fn unknown_verbs_and_options_are_rejected() {
    assert_eq!(bin(&["frobnicate"]).0, 1);
    let f = scratch("hyp3.json", HYPERCOMPLEX);
    assert_eq!(bin(&["validate", "--input", f.to_str().unwrap(), "--bogus"]).0, 1);
    assert_eq!(bin(&["validate", "--input", "/nonexistent/pair.json"]).0, 1);
    assert_eq!(bin(&["cohomology", "--input", f.to_str().unwrap()]).0, 1);
}

#[test]
fn inconclusive_certification_exits_three() {
    let f = scratch(
        "near.json",
        r#"{"k": 1, "P": {"bidegree": [1, 1], "coeffs": [["0", "1"], ["1-1/1000000i", "0"]]}}"#,
    );
    let (code, v, _) = bin(&["curve", "--input", f.to_str().unwrap(), "--samples", "64"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["antidiagonal"]["status"], "unknown");
}

#[test]
fn failing_suites_are_violations() {
    let bad = SuiteReport {
        level: Level::Smoke,
        seed: 0,
        results: vec![CriterionResult { id: 1, title: "t", passed: false, detail: json!({}), reproducer: None, seconds: 0.0 }],
    };
    assert_eq!(suite_exit(&bad), Exit::Violation);
}

#[test]
fn smoke_selftest_is_deterministic() {
    let (c1, a, _) = bin(&["selftest", "--level", "smoke", "--seed", "7"]);
    let (c2, b, _) = bin(&["selftest", "--level", "smoke", "--seed", "7"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(a["result"]["criteria"].as_array().unwrap().len(), 12);
}

#[test]
fn reports_round_trip() {
    let f = scratch("hyp4.json", HYPERCOMPLEX);
    let out = f.with_file_name("normalized.json");
    let (code, v, _) = bin(&["normalize", "--input", f.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(v.is_null());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(check_report(&report).is_ok());
    let pair = scratch("renorm.json", &report["result"]["normalized"].to_string());
    let (code, v, _) = bin(&["validate", "--mode", "float", "--input", pair.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "certified");
}

#[test]
fn monopole_commands() {
    let (code, v, _) = bin(&["monopole-axisym", "--charge", "2", "--mass", "1", "--roots", "i,-i"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lambda"]["b_zero"], true);
    let sources: Vec<&str> =
        v["result"]["vanishing"]["links"].as_array().unwrap().iter().map(|l| l["source"].as_str().unwrap()).collect();
    assert!(sources.contains(&"computed") && sources.contains(&"paper-cited"));
    let (code, _, _) = bin(&["monopole-axisym", "--mode", "float", "--charge", "3", "--mass", "0", "--roots", "1@60,1@180,1@300"]);
    assert_eq!(code, 0);
    assert_eq!(bin(&["monopole-axisym", "--charge", "2", "--mass", "1/3", "--roots", "i,-i"]).0, 1);

    let f = scratch("ml.json", r#"{"k": 2, "p": ["2", "0", "1"], "q": ["-i", "1"]}"#);
    let (code, v, _) = bin(&["monopole-massless", "--input", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["intersection"]["dim"], 2);
    assert_eq!(v["result"]["splitting"]["degrees"], json!([2, 2, 0, 0]));
}

#[test]
fn in_process_run_matches_the_binary() {
    let f = scratch("hyp5.json", HYPERCOMPLEX);
    let out = plurikit_cli::run(["plurikit", "profile", "--input", f.to_str().unwrap()]);
    assert_eq!(out.exit, Exit::Computed);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["degrees"], json!([1, 1]));
}
