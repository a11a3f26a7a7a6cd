use std::process::Command;

use serde_json::{json, Value};

use triquiver::service::{handle, render};

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_triquiver")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn row7() -> Value {
    json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["-1+i", "-2+i", "-4+i"], "sheets": [0, 0, 0]})
}

#[test]
fn hom_example() {
    let (code, out) = run(&["hom", "a:0", "a:1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["degree"].clone(), v["dim"].clone()), (json!(0), json!(2)));
}

#[test]
fn classify_from_a_file() {
    let path = std::env::temp_dir().join(format!("triquiver-row7-{}.json", std::process::id()));
    std::fs::write(&path, row7().to_string()).unwrap();
    let (code, out) = run(&["classify", "--point", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c0_cardinality"], "6");
}

#[test]
fn output_matches_the_shared_handler() {
    let (_, out) = run(&["classify", "--point", &row7().to_string()]);
    assert_eq!(out.trim_end(), render(&handle("classify", &row7()).unwrap(), false));
    let (_, pretty) = run(&["--pretty", "locate", "--point", &row7().to_string()]);
    assert!(pretty.contains("\n  \"location\": \"ChB_interior\""));
}

#[test]
fn verify_example_has_no_mismatches() {
    let (code, out) = run(&["verify", "--charge", "i,3i,2i", "--bound", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mismatches"], json!([]));
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn validation_errors_exit_with_one() {
    let bad = json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["-1+i", "-1+i", "-4+i"], "sheets": [0, 0, 0]});
    let (code, out) = run(&["classify", "--point", &bad.to_string()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["code"], "ChartViolation");
    let (code, _) = run(&["classify", "--point", "/nonexistent/point.json"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["hom", "a:x", "b:0"]);
    assert_eq!(code, 1);
}

#[test]
fn charts_and_walk() {
    let (code, out) = run(&["charts"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["charts"].as_array().unwrap().len(), 8);
    let start = json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["1+i", "-1-3i", "-1-5i"], "sheets": [0, 1, 1]});
    let end = json!({"chart": {"family": "b_b_Mp", "index": 0}, "charges": ["1+i", "-1-i", "-1-5i"], "sheets": [0, 1, 1]});
    let (code, out) = run(&["walk", "--start", &start.to_string(), "--end", &end.to_string(), "--steps", "4"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().last().unwrap()["location"], "W_bbMp(0)");
}

#[test]
fn fixture_suite_prints_a_matrix() {
    let (code, out) = run(&["--fixture-suite"]);
    assert_eq!(code, 0);
    assert!(out.contains("b b M'"));
    assert!(out.contains("0 mismatches"));
    let (code, out) = run(&["--fixture-suite", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
}
