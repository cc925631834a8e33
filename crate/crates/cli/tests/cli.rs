use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer-coend"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn dims_examples() {
    assert_eq!(json(&["dims", "P", "2", "1"])["dim"], 3);
    assert_eq!(json(&["dims", "P'", "4", "2"])["dim"], 6);
    assert_eq!(json(&["dims", "graphs", "2", "1"])["dim"], 3);
    assert_eq!(json(&["dims", "graphs", "--p", "2", "--q", "0"])["dim"], 2);
}

#[test]
fn compare_examples() {
    let c = json(&["compare", "--n", "4", "--degree", "1"]);
    assert_eq!((c["dim"].as_u64(), c["coend_dim"].as_u64()), (Some(24), Some(24)));
    assert_eq!((c["surjective"].as_bool(), c["injective"].as_bool()), (Some(true), Some(true)));
    let c = json(&["compare", "--n", "2", "--degree", "0"]);
    assert_eq!((c["dim"].as_u64(), c["coend_dim"].as_u64()), (Some(1), Some(1)));
    let c = json(&["compare", "--n", "5", "--degree", "2"]);
    assert_eq!(c["surjective"], true);
    let range = json(&["compare", "--n-range", "3:4", "--degree", "1"]);
    assert_eq!(range.as_array().map(Vec::len), Some(2));
}

#[test]
fn compare_refuses_oversized_jobs() {
    let out = run(&["compare", "--n", "9", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force-size"));
}

#[test]
fn decompose_examples() {
    let d1 = json(&["decompose", "--degree", "1"]);
    assert_eq!(d1["convention"], "mu-dual");
    assert_eq!(d1["terms"].as_array().map(Vec::len), Some(2));
    let d0 = json(&["decompose", "--degree", "0"]);
    let unit = &d0["terms"][0];
    assert_eq!((unit["lambda"].as_array().map(Vec::len), unit["mult"].as_u64()), (Some(0), Some(1)));
    let d2 = json(&["decompose", "--degree", "2"]);
    let total: u64 = d2["terms"].as_array().unwrap().iter().map(|t| t["mult"].as_u64().unwrap()).sum();
    assert_eq!(total, 8);
    let flipped = json(&["decompose", "--degree", "1", "--convention", "lambda-dual"]);
    assert!(flipped["terms"].as_array().unwrap().iter().any(|t| t["mu"] == serde_json::json!([1, 1])));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.csv");
    let out = run(&["dims", "P", "2", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "functor,p,q,dim\nP,2,1,3\n");
}

#[test]
fn quick_selftest_passes() {
    let out = run(&["selftest", "quick"]);
    assert!(out.status.success());
    let s = json(&["selftest", "quick"]);
    assert_eq!(s["failed"], 0);
}

#[test]
fn full_selftest_reports_every_check() {
    let out = run(&["selftest", "full", "--n-max", "3", "--format", "json"]);
    let s: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed = s["failed"].as_u64().unwrap();
    assert_eq!(out.status.code(), Some(if failed == 0 { 0 } else { 1 }));
    assert!(s["checks"].as_array().unwrap().len() > 8);
}

#[test]
fn bad_arguments_exit_nonzero() {
    assert!(!run(&["dims", "Q", "1", "1"]).status.success());
    assert!(!run(&["compare", "--n-range", "5:3", "--degree", "1"]).status.success());
}
