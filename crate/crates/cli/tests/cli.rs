//! End-to-end tests of the `hodgecy` binary: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgecy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, code)
}

fn diamonds(rows: &Value) -> Vec<Vec<u64>> {
    rows.as_array()
        .unwrap()
        .iter()
        .map(|r| r["diamond"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect())
        .collect()
}

#[test]
fn classify_weight_three() {
    let (v, code) = json(&["classify", "--weight", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        diamonds(&v["primitive"]),
        vec![vec![1, 9, 9, 1], vec![1, 6, 6, 1], vec![1, 15, 15, 1], vec![1, 27, 27, 1]]
    );
    assert!(v.get("domains").is_none());
}

#[test]
fn classify_domain_table() {
    let (v, code) = json(&["classify", "--table"]);
    assert_eq!(code, 0);
    let rows = v["domains"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    let ranks: Vec<&str> = rows.iter().map(|r| r["rank"].as_str().unwrap()).collect();
    assert_eq!(ranks, vec!["2", "3", "3", "2", "2", "2", "3"]);
}

#[test]
fn classify_table_format() {
    let out = run(&["classify", "--weight", "3", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(1,27,27,1)"));
    assert!(text.contains("EVII"));
}

#[test]
fn classify_rejects_other_weights() {
    assert_eq!(run(&["classify", "--weight", "2"]).status.code(), Some(2));
}

#[test]
fn family_commands() {
    let c = data("diag3.json");
    let (v, code) = json(&["family", "check", "--cubic", &c]);
    assert_eq!((v["transversal"].as_bool(), code), (Some(true), 0));
    let (v, code) = json(&["family", "yukawa", "--cubic", &c]);
    assert_eq!(code, 0);
    assert_eq!(v["yukawa"][0]["index"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["yukawa"][0]["value"], "1");
    let (v, code) = json(&["family", "yukawa", "--cubic", &c, "--norm", "potential"]);
    assert_eq!((v["yukawa"][0]["value"].as_str(), code), (Some("1/2"), 0));
    let (v, code) = json(&["family", "symmetry", "--cubic", &c, "--v", "1,2,3"]);
    assert_eq!((v["all"].as_bool(), code), (Some(true), 0));
    let (v, code) = json(&["family", "symmetry", "--cubic", &c, "--v", "-1,1/2,0", "--lambda", "-3"]);
    assert_eq!((v["all"].as_bool(), code), (Some(true), 0));
}

#[test]
fn hodge_riemann_membership() {
    let c = data("diag3.json");
    let (v, code) = json(&["hr", "--cubic", &c, "--point", &data("point_i.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["phi_y"], "-1");
    assert_eq!(v["hessian_signature"], serde_json::json!([2, 1]));
    assert_eq!(v["member"], true);
    assert_eq!(v["pairing"], "8");
    let (v, code) = json(&["hr", "--cubic", &c, "--point", &data("point_minus_i.json")]);
    assert_eq!((v["member"].as_bool(), code), (Some(false), 1));
    let (v, code) = json(&["hr", "--ball", "--point", &data("ball_point.json")]);
    assert_eq!((v["member"].as_bool(), code), (Some(true), 0));
}

#[test]
fn lmhs_trichotomy() {
    let c = data("diag3.json");
    let (v, code) = json(&["lmhs", "--cubic", &c, "--v", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "IV");
    assert_eq!(v["jordan"], serde_json::json!([4, 2, 2]));
    assert_eq!(v["graded"], serde_json::json!([1, 0, 3, 0, 3, 0, 1]));
    let (v, _) = json(&["lmhs", "--cubic", &c, "--v", "1,1,0"]);
    assert_eq!(v["type"], "III");
    assert_eq!(v["graded"][1], 2);
    let (v, _) = json(&["lmhs", "--cubic", &c, "--v", "1,0,0"]);
    assert_eq!(v["type"], "II");
    assert_eq!(v["picard_lefschetz"], false);
}

#[test]
fn cubics_commands() {
    let (v, code) = json(&["cubics", "cartan", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!((v["lines"].as_u64(), v["tritangents"].as_u64(), v["regular"].as_u64()), (Some(27), Some(45), Some(5)));
    let (v, code) = json(&["cubics", "su26", "--verify"]);
    assert_eq!((v["verified"].as_bool(), code), (Some(true), 0));
    let (v, code) = json(&["cubics", "match"]);
    assert_eq!(code, 0);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["bijection"].as_object().unwrap().len(), 27);
}

#[test]
fn star_command() {
    let (v, code) = json(&["star", "--n", "3", "--diag", "1,1,1,-1,-1,-1", "--e", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["star_square"], "1");
    assert_eq!(v["law"], true);
    assert_eq!(v["algebra"], "matrix");
    let (v, _) = json(&["star", "--n", "1", "--diag", "1,1", "--e", "1"]);
    assert_eq!(v["algebra"], "division");
}

#[test]
fn input_errors_exit_two() {
    let bad = std::env::temp_dir().join(format!("hodgecy-bad-{}.json", std::process::id()));
    std::fs::write(&bad, r#"{"h": 2, "monomials": [{"exp": [1, 1], "coeff": "1"}]}"#).unwrap();
    let bad = bad.to_string_lossy().into_owned();
    assert_eq!(run(&["family", "check", "--cubic", &bad]).status.code(), Some(2));
    assert_eq!(run(&["family", "check", "--cubic", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["lmhs", "--cubic", &data("diag3.json"), "--v", "1,x,0"]).status.code(), Some(2));
    assert_eq!(run(&["star", "--n", "2", "--diag", "1,1", "--e", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cubics", "cartan", "--frobnicate"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let c = data("diag3.json");
    let a = run(&["family", "symmetry", "--cubic", &c, "--seed", "17"]);
    let b = run(&["family", "symmetry", "--cubic", &c, "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
    let x = run(&["cubics", "match"]);
    let y = run(&["cubics", "match"]);
    assert_eq!(x.stdout, y.stdout);
}
