use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit3")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success());
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_q8_json() {
    let out = run(&["construct", "q8"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"m":2,"n":1,"sigma":[1,1],"pi":{"1,2":1}}"#);
}

#[test]
fn orbits_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, want) in [("q8.json", vec!["q8"], 3), ("a.json", vec!["A", "3", "1"], 3), ("h.json", vec!["homocyclic", "2"], 3)] {
        let spec = construct(dir.path(), name, &args);
        let out = run(&["orbits", "--spec", &spec, "--oracle"]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["orbits"], want);
        assert_eq!(v["oracle"], want);
    }
    let spec = dir.path().join("z.json");
    fs::write(&spec, r#"{"m":2,"n":1,"sigma":[0,1]}"#).unwrap();
    let v = json(&run(&["orbits", "--spec", spec.to_str().unwrap(), "--oracle"]));
    assert_eq!(v["orbits"], 4);
    assert_eq!(v["oracle"], 4);
    // elementary abelian: the form is zero, only the oracle applies
    fs::write(&spec, r#"{"m":2,"n":1,"sigma":[0,0]}"#).unwrap();
    let v = json(&run(&["orbits", "--spec", spec.to_str().unwrap()]));
    assert_eq!(v["orbits"], 2);
    assert_eq!(v["pairs_method"], Value::Null);
}

#[test]
fn export_pc_and_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct(dir.path(), "b.json", &["B", "3", "1"]);
    let out = run(&["export", "--spec", &spec, "--format", "pc"]);
    assert!(out.status.success());
    let pc = dir.path().join("b.pc");
    fs::write(&pc, &out.stdout).unwrap();
    let back = run(&["export", "--spec", pc.to_str().unwrap(), "--format", "json"]);
    assert_eq!(String::from_utf8_lossy(&back.stdout), fs::read_to_string(&spec).unwrap());
    assert_eq!(json(&run(&["orbits", "--spec", pc.to_str().unwrap()]))["orbits"], 3);
}

#[test]
fn equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let b = construct(dir.path(), "b.json", &["B", "3", "1"]);
    let x = construct(dir.path(), "x.json", &["Bexc"]);
    let same = json(&run(&["equiv", "--a", &b, "--b", &b]));
    assert_eq!(same["equivalent"], true);
    let out = run(&["equiv", "--a", &b, "--b", &x]);
    assert!(out.status.success());
    assert_eq!(json(&out)["equivalent"], false);
    let q = construct(dir.path(), "q.json", &["q8"]);
    let sq = dir.path().join("q_table.json");
    fs::write(&sq, r#"{"m":2,"n":1,"table":[0,1,1,1]}"#).unwrap();
    let gl = json(&run(&["equiv", "--a", &q, "--b", sq.to_str().unwrap(), "--gl", "--budget", "100000"]));
    assert_eq!(gl["equivalent"], true);
}

#[test]
fn gl_budget_exhaustion_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let b = construct(dir.path(), "b.json", &["B", "3", "1"]);
    let x = construct(dir.path(), "x.json", &["Bexc"]);
    let out = run(&["equiv", "--a", &b, "--b", &x, "--gl", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["equivalent"], "undecided");
}

#[test]
fn verify_commands() {
    let out = run(&["verify", "numtheory", "--max-m", "37"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["violations"], serde_json::json!([]));
    let out = run(&["verify", "lemmas", "--level", "fast"]);
    assert!(out.status.success());
    assert_eq!(json(&out).as_array().unwrap().len(), 9);
}

#[test]
fn classify_accepts_both_order_forms() {
    let a = run(&["classify", "--max-order", "512", "--json"]);
    let b = run(&["classify", "--max-order", "2^9", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&run(&["classify", "--max-order", "64"]).stdout).to_string();
    assert!(text.contains("A(3,Frob)") && text.contains("Q8"));
}

#[test]
fn undecided_pairs_exit_with_one() {
    let out = run(&["classify", "--max-order", "1024"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("A(5,Frob) vs A(5,Frob^2): undecided"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["classify", "--max-order", "100"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--max-order", "3^4"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "B", "3", "2"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--spec", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(run(&["search-nonstandard", "--m", "40"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"m":2,"n":1,"sigma":[4,1]}"#).unwrap();
    assert_ne!(run(&["orbits", "--spec", bad.to_str().unwrap()]).status.code(), Some(0));
}
