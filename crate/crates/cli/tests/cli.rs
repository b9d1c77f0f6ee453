//! End-to-end tests of the compiled binary: output formats, exit codes,
//! determinism.

use std::process::{Command, Output};

fn qwitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwitt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn bracket_example() {
    let out = qwitt(&[
        "bracket",
        "--algebra",
        "witt-q1",
        "--lhs",
        "e(0)",
        "--rhs",
        "e(1)",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q*e(1)");
}

#[test]
fn normal_form_example() {
    let out = qwitt(&[
        "pbw",
        "normal-form",
        "--algebra",
        "witt-q1",
        "--expr",
        "e(1)*e(0)",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q^-1*e(0)*e(1) - q^-1*e(1)");
    // the printed output re-parses to the same normal form
    let text = stdout(&out);
    let again = qwitt(&[
        "pbw",
        "normal-form",
        "--algebra",
        "witt-q1",
        "--expr",
        &text,
    ]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn parse_error_reports_offset_and_exits_2() {
    let out = qwitt(&[
        "bracket",
        "--algebra",
        "witt-q1",
        "--lhs",
        "e(",
        "--rhs",
        "e(1)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 2"), "stderr: {err}");
}

#[test]
fn usage_error_exits_2() {
    let out = qwitt(&["verify", "jacobi", "--algebra", "witt-eps"]);
    assert_eq!(out.status.code(), Some(2), "root algebra needs --l");
    let out = qwitt(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobi_sweep_counts_triples() {
    let out = qwitt(&["--l", "5", "verify", "jacobi", "--algebra", "witt-eps"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("125 triples"));
    // parallel sweep gives the same result
    let par = qwitt(&[
        "--l",
        "5",
        "--jobs",
        "4",
        "verify",
        "jacobi",
        "--algebra",
        "witt-eps",
    ]);
    assert_eq!(stdout(&par), stdout(&out));
}

#[test]
fn module_analysis_json() {
    let out = qwitt(&["--l", "5", "--json", "module", "analyze", "--t", "0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["composition_series"], serde_json::json!([1, 4]));
    assert_eq!(doc["irreducible"], serde_json::json!(false));
    assert_eq!(doc["base_eigenvalue"], serde_json::json!("0"));
    assert_eq!(doc["l"], serde_json::json!(5));
}

#[test]
fn failed_verification_exits_1_with_counterexamples() {
    // the l = 5 system has unresolvable overlap ambiguities
    let out = qwitt(&["--l", "5", "pbw", "confluence", "--algebra", "witt-eps"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("unresolved"), "{text}");
    // JSON carries the counterexample records
    let out = qwitt(&[
        "--l",
        "5",
        "--json",
        "pbw",
        "confluence",
        "--algebra",
        "witt-eps",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], serde_json::json!(false));
    assert!(!doc["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn qnum_evaluation() {
    let out = qwitt(&["qnum", "integer", "--n", "3"]);
    assert_eq!(stdout(&out), "q^2 + q + 1");
    let out = qwitt(&["--l", "5", "qnum", "binomial", "--n", "5", "--r", "2"]);
    assert_eq!(stdout(&out), "0");
    let out = qwitt(&["qnum", "factorial", "--n", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cocycle_verification() {
    let out = qwitt(&["verify", "cocycle", "--rmax", "20"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ok"));
    // rejected at a root of unity
    let out = qwitt(&["--l", "5", "verify", "cocycle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compat_and_deform() {
    let out = qwitt(&["--l", "5", "module", "compat"]);
    assert!(out.status.success());
    let out = qwitt(&["--l", "5", "module", "deform", "--a", "t"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("module axiom: ok"));
    let out = qwitt(&["--l", "5", "module", "tensor", "--omega", "e"]);
    assert!(out.status.success());
}

#[test]
fn json_output_is_deterministic() {
    let a = qwitt(&[
        "--l",
        "3",
        "--json",
        "bracket-table",
        "--algebra",
        "witt-eps",
    ]);
    let b = qwitt(&[
        "--l",
        "3",
        "--json",
        "bracket-table",
        "--algebra",
        "witt-eps",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let table = doc["table"].as_array().unwrap();
    assert_eq!(table.len(), 9);
}

#[test]
fn centralizer_commands() {
    let out = qwitt(&[
        "--l",
        "5",
        "centralizer",
        "--algebra",
        "holomorph-eps",
        "--of",
        "e(-1),e(0),e(1),e(2),e(3),L(0),L(1),L(2),L(3),L(4)",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("L(0)"));
    let out = qwitt(&[
        "--l",
        "5",
        "normalizer",
        "--algebra",
        "witt-eps",
        "--of",
        "e(0),e(1)",
    ]);
    assert!(out.status.success());
}
