#![allow(clippy::excessive_precision)] // reference values keep all oracle digits

use airy_integrals::symbolic::FormRecord;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airy-integrals"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn indefinite_json_equal_shift() {
    let o = run(&["indefinite", "--n", "0", "--pattern", "AB", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"shift_a":"0","shift_b":"0","form":{"AB":["0","1"],"ABp":[],"ApB":[],"ApBp":["-1"]}}"#
    );
}

#[test]
fn indefinite_json_distinct_shift() {
    let o = run(&["indefinite", "--n", "0", "--pattern", "AB", "--a", "0", "--b", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["form"]["ABp"], serde_json::json!(["1"]));
    assert_eq!(v["form"]["ApB"], serde_json::json!(["-1"]));
    assert_eq!(v["form"]["AB"], serde_json::json!([]));
}

#[test]
fn form_json_is_stable_under_reparse() {
    let o = run(&["indefinite", "--poly", "1/2,0,-3", "--pattern", "ApBp", "--a", "-3/2", "--b", "0.25", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rec: FormRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&rec).unwrap(), text.trim());
}

#[test]
fn definite_json_is_stable_under_reparse() {
    let o = run(&["definite", "--n", "1", "--pattern", "AB", "--from", "-2", "--to", "3", "--check", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 3);
    for k in ["value", "crosscheck", "abs_diff"] {
        let x = v[k].as_f64().unwrap();
        assert!(text.contains(&format!("{x:.16e}")), "{k}");
    }
}

#[test]
fn definite_to_infinity() {
    let o = run(&["definite", "--n", "0", "--pattern", "AB", "--from", "0", "--to", "inf", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 0.066_987_483_779_663_974).abs() < 1e-14);
    assert!(v["crosscheck"].is_null());
}

#[test]
fn empty_interval_is_zero() {
    let o = run(&["definite", "--n", "2", "--pattern", "ApB", "--a", "1", "--from", "1", "--to", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"].as_f64(), Some(0.0));
}

#[test]
fn unknown_pattern_is_usage_error() {
    let o = run(&["indefinite", "--n", "0", "--pattern", "XY"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weight_is_required_and_exclusive() {
    assert_eq!(run(&["indefinite", "--pattern", "AB"]).status.code(), Some(2));
    assert_eq!(
        run(&["indefinite", "--n", "1", "--poly", "1", "--pattern", "AB"]).status.code(),
        Some(2)
    );
}

#[test]
fn bi_to_infinity_is_domain_error() {
    let o = run(&["definite", "--n", "0", "--pattern", "AB", "--sol2", "0,1", "--from", "0", "--to", "inf"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn limit_outside_domain_is_domain_error() {
    let o = run(&["definite", "--n", "0", "--pattern", "AB", "--from", "0", "--to", "60"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn crosscheck_breach_exits_4() {
    let o = run(&[
        "definite", "--n", "3", "--pattern", "AB", "--a", "0", "--b", "1", "--sol1", "0,1",
        "--from", "-4", "--to", "2", "--check", "--tol", "1e-30",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn check_suites_pass() {
    for suite in ["roundtrip", "wronskian", "hvt"] {
        let o = run(&["check", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn check_failure_exits_1() {
    let o = run(&["check", "wronskian", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn negative_values_are_accepted() {
    let o = run(&[
        "definite", "--n", "0", "--pattern", "AB", "--sol1", "-1,0.5", "--b", "-1/2",
        "--from", "-1", "--to", "0", "--check",
    ]);
    assert_eq!(o.status.code(), Some(0));
}
