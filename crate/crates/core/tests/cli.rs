use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treemaps")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).expect("json output")
}

#[test]
fn rtm_apply_vertex_on_xy() {
    let out = run(&["rtm-apply", "--r", "1", "--forest", "[]", "--word", "x y0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x y0 y0 - x x y0");
}

#[test]
fn rtm_apply_tau_conjugate_matches_antipode() {
    let tau = run(&["rtm-apply", "--r", "2", "--forest", "[[]]", "--word", "x y1", "--tau"]);
    let anti = run(&["rtm-apply", "--r", "2", "--forest", "[] [] - [[]]", "--word", "x y1"]);
    assert_eq!(tau.status.code(), Some(0));
    assert_eq!(stdout(&tau), stdout(&anti));
}

#[test]
fn verify_json_reports() {
    let out = run(&["verify", "--suite", "thm1,thm3", "--r", "2", "--max-forest", "2", "--max-word", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    let reports = reports.as_array().expect("array of reports");
    assert_eq!(reports.len(), 2);
    for (rep, law) in reports.iter().zip(["thm1", "thm3"]) {
        assert_eq!(rep["law"], law);
        assert!(rep["cases"].as_u64().unwrap() > 0);
        assert_eq!(rep["failures"].as_array().unwrap().len(), 0);
        assert!(rep["ms"].is_u64());
    }
}

#[test]
fn verify_with_mutation_fails() {
    let out = run(&["verify", "--suite", "prop0", "--r", "1", "--max-word", "2", "--mutate", "diamond_rule_3_sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL prop0"));
}

#[test]
fn check_euler_relation_passes() {
    let out = run(&["check", "--r", "1", "--poly", "x y0 y0 - x x y0", "--max-terms", "100000", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["pass"], true);
    assert_eq!(rep["N"], 100000);
    let sum = rep["sum_re"].as_f64().unwrap().hypot(rep["sum_im"].as_f64().unwrap());
    assert!(sum < 1e-3);
}

#[test]
fn check_nonzero_value_fails() {
    let out = run(&["check", "--r", "1", "--poly", "x y0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let bad_forest = run(&["coproduct", "--forest", "[[]"]);
    assert_eq!(bad_forest.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_forest.stderr).contains("offset 3"));
    assert_eq!(run(&["verify", "--suite", "no_such_law"]).status.code(), Some(2));
    assert_eq!(run(&["rtm-apply", "--r", "2", "--forest", "[]", "--word", "y2"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--r", "1", "--poly", "y0 x"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--index", "1;0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn relations_json_schema() {
    let out = run(&["relations", "--r", "1", "--degree", "1", "--weight", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rels = json(&out);
    let rels = rels.as_array().unwrap();
    assert_eq!(rels.len(), 1);
    assert_eq!(rels[0]["r"], 1);
    assert_eq!(rels[0]["forest"], "[]");
    assert_eq!(rels[0]["input_word"], "x y0");
    let terms = rels[0]["relation"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert!(t["k"].is_array() && t["j"].is_array() && t["coeff"].is_string());
    }
}

#[test]
fn algebra_commands() {
    let cop = run(&["coproduct", "--forest", "[] []"]);
    assert_eq!(stdout(&cop).trim(), "1 ⊗ [] [] + 2*[] ⊗ [] + [] [] ⊗ 1");
    let anti = run(&["antipode", "--forest", "[[]]", "--json"]);
    assert_eq!(json(&anti)["result"], "[] [] - [[]]");
    let f = run(&["fpoly", "--forest", "[[]]"]);
    assert_eq!(stdout(&f).trim(), "2*y0 y0 + x y0");
    let h = run(&["harmonic", "--r", "1", "--left", "y0", "--right", "y0"]);
    assert_eq!(stdout(&h).trim(), "2*y0 y0 + x y0");
    let d = run(&["diamond", "--r", "1", "--left", "y0", "--right", "y0"]);
    assert_eq!(stdout(&d).trim(), "y0 y0 - x y0");
}

#[test]
fn eval_depth_one() {
    let out = run(&["eval", "--r", "1", "--index", "2;0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let re = v["re"].as_f64().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-4);
    assert!(v["error"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_lists_suites() {
    let out = run(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.starts_with("prop0")));
}
