use std::process::{Command, Output};

use serde_json::Value;

fn perfloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = perfloc(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn verify_tower_reports_sign_per_level() {
    let (code, v) = json(&["verify", "tower", "--max-level", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], Value::Bool(true));
    let levels = v["report"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    for (i, l) in levels.iter().enumerate() {
        assert_eq!(l["n"], i + 1);
        assert!(l["sign"] == 1 || l["sign"] == -1);
        assert_eq!(l["relations_ok"], true);
        assert_eq!(l["order_checked_to"], 100);
    }
    assert_eq!(levels[0]["sign"], 1);
    assert_eq!(v["config"]["max_level"], 3);
}

#[test]
fn eq_decides_the_relation() {
    let (code, v) = json(&[
        "eq", "--u1", "x1", "--u2", "x1", "--lhs", "a1 b1", "--rhs", "b1 | a1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["equal"], true);
    let (_, v) = json(&["eq", "--lhs", "a1 b1", "--rhs", "b1 a1"]);
    assert_eq!(v["report"]["equal"], false);
    assert_eq!(v["config"]["ctx"]["u1"], "x1 x2");
}

#[test]
fn scan_finds_no_counterexamples() {
    let (code, v) = json(&[
        "scan",
        "commute",
        "--max-len",
        "3",
        "--seed",
        "7",
        "--budget",
        "1000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["counterexamples"], Value::Array(vec![]));
    assert_eq!(v["report"]["pairs_tested"], 457 * 457 + 1000);
    for key in [
        "ctx",
        "max_len",
        "budget",
        "seed",
        "pairs_tested",
        "commuting_pairs_found",
        "counterexamples",
    ] {
        assert!(v["report"].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn kernel_and_lp_pass() {
    let (code, v) = json(&[
        "verify",
        "kernel",
        "--u1",
        "x1 x2",
        "--u2",
        "X1",
        "--seed",
        "3",
        "--samples",
        "50",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["config"]["suite"]["seed"], 3);
    let (code, v) = json(&["lp", "demo", "--samples", "100", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["half_image"], "1/2");
}

#[test]
fn rn_split_text_table() {
    let out = perfloc(&["check", "rn-split", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  relator = [u1, u2]"));
    assert!(text.lines().last().unwrap().starts_with("OK"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["lp", "demo"][..],
        &["scan", "commute", "--max-len", "2"],
        &["eq", "--lhs", "z1", "--rhs", "e"],
        &["eq", "--u1", "x1 x1", "--lhs", "e", "--rhs", "e"],
        &["check", "rn-split", "--level", "1"],
        &["verify", "tower", "--max-level", "0"],
        &["verify", "kernel", "--seed", "1", "--oracle-degree", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(perfloc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("perfloc-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = perfloc(&[
        "--format", "json", "--output", p, "check", "rn-split", "--level", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["report"]["u_length"], 4);
}
