//! End-to-end tests of the command-line interface: golden outputs, exit
//! codes, cross-checks, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_melonrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn analyze_full_melon() {
    let v = json_of(&run(&["analyze", "3,3,3"]));
    assert_eq!(v["schema"], "melonrep/1");
    assert_eq!(v["input"]["vertices"], 8);
    assert_eq!(v["melon"]["r"], 3);
    assert_eq!(v["melon"]["comparability"], "SameParity");
    assert_eq!(v["melon"]["prn"], 3);
    assert_eq!(v["melon"]["realizer"].as_array().unwrap().len(), 3);
    assert_eq!(v["melon"]["hasse"]["case"], "CaseII");
    assert_eq!(v["line"]["r"], 3);
    assert_eq!(v["line"]["certificate"]["uniformity"], 3);
}

#[test]
fn analyze_reports_line_refuter() {
    let v = json_of(&run(&["analyze", "1,2,2,2"]));
    assert_eq!(v["melon"]["r"], 2);
    assert_eq!(v["line"]["word_representable"], false);
    assert_eq!(v["line"]["refuter"], "e_0");
    assert_eq!(v["line"]["r"], Value::Null);
    assert_eq!(v["line"]["witness"]["pattern"], "Prism3");
}

#[test]
fn analyze_tolerates_trailing_comma() {
    let v = json_of(&run(&["analyze", "1,"]));
    assert_eq!(v["input"]["spec"], "1");
    assert_eq!(v["melon"]["r"], 1);
    assert_eq!(v["melon"]["prn"], 1);
    assert_eq!(v["line"]["class"], "LP_1");
}

#[test]
fn analyze_rejects_bad_specs() {
    for bad in ["bogus", "1,0", "", "1,1", "-3"] {
        let out = run(&["analyze", bad]);
        assert_eq!(out.status.code(), Some(2), "spec {bad:?}");
    }
}

#[test]
fn analyze_oracle_cross_checks() {
    let v = json_of(&run(&["analyze", "2,2,2", "--oracle"]));
    assert_eq!(v["oracle"]["melon_uniform"]["k"], 2);
    assert_eq!(v["oracle"]["melon_uniform"]["agrees"], true);
    assert_eq!(v["oracle"]["melon_perm"]["k"], 2);
    assert_eq!(v["oracle"]["line_uniform"]["k"], 3);
}

#[test]
fn analyze_oracle_skips_over_budget() {
    let v = json_of(&run(&["analyze", "3,4,5", "--oracle"]));
    assert!(v["oracle"]["melon_uniform"]["skipped"].is_string());
    assert!(v["oracle"]["line_uniform"]["skipped"].is_string());
}

#[test]
fn timings_are_opt_in() {
    let with = json_of(&run(&["analyze", "2,2", "--timings"]));
    assert!(with["timings"].is_object());
    let without = json_of(&run(&["analyze", "2,2"]));
    assert!(without.get("timings").is_none());
}

#[test]
fn check_verdicts() {
    let p4 = fixture("p4.edges");
    let good = run(&["check", p4.to_str().unwrap(), fixture("p4.word").to_str().unwrap()]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&good.stdout).trim(),
        "REPRESENTS, 2-uniform"
    );

    let k3 = fixture("k3.edges");
    let bad = run(&[
        "check",
        k3.to_str().unwrap(),
        fixture("k3_mismatch.word").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.contains("DOES NOT REPRESENT"), "got {text}");
    assert!(text.contains("(a, c)"), "got {text}");

    let missing = run(&[
        "check",
        k3.to_str().unwrap(),
        fixture("k3_missing.word").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("never mentions"));
}

#[test]
fn dot_outputs() {
    let melon = run(&["dot", "3,3"]);
    assert_eq!(melon.status.code(), Some(0));
    let text = String::from_utf8_lossy(&melon.stdout);
    assert!(text.starts_with("graph melon {"));
    assert_eq!(text.matches(" -- ").count(), 6, "C_6 has six edges");

    let line = run(&["dot", "1,3,3", "--what", "line"]);
    let text = String::from_utf8_lossy(&line.stdout);
    assert!(text.starts_with("graph line_melon {"));
    assert_eq!(text.matches(" -- ").count(), 10);

    let hasse = run(&["dot", "2,2,2", "--what", "hasse"]);
    let text = String::from_utf8_lossy(&hasse.stdout);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("rankdir=BT"));
    assert!(text.contains("rank=same"));

    let refused = run(&["dot", "2,3", "--what", "hasse"]);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn oracle_uniform_golden() {
    let v = json_of(&run(&["oracle", "3,3,3", "--uniform"]));
    assert_eq!(v["uniform"]["k"], 3);
    assert!(v["uniform"]["witness"].is_string());
    assert_eq!(v["uniform"]["exhaustive"], true);
    assert!(v.get("perm").is_none());
}

#[test]
fn oracle_detects_non_comparability() {
    let v = json_of(&run(&["oracle", "Prism3", "--perm"]));
    assert_eq!(v["perm"]["k"], Value::Null);
    assert_eq!(v["perm"]["note"], "not a comparability graph");
}

#[test]
fn oracle_runs_both_searches_by_default() {
    let v = json_of(&run(&["oracle", "K3"]));
    assert_eq!(v["uniform"]["k"], 1);
    assert_eq!(v["perm"]["k"], 1);
}

#[test]
fn oracle_reads_edge_list_files() {
    let v = json_of(&run(&["oracle", fixture("k3.edges").to_str().unwrap(), "--uniform"]));
    assert_eq!(v["input"]["vertices"], 3);
    assert_eq!(v["uniform"]["k"], 1);
}

#[test]
fn oracle_exit_codes() {
    let guard = run(&["oracle", "6,6,6,6,6", "--uniform"]);
    assert_eq!(guard.status.code(), Some(3));

    let budget = run(&["oracle", "3,3,3", "--uniform", "--node-limit", "10"]);
    assert_eq!(budget.status.code(), Some(5));

    let unknown = run(&["oracle", "Znork"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["analyze", "3,3,3"],
        vec!["analyze", "1,2,2,2", "--oracle"],
        vec!["oracle", "2,2,2"],
        vec!["dot", "2,2,2", "--what", "hasse"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
