use std::fs;
use std::path::{Path, PathBuf};

use stieltjes::cli::{run, EXIT_INVALID, EXIT_OK};

fn out(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn run_to(args: &[&str], path: &Path) -> (i32, String) {
    let mut full = vec!["stieltjes"];
    full.extend_from_slice(args);
    let p = path.to_str().unwrap();
    full.extend_from_slice(&["-o", p]);
    let code = run(full);
    (code, fs::read_to_string(path).unwrap_or_default())
}

#[test]
fn exact_csv_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["exact", "--n", "0..4"], &out(dir.path(), "e.csv"));
    assert_eq!(code, EXIT_OK);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,epsilon,value,digits_certified,certified,k_truncation,note");
    let first = lines.next().unwrap();
    assert!(first.starts_with("0,1/32,5.77215664901532860606512090082e-1,"), "{first}");
    assert_eq!(lines.count(), 4);
}

#[test]
fn exact_repeated_epsilon_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        &["exact", "--n", "7", "--epsilon", "1/32", "--epsilon", "1/64", "--format", "json"],
        &out(dir.path(), "e.json"),
    );
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["value"], rows[1]["value"]);
    assert_eq!(rows[1]["epsilon"], "1/64");
}

#[test]
fn sign_json_for_huge_n() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["sign", "--n", "1e10000"], &out(dir.path(), "s.json"));
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["sign"], -1);
    assert_eq!(v["certified"], true);
    assert_eq!(v["n"], "10^10000");
}

#[test]
fn verify_nr_meets_default_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["verify", "nr", "--k", "5", "--epsilon", "1/32"], &out(dir.path(), "v.json"));
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rel: f64 = v["rel_error"].as_str().unwrap().parse().unwrap();
    assert!(rel < 1e-20);
    assert_eq!(v["contour"], "rectangle");
}

#[test]
fn verify_residue_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["verify", "residue", "--k", "3"], &out(dir.path(), "r.json"));
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["agreeing_digits"].as_u64().unwrap() >= 20);
}

#[test]
fn figure_6_lists_both_branches() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["figure", "6"], &out(dir.path(), "f6.csv"));
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,branch,re,im");
    assert_eq!(lines.len(), 501);
    assert!(lines[1].starts_with("1,plus,") && lines[2].starts_with("1,minus,"));
    assert!(lines[500].starts_with("250,minus,"));
}

#[test]
fn figure_svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(&["figure", "6", "--n", "1..20", "--format", "svg"], &out(dir.path(), "f6.svg"));
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("<svg") && text.contains("<circle"));
}

#[test]
fn asy_variants() {
    let dir = tempfile::tempdir().unwrap();
    for variant in ["full", "refined", "phase"] {
        let (code, text) = run_to(
            &["asy", "--n", "100..102", "--variant", variant],
            &out(dir.path(), &format!("{variant}.csv")),
        );
        assert_eq!(code, EXIT_OK, "{variant}");
        assert_eq!(text.lines().count(), 4);
    }
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = out(dir.path(), "x");
    assert_eq!(run_to(&["exact", "--n", "4..1"], &p).0, EXIT_INVALID);
    assert_eq!(run_to(&["exact", "--n", "1", "--epsilon", "0"], &p).0, EXIT_INVALID);
    assert_eq!(run_to(&["sign", "--n", "ten"], &p).0, EXIT_INVALID);
    assert_eq!(run_to(&["figure", "5"], &p).0, EXIT_INVALID);
    assert_eq!(run_to(&["asy", "--n", "3", "--format", "svg"], &p).0, EXIT_INVALID);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["exact", "--n", "0..10"][..], &["figure", "1", "--n", "0..30"], &["asy", "--n", "50..60"]] {
        let a = run_to(args, &out(dir.path(), "a"));
        let b = run_to(args, &out(dir.path(), "b"));
        assert_eq!(a, b, "{args:?}");
    }
}
