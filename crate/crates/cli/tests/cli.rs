//! End-to-end tests of the `cmlab` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let o = cmlab(&all);
    let v = serde_json::from_slice(&o.stdout).expect("valid JSON report");
    (v, o.status.code().unwrap())
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cmlab-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn shipped_corpus() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[test]
fn classify_xy2() {
    let o = cmlab(&["classify", "QQ[[x,y]]/(x*y^2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: bounded_infinite(XY2)"));

    let (v, code) = json(&["classify", "QQ[[x,y]]/(x*y^2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "cm-type-lab/1");
    assert_eq!(v["results"]["verdict"], "bounded_infinite(XY2)");
    assert_eq!(v["results"]["type"], "XY2");
    assert!(v["trace"].as_array().unwrap().iter().all(|t| t["citation"].is_string()));
}

#[test]
fn catalog_gamma_rank() {
    let o = cmlab(&["catalog", "--ring", "T", "--label", "gamma", "--k", "2", "--ranks"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("gamma:2"), "{out}");
    assert!(out.contains("rank (1,1)"), "{out}");
}

#[test]
fn davenport_klein_four() {
    let o = cmlab(&["davenport", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("D(Z2+Z2) = 3"));
    let (v, _) = json(&["davenport", "2,2"]);
    assert_eq!(v["results"]["davenport"], 3);
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["classify", "E"],
        vec!["invariants", "E", "--structure"],
        vec!["minimal-tuples", "--case", "domain"],
        vec!["catalog", "--ranks"],
    ] {
        let mut all = args.clone();
        all.extend(["--json", "-"]);
        let a = cmlab(&all);
        let b = cmlab(&all);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn json_report_written_to_file() {
    let dir = scratch_dir("json");
    let path = dir.join("report.json");
    let o = cmlab(&["bound", "2", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["bound"], 6);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn negative_results_exit_one() {
    assert_eq!(cmlab(&["indecomposable", "gamma:1+x"]).status.code(), Some(1));
    assert_eq!(cmlab(&["indecomposable", "gamma:1"]).status.code(), Some(0));
    assert_eq!(
        cmlab(&["extend", "--case", "domain", "--tuple", "(1,0,0,0,0,0)"]).status.code(),
        Some(1)
    );
    assert_eq!(cmlab(&["zerosum", "2,2", "(1,0),(0,1)"]).status.code(), Some(1));
    let (v, code) = json(&["zerosum", "2,2", "(1,0),(0,1),(1,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["positions"], serde_json::json!([0, 1, 2]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cmlab(&["classify", "not a ring"]).status.code(), Some(2));
    assert_eq!(cmlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cmlab(&["davenport", "1,2"]).status.code(), Some(2));
    assert_eq!(cmlab(&["classify", "E", "--field", "GF(4)"]).status.code(), Some(2));
    assert_eq!(cmlab(&["classify", "QQ[[x,y]]/(x*y)", "--precision", "2"]).status.code(), Some(2));
}

#[test]
fn shipped_corpus_passes() {
    let o = cmlab(&["verify-corpus"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("10 of 10 checks passed"), "{out}");
}

#[test]
fn edited_corpus_fails_naming_the_check() {
    let dir = scratch_dir("edited");
    for entry in fs::read_dir(shipped_corpus()).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.join(p.file_name().unwrap())).unwrap();
    }
    let file = dir.join("01_rank_table.json");
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["cases"][0]["results"]["modules"][0]["rank"] = serde_json::json!([0, 1]);
    fs::write(&file, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let o = cmlab(&["verify-corpus", dir.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("FAIL rank_table"), "{out}");
    assert!(out.contains("/modules/0/rank/0: expected 0, got 1"), "{out}");
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn empty_corpus_is_missing() {
    let dir = scratch_dir("empty");
    let o = cmlab(&["verify-corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("MissingCorpus"));
    fs::remove_dir_all(dir).unwrap();
}
