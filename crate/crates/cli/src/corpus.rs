//! Golden verification corpus.
//!
//! A corpus is a directory of `*.json` files, one per check. Each file lists
//! cases as an argument vector plus the expected exit status and `results`
//! object; verification re-runs every case and diffs the JSON.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use cm_type_lab::par::{self, Execution};

use crate::report::{Report, UsageError, SCHEMA};

#[derive(Debug, Deserialize)]
struct CorpusFile {
    schema: String,
    check: String,
    #[serde(default)]
    description: String,
    cases: Vec<Case>,
}

#[derive(Debug, Deserialize)]
struct Case {
    argv: Vec<String>,
    exit_status: i32,
    results: Value,
}

/// First location where `got` departs from `want`, as a JSON pointer.
fn first_difference(want: &Value, got: &Value, path: &str) -> Option<String> {
    match (want, got) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, v) in a {
                let p = format!("{path}/{k}");
                match b.get(k) {
                    Some(w) => {
                        if let Some(d) = first_difference(v, w, &p) {
                            return Some(d);
                        }
                    }
                    None => return Some(format!("{p}: missing")),
                }
            }
            b.keys()
                .find(|k| !a.contains_key(*k))
                .map(|k| format!("{path}/{k}: unexpected"))
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => a
            .iter()
            .zip(b)
            .enumerate()
            .find_map(|(i, (v, w))| first_difference(v, w, &format!("{path}/{i}"))),
        _ if want == got => None,
        _ => Some(format!("{}: expected {want}, got {got}", if path.is_empty() { "/" } else { path })),
    }
}

fn load(dir: &Path) -> Result<Vec<(String, CorpusFile)>, UsageError> {
    let entries = fs::read_dir(dir).map_err(|e| UsageError(format!("MissingCorpus: {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    if paths.is_empty() {
        return Err(UsageError(format!("MissingCorpus: no *.json files in {}", dir.display())));
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&p)?;
            let file: CorpusFile =
                serde_json::from_str(&text).map_err(|e| UsageError(format!("{name}: malformed corpus file: {e}")))?;
            if file.schema != SCHEMA {
                return Err(UsageError(format!("{name}: schema `{}`, expected `{SCHEMA}`", file.schema)));
            }
            Ok((name, file))
        })
        .collect()
}

/// Runs every case of every corpus file; `run` executes one argument vector.
pub fn verify<F>(argv: Vec<String>, dir: &Path, run: F) -> Result<Report, UsageError>
where
    F: Fn(Vec<String>) -> Result<Report, UsageError> + Sync,
{
    let files = load(dir)?;
    let jobs: Vec<(usize, &Case)> = files
        .iter()
        .enumerate()
        .flat_map(|(i, (_, f))| f.cases.iter().map(move |c| (i, c)))
        .collect();
    // independent cases run concurrently; assembly below is ordered
    let outcomes: Vec<Option<String>> = par::map(Execution::Parallel, &jobs, |(_, case)| {
        let shown = case.argv.join(" ");
        match run(case.argv.clone()) {
            Err(e) => Some(format!("`{shown}`: error: {}", e.0)),
            Ok(r) if r.exit_status != case.exit_status => Some(format!(
                "`{shown}`: exit status {}, expected {}",
                r.exit_status, case.exit_status
            )),
            Ok(r) => first_difference(&case.results, &r.results, "").map(|d| format!("`{shown}`: {d}")),
        }
    });

    let mut report = Report::new(argv, json!({ "corpus": dir.display().to_string() }));
    let mut checks = Vec::new();
    let mut failed_checks = 0;
    let mut total = 0;
    for (i, (name, file)) in files.iter().enumerate() {
        let failures: Vec<&String> = jobs
            .iter()
            .zip(&outcomes)
            .filter(|((j, _), _)| *j == i)
            .filter_map(|(_, o)| o.as_ref())
            .collect();
        total += file.cases.len();
        let ok = failures.is_empty();
        if !ok {
            failed_checks += 1;
        }
        report.line(format!(
            "{} {} ({} cases){}",
            if ok { "PASS" } else { "FAIL" },
            file.check,
            file.cases.len(),
            if file.description.is_empty() { String::new() } else { format!(" — {}", file.description) }
        ));
        for f in &failures {
            report.line(format!("    {f}"));
        }
        checks.push(json!({
            "check": file.check,
            "file": name,
            "cases": file.cases.len(),
            "passed": ok,
            "failures": failures,
        }));
    }
    report.line(format!(
        "{} of {} checks passed, {total} cases",
        files.len() - failed_checks,
        files.len()
    ));
    report.results = json!({ "checks": checks, "passed": failed_checks == 0 });
    if failed_checks > 0 {
        report.negative();
    }
    Ok(report)
}
