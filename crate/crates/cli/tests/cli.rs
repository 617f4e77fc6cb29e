//! End-to-end tests that drive the compiled binary the way a shell user would.

use std::collections::BTreeMap;
use std::process::{Command, Output};

fn rsfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsfock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn apply_matches_the_worked_example() {
    let out = rsfock(&["apply", "--n", "2", "--op", "f1", "--state", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "|2> + r*|1,1>\n");
    assert_eq!(stderr(&out), "");
}

#[test]
fn omitting_the_operator_applies_the_identity() {
    let out = rsfock(&["apply", "--state", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "|2,1>\n");
}

#[test]
fn malformed_partition_is_a_one_line_usage_error() {
    let out = rsfock(&["apply", "--state", "x,y"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: "), "diagnostic was {err:?}");
    assert!(err.contains("partition"), "diagnostic was {err:?}");
    assert_eq!(stdout(&out), "");
}

#[test]
fn out_of_range_index_is_rejected_before_any_work() {
    let out = rsfock(&["apply", "--n", "2", "--op", "f5", "--state", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn rank_below_two_is_rejected() {
    let out = rsfock(&["verify", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn unknown_relation_group_is_rejected() {
    let out = rsfock(&["verify", "--relations", "a9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("a9"));
}

#[test]
fn default_verify_reports_failures_with_witnesses() {
    let out = rsfock(&["verify", "--format", "json", "--max", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json reports");
    let reports = reports.as_array().expect("array of reports");
    assert!(!reports.is_empty());
    for report in reports {
        for key in ["relation", "n", "offset", "N", "status"] {
            assert!(report.get(key).is_some(), "missing {key} in {report}");
        }
    }
    let failing: Vec<&serde_json::Value> =
        reports.iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r.get("witness").is_some()));
}

#[test]
fn passing_selection_exits_zero() {
    let out = rsfock(&["verify", "--n", "4", "--max", "6", "--relations", "A5,hw"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "summary was {text:?}");
}

#[test]
fn verify_json_is_identical_across_thread_counts() {
    let first = rsfock(&["verify", "--n", "3", "--max", "6", "--format", "json", "--jobs", "1"]);
    let second = rsfock(&["verify", "--n", "3", "--max", "6", "--format", "json", "--jobs", "7"]);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn seeded_property_checks_pass() {
    let out = rsfock(&["verify", "--n", "2", "--max", "6", "--relations", "props", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("props["));
}

#[test]
fn pairing_reports_the_known_rank_three_disagreements() {
    let out = rsfock(&["pairing", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json pairing");
    for table in ["inferred", "printed"] {
        let entries = value[table]["entries"].as_array().expect("entry rows");
        assert_eq!(entries.len(), 3);
        assert!(entries.iter().all(|row| row.as_array().map(Vec::len) == Some(3)));
    }
    let diffs: Vec<(u64, u64)> = value["diffs"]
        .as_array()
        .expect("diff list")
        .iter()
        .map(|d| (d["i"].as_u64().unwrap(), d["j"].as_u64().unwrap()))
        .collect();
    assert_eq!(diffs, vec![(0, 2), (2, 0), (2, 1)]);
}

#[test]
fn char_csv_is_the_dimension_series() {
    let out = rsfock(&["char", "--n", "2", "--max", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.first(), Some(&"size,dimension"));
    assert_eq!(lines.get(1), Some(&"0,1"));
    assert_eq!(lines.last(), Some(&"10,42"));
}

#[test]
fn claims_exit_nonzero_when_a_claim_fails() {
    let out = rsfock(&["claims", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL claims[C]"), "output was {text:?}");
    assert!(text.contains("pass claims[A]"), "output was {text:?}");
}

#[test]
fn claims_pass_below_the_first_counterexample() {
    let out = rsfock(&["claims", "--n", "3", "--max", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

/// Every column of the matrix subcommand must reproduce what `apply` prints
/// for the corresponding basis state, after restricting to the truncated
/// space (the matrix drops images past the size bound, so `apply` runs with
/// headroom and the comparison filters by size).
#[test]
fn matrix_json_columns_agree_with_apply() {
    let out = rsfock(&["matrix", "--n", "2", "--op", "f0", "--max", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json matrix");
    let basis: Vec<Vec<u64>> = serde_json::from_value(value["basis"].clone()).expect("basis");
    let mut columns: BTreeMap<usize, BTreeMap<Vec<u64>, String>> = BTreeMap::new();
    for entry in value["entries"].as_array().expect("entries") {
        let row = entry["row"].as_u64().unwrap() as usize;
        let col = entry["col"].as_u64().unwrap() as usize;
        let coeff = entry["coeff"].as_str().unwrap().to_string();
        columns.entry(col).or_default().insert(basis[row].clone(), coeff);
    }
    for (col, state) in basis.iter().enumerate() {
        let text = if state.is_empty() {
            "-".to_string()
        } else {
            state.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        let out = rsfock(&[
            "apply", "--n", "2", "--op", "f0", "--state", &text, "--max", "6", "--format", "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "apply failed on {text}");
        let image: Vec<serde_json::Value> =
            serde_json::from_str(&stdout(&out)).expect("json image");
        let from_apply: BTreeMap<Vec<u64>, String> = image
            .into_iter()
            .map(|term| {
                let partition: Vec<u64> =
                    serde_json::from_value(term["partition"].clone()).unwrap();
                (partition, term["coeff"].as_str().unwrap().to_string())
            })
            .filter(|(partition, _)| partition.iter().sum::<u64>() <= 5)
            .collect();
        let from_matrix = columns.remove(&col).unwrap_or_default();
        assert_eq!(from_matrix, from_apply, "column {col} ({text})");
    }
    assert!(columns.is_empty(), "entries referenced unknown columns");
}
