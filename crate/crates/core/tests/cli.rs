//! The `lawkit` binary: exit codes, report formats, and replay.

use std::process::{Command, Output};

use lawkit::report::{RunReport, Status};

fn lawkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn monads_json_has_one_record_per_check() {
    let o = lawkit(&["run", "monads", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.schema, 1);
    let expected = lawkit::suites::suite_checks("monads").unwrap().len();
    assert_eq!(report.results.len(), expected);
    assert!(report.results.iter().all(|r| r.suite == "monads" && r.status == Status::Pass));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lawkit(&["run", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(lawkit(&["run", "monads", "--denom-bound", "0"]).status.code(), Some(2));
    assert_eq!(lawkit(&["iterate", "--triple", "nope", "--check", "yb"]).status.code(), Some(2));
    assert_eq!(lawkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn subcommands_run() {
    let o = lawkit(&["split", "pp", "--carrier-size", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|KX| ="));
    assert_eq!(lawkit(&["iterate", "--triple", "exc<pp>", "--check", "yb"]).status.code(), Some(0));
    assert_eq!(lawkit(&["gallery", "check", "eps<pow>"]).status.code(), Some(0));
    assert_eq!(lawkit(&["algebras", "check", "--law", "pp", "--fixture", "join/meet"]).status.code(), Some(0));
    assert_eq!(lawkit(&["algebras", "check", "--fixture", "meet"]).status.code(), Some(0));
    assert_eq!(lawkit(&["winter", "check", "--instance", "identity<P>"]).status.code(), Some(0));
    let list = stdout(&lawkit(&["gallery", "list"]));
    assert!(list.contains("law pp : weak") && list.contains("triple exc<pp>"));
}

#[test]
fn stored_weakness_witness_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pp.json");
    let o = lawkit(&["gallery", "check", "pp", "--report", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let eta = report.results.iter().find(|r| r.check == "eta-").unwrap();
    assert_eq!(eta.witness.as_ref().unwrap().input, "[a, b]");

    let record = dir.path().join("eta.json");
    std::fs::write(&record, serde_json::to_string(eta).unwrap()).unwrap();
    let o = lawkit(&["replay", record.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 changed"));
}

#[test]
fn corrupted_witness_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("neg.json");
    let o = lawkit(&["run", "fixtures:negative", "--report", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let mut report: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bad = report.results.iter_mut().find(|r| r.check == "least-element/natural").unwrap();
    bad.witness.as_mut().unwrap().input = "[[a".into();
    std::fs::write(&path, serde_json::to_string(&report).unwrap()).unwrap();
    let o = lawkit(&["replay", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot parse witness input"));
}

#[test]
fn garbage_report_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(lawkit(&["replay", path.to_str().unwrap()]).status.code(), Some(2));
}
