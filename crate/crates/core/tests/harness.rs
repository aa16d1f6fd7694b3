//! The check harness: single checks, batch runs, exit codes and the report
//! format.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::time::Duration;

use affrank3::fixtures::shipped_fixture_dir;
use affrank3::harness::{
    CheckResult, Harness, HarnessError, RunReport, Summary, EXIT_CLAIM_FAILED, EXIT_INFRASTRUCTURE, EXIT_PASS,
};
use serde_json::{json, Value};

fn shipped() -> Harness {
    Harness::new(shipped_fixture_dir())
}

#[test]
fn orbit_censuses_of_the_two_groups() {
    let h = shipped();
    let v1 = h.run_check("V1").unwrap();
    assert!(v1.pass, "{v1:?}");
    assert_eq!(v1.computed, json!([1, 1, 14]));
    let v2 = h.run_check("V2").unwrap();
    assert!(v2.pass, "{v2:?}");
    assert_eq!(v2.computed, json!([1, 7, 8]));
}

#[test]
fn sp6_scene_has_two_classes_with_four_orbits() {
    let r = shipped().run_check("V9").unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.computed["orbit_counts"], json!([4, 4]));
    assert_eq!(r.computed["h1_sl3_3_natural"], json!(0));
}

#[test]
fn unknown_ids_are_rejected_before_running() {
    let h = shipped();
    assert!(matches!(h.run_check("V99"), Err(HarnessError::UnknownCheck(_))));
    assert!(matches!(
        h.run_checks(&["V1", "bogus"], 1, None),
        Err(HarnessError::UnknownCheck(id)) if id == "bogus"
    ));
}

fn without_timing(report: &RunReport) -> Vec<CheckResult> {
    report
        .results
        .iter()
        .cloned()
        .map(|mut r| {
            r.millis = 0;
            r
        })
        .collect()
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let ids = ["V1", "V2", "V3", "V4", "V5", "V6", "V9", "V11"];
    let one = shipped().run_checks(&ids, 1, None).unwrap();
    let three = shipped().run_checks(&ids, 3, None).unwrap();
    assert_eq!(one.exit_code(), EXIT_PASS);
    assert_eq!(three.exit_code(), EXIT_PASS);
    assert_eq!(without_timing(&one), without_timing(&three));
    let order: Vec<&str> = three.results.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(order, ids);
}

#[test]
fn corrupted_generator_fails_the_claim() {
    let dir = common::corrupted_copy("harness-corrupt");
    let report = Harness::new(dir.clone()).run_checks(&["V1", "V2"], 2, None).unwrap();
    assert_eq!(report.exit_code(), EXIT_CLAIM_FAILED);
    assert!(report.infrastructure_failures.is_empty());
    let v1 = &report.results[0];
    assert!(!v1.pass);
    let message = v1.computed["error"].as_str().unwrap();
    assert!(message.contains("order mismatch"), "{message}");
    assert!(report.results[1].pass);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn missing_fixtures_are_infrastructure_failures() {
    let dir = common::scratch_dir("harness-empty");
    let report = Harness::new(dir.clone()).run_checks(&["V1", "V3"], 1, None).unwrap();
    assert_eq!(report.exit_code(), EXIT_INFRASTRUCTURE);
    assert_eq!(report.infrastructure_failures, ["V1"]);
    // V3 builds its group directly and needs no fixture
    assert!(report.results.iter().any(|r| r.id == "V3" && r.pass));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn expired_deadline_is_an_infrastructure_failure() {
    let report = shipped().run_checks(&["V10"], 1, Some(Duration::ZERO)).unwrap();
    assert_eq!(report.exit_code(), EXIT_INFRASTRUCTURE);
    assert_eq!(report.infrastructure_failures, ["V10"]);
}

#[test]
fn report_is_json_lines_with_a_trailing_summary() {
    let report = shipped().run_checks(&["V1", "V3"], 2, None).unwrap();
    let mut buf = Vec::new();
    report.write_jsonl(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);

    let fields = |v: &Value| -> BTreeSet<String> { v.as_object().unwrap().keys().cloned().collect() };
    let record_fields: BTreeSet<String> = ["id", "claim", "expected", "computed", "pass", "millis"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for line in &lines[..2] {
        assert_eq!(fields(line), record_fields);
        let r: CheckResult = serde_json::from_value(line.clone()).unwrap();
        assert!(r.pass);
        assert!(!r.claim.is_empty());
    }
    let summary: Summary = serde_json::from_value(lines[2]["summary"].clone()).unwrap();
    assert_eq!(summary.total, 2);
    assert_eq!(summary.passed, 2);
    assert!(summary.failed.is_empty());
    assert_eq!(summary.threads, 2);
    assert_eq!(summary.exit_code, EXIT_PASS);
}
