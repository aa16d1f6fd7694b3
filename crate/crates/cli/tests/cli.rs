//! The `affrank3` binary: exit codes, reports and subcommand output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_affrank3");

fn shipped_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .arg("--fixtures")
        .arg(shipped_fixtures())
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affrank3-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn passing_checks_exit_zero_with_a_report_file() {
    let dir = scratch_dir("report");
    let report = dir.join("report.jsonl");
    let out = run(&["verify", "--check", "V1", "V2", "--threads", "2", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("PASS V1") && stderr.contains("PASS V2"), "{stderr}");
    let text = fs::read_to_string(&report).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["id"], "V1");
    assert_eq!(lines[0]["pass"], true);
    assert_eq!(lines[2]["summary"]["exit_code"], 0);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corrupted_fixture_exits_one() {
    let dir = scratch_dir("corrupt");
    for entry in fs::read_dir(shipped_fixtures()).unwrap() {
        let path = entry.unwrap().path();
        fs::copy(&path, dir.join(path.file_name().unwrap())).unwrap();
    }
    let g1 = dir.join("g1_gl42.fix");
    let text = fs::read_to_string(&g1).unwrap();
    let corrupted = text.replacen(
        "gen 1 0 0 0 0 0 0 1 0 1 0 0 0 0 1 0",
        "gen 1 1 0 0 0 0 0 1 0 1 0 0 0 0 1 0",
        1,
    );
    assert_ne!(text, corrupted);
    fs::write(&g1, corrupted).unwrap();

    // the fixture directory comes from the environment here
    let out = Command::new(BIN)
        .env("AFFRANK3_FIXTURES", &dir)
        .args(["verify", "--check", "V1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let first: Value = serde_json::from_str(String::from_utf8_lossy(&out.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(first["pass"], false);
    assert!(first["computed"]["error"].as_str().unwrap().contains("order mismatch"));

    let out = Command::new(BIN).arg("--fixtures").arg(&dir).arg("manifest").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn infrastructure_failures_exit_two() {
    assert_eq!(run(&["verify", "--check", "bogus"]).status.code(), Some(2));
    let empty = scratch_dir("empty");
    let out = Command::new(BIN)
        .arg("--fixtures")
        .arg(&empty)
        .args(["verify", "--check", "V1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["orbits", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(run(&["complements", "sideways:gl3_2"]).status.code(), Some(2));
    fs::remove_dir_all(empty).unwrap();
}

#[test]
fn orbits_of_g1() {
    let out = run(&["orbits", "g1_gl42"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["order"], 168);
    assert_eq!(v["orbit_sizes"], serde_json::json!([1, 1, 14]));
}

#[test]
fn orbits_accepts_a_file_path() {
    let path = shipped_fixtures().join("g2_gl42.fix");
    let out = run(&["orbits", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["orbit_sizes"], serde_json::json!([1, 7, 8]));
}

#[test]
fn first_cohomology_of_sl3_3_natural_vanishes() {
    let out = run(&["h1", "sl3_3", "natural"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["h1_dim"], 0);
    assert_eq!(v["z1_dim"], v["b1_dim"]);
}

#[test]
fn complements_in_the_sp6_scene() {
    let out = run(&["complements", "one:sp6_2_natural"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["classes"], 2);
    assert_eq!(v["orbit_counts"], serde_json::json!([4, 4]));
}

#[test]
fn complements_in_a_diagonal_scene() {
    let out = run(&["complements", "diag:gl3_2:natural:natural"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["orbit_counts"], serde_json::json!([5]));
}

#[test]
fn tc_and_meataxe_report_certificates_and_verdicts() {
    let out = run(&["tc", "gl3_2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["certificate"]["index"], 168);

    let out = run(&["tc", "sp6_2_natural"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["order"], 1451520);

    let out = run(&["meataxe", "sp4_2", "twist"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "irreducible");
}

#[test]
fn manifest_lists_every_fixture_as_verified() {
    let out = run(&["manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 12);
    assert!(lines.iter().all(|l| l["verified"] == true));
}
