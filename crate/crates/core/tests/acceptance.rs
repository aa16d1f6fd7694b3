//! Acceptance criteria A1–A9. Each criterion runs its checks on a fresh
//! harness, so fixture loading and presentation certification count toward
//! its time budget. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use affrank3::fixtures::shipped_fixture_dir;
use affrank3::harness::Harness;

struct Criterion {
    id: &'static str,
    checks: &'static [&'static str],
    budget: Duration,
    summary: &'static str,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: "A1",
        checks: &["V1", "V2", "V3"],
        budget: Duration::from_secs(1),
        summary: "orbit censuses {1,1,14}, {1,7,8}, {1,1,7,7}",
    },
    Criterion {
        id: "A2",
        checks: &["V4"],
        budget: Duration::from_secs(5 * 60),
        summary: "three L2(7) classes in GL4(2), two inside P1",
    },
    Criterion {
        id: "A3",
        checks: &["V5"],
        budget: Duration::from_secs(1),
        summary: "minimal invariant subspace counts 1, 1, 2",
    },
    Criterion {
        id: "A4",
        checks: &["V6"],
        budget: Duration::from_secs(1),
        summary: "tensor conjugation identity on three scenes",
    },
    Criterion {
        id: "A5",
        checks: &["V7"],
        budget: Duration::from_secs(30 * 60),
        summary: "complement classes and orbit counts for six faithful groups",
    },
    Criterion {
        id: "A6",
        checks: &["V8"],
        budget: Duration::from_secs(2 * 60),
        summary: "at least four orbits in every one-space scene",
    },
    Criterion {
        id: "A7",
        checks: &["V9"],
        budget: Duration::from_secs(2 * 60),
        summary: "Sp6(2) scene: two classes with four orbits; H1(SL3(3), natural) = 0",
    },
    Criterion {
        id: "A8",
        checks: &["V10"],
        budget: Duration::from_secs(5 * 60),
        summary: "property suites and brute-force oracles",
    },
    Criterion {
        id: "A9",
        checks: &["V12"],
        budget: Duration::from_secs(10 * 60),
        summary: "three-orbit reducible O2-trivial subgroups of GL4(2) are G1, G2",
    },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let harness = Harness::new(shipped_fixture_dir());
        let start = Instant::now();
        let mut problems = Vec::new();
        for id in c.checks {
            match harness.run_check(id) {
                Ok(r) if r.pass => {}
                Ok(r) => problems.push(format!("{id} computed {}", r.computed)),
                Err(e) => problems.push(format!("{id}: {e}")),
            }
        }
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            problems.push(format!("over budget of {:?}", c.budget));
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{} {verdict} [{}] {} ({:.2} s, budget {} s)",
            c.id,
            c.checks.join(","),
            c.summary,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
