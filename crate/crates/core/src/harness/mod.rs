//! Verification harness: a registry of named checks, each recomputing one
//! claim from the fixtures and comparing it with its expected value, a
//! parallel runner with an overall deadline, and a line-delimited JSON
//! report.

mod checks;
mod end_to_end;
mod properties;

use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cohom::{CohomError, PresentationError};
use crate::fixtures::{FixtureError, FixtureRecord, FixtureStore};
use crate::grp::GroupError;
use crate::module::ModuleError;
use crate::scene::SceneError;

/// A registered check: its id and the claim it verifies.
#[derive(Clone, Copy, Debug)]
pub struct CheckSpec {
    pub id: &'static str,
    pub claim: &'static str,
}

pub const REGISTRY: [CheckSpec; 12] = [
    CheckSpec {
        id: "V1",
        claim: "G1 < GL4(2) has orbit lengths 1, 1, 14 on F_2^4",
    },
    CheckSpec {
        id: "V2",
        claim: "G2 < GL4(2) has orbit lengths 1, 7, 8 on F_2^4",
    },
    CheckSpec {
        id: "V3",
        claim: "the Levi subgroup L = GL1(2) x GL3(2) of the point stabilizer has orbit lengths 1, 1, 7, 7 on F_2^4",
    },
    CheckSpec {
        id: "V4",
        claim: "GL4(2) has exactly 3 classes of subgroups isomorphic to L2(7), told apart by fixing a point only, a hyperplane only, or both; the point stabilizer P1 has 2 such classes",
    },
    CheckSpec {
        id: "V5",
        claim: "G1 has 1 minimal invariant subspace (the fixed line W), G2 has 1 (the hyperplane U), L has 2 (W and U)",
    },
    CheckSpec {
        id: "V6",
        claim: "diag(A, B) acts on Q by conjugation as kron(A, B^-T), matrix for matrix, in the parabolics (p, n, d) = (2,4,1), (2,6,3), (3,8,4)",
    },
    CheckSpec {
        id: "V7",
        claim: "for H in SL3(2), SL3(3), Sp4(2), Sp4(3), Sp6(2), G2(2) and W, U running over the transitive irreducible modules of natural dimension, the complements of Q in the diagonal scene have the tabulated class and orbit counts, never fewer than 5 orbits",
    },
    CheckSpec {
        id: "V8",
        claim: "in the one-space scenes for A6, S6, A7, PSU3(3) and PSU3(3):2 every complement has at least 4 orbits",
    },
    CheckSpec {
        id: "V9",
        claim: "the one-space scene for Sp6(2) on F_2^7 has 2 complement classes with 4 orbits each, and H^1(SL3(3), F_3^3) = 0",
    },
    CheckSpec {
        id: "V10",
        claim: "cohomology properties: H^1 vanishes in coprime characteristic, Kunneth holds for A x B when H^0(A, W) = 0, B^1 lies in Z^1, cocycles satisfy the cocycle identity on random words, complement classes agree with exhaustive search, and BSGS orders agree with enumeration",
    },
    CheckSpec {
        id: "V11",
        claim: "the transitive linear group fixtures are transitive on nonzero vectors",
    },
    CheckSpec {
        id: "V12",
        claim: "among the O_2-trivial complements in the parabolics of GL4(2), the groups with three orbits on F_2^4 are exactly the conjugates of G1 and G2",
    },
];

/// Looks up a registered check.
pub fn check_spec(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// Every registered id, in registry order.
pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

/// Fixture names used by the checks.
pub mod names {
    pub const G1: &str = "g1_gl42";
    pub const G2: &str = "g2_gl42";
    pub const GL3_2: &str = "gl3_2";
    pub const GL4_2: &str = "gl4_2";
    pub const SL3_3: &str = "sl3_3";
    pub const SP4_2: &str = "sp4_2";
    pub const SP4_3: &str = "sp4_3";
    pub const SP6_2: &str = "sp6_2_natural";
    pub const G2_2: &str = "g2_2";
    pub const A6: &str = "a6_gl42";
    pub const S6: &str = "s6";
    pub const A7: &str = "a7_gl42";
    pub const PSU3_3: &str = "psu3_3_gl62";
    pub const PSU3_3_2: &str = "psu3_3_2";
    pub const SL2_5: &str = "sl2_5_gl2_11";
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("fixture {0} has no presentation")]
    MissingPresentation(String),
    #[error("check did not finish within {0} s")]
    Timeout(u64),
    #[error("check panicked: {0}")]
    Panicked(String),
    #[error("cannot build thread pool: {0}")]
    Pool(String),
}

impl HarnessError {
    /// Errors that say nothing about the claim itself: unreadable or missing
    /// fixtures, unknown ids, timeouts and crashes.
    pub fn is_infrastructure(&self) -> bool {
        match self {
            HarnessError::Fixture(e) => e.is_infrastructure(),
            HarnessError::UnknownCheck(_)
            | HarnessError::MissingPresentation(_)
            | HarnessError::Timeout(_)
            | HarnessError::Panicked(_)
            | HarnessError::Pool(_) => true,
            _ => false,
        }
    }
}

/// One report record. `pass` holds when `computed` matches `expected`
/// under [`matches`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub claim: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub millis: u64,
}

/// Whether `computed` agrees with `expected`.
///
/// Objects match when every key of `expected` is present in `computed` with
/// a matching value; `computed` may carry extra detail keys. The object
/// `{"at_least": n}` matches any number `>= n`. Arrays match elementwise and
/// everything else by equality.
pub fn matches(expected: &Value, computed: &Value) -> bool {
    match (expected, computed) {
        (Value::Object(e), c) if e.len() == 1 && e.contains_key("at_least") => {
            match (e["at_least"].as_f64(), c.as_f64()) {
                (Some(bound), Some(x)) => x >= bound,
                _ => false,
            }
        }
        (Value::Object(e), Value::Object(c)) => e
            .iter()
            .all(|(k, v)| c.get(k).is_some_and(|cv| matches(v, cv))),
        (Value::Array(e), Value::Array(c)) => {
            e.len() == c.len() && e.iter().zip(c).all(|(x, y)| matches(x, y))
        }
        _ => expected == computed,
    }
}

/// What a check body produces: the computed value and an optional remark
/// appended to the claim in the report.
pub(crate) struct Outcome {
    computed: Value,
    remark: Option<String>,
}

impl Outcome {
    fn new(computed: Value) -> Self {
        Outcome {
            computed,
            remark: None,
        }
    }
}

/// Runs checks against one fixture directory. Cloning is cheap and shares
/// the fixture cache.
#[derive(Clone)]
pub struct Harness {
    store: Arc<FixtureStore>,
}

impl Harness {
    pub fn new(fixture_dir: PathBuf) -> Self {
        Harness {
            store: Arc::new(FixtureStore::new(fixture_dir)),
        }
    }

    pub fn fixtures(&self) -> &FixtureStore {
        &self.store
    }

    pub(crate) fn fixture(&self, name: &str) -> Result<Arc<FixtureRecord>, HarnessError> {
        Ok(self.store.get(name)?)
    }

    /// Runs one check. Failures of the claim, including fixtures that fail
    /// verification, come back as a result with `pass = false`; only
    /// infrastructure problems are errors.
    pub fn run_check(&self, id: &str) -> Result<CheckResult, HarnessError> {
        let spec = check_spec(id).ok_or_else(|| HarnessError::UnknownCheck(id.to_string()))?;
        let start = Instant::now();
        let expected = checks::expected(spec.id);
        let (computed, remark) = match checks::compute(self, spec.id) {
            Ok(out) => (out.computed, out.remark),
            Err(e) if e.is_infrastructure() => return Err(e),
            Err(e) => (json!({ "error": e.to_string() }), None),
        };
        let pass = matches(&expected, &computed);
        let claim = match remark {
            Some(r) => format!("{}. Note: {}", spec.claim, r),
            None => spec.claim.to_string(),
        };
        Ok(CheckResult {
            id: spec.id.to_string(),
            claim,
            expected,
            computed,
            pass,
            millis: start.elapsed().as_millis() as u64,
        })
    }

    /// Runs the given checks on a pool of `threads` workers. Checks still
    /// running at the deadline are reported as infrastructure failures.
    /// Unknown ids are rejected before anything runs.
    pub fn run_checks(
        &self,
        ids: &[&str],
        threads: usize,
        timeout: Option<Duration>,
    ) -> Result<RunReport, HarnessError> {
        for id in ids {
            if check_spec(id).is_none() {
                return Err(HarnessError::UnknownCheck(id.to_string()));
            }
        }
        let start = Instant::now();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?;
        let (tx, rx) = mpsc::channel();
        for (i, id) in ids.iter().enumerate() {
            let tx = tx.clone();
            let harness = self.clone();
            let id = id.to_string();
            pool.spawn(move || {
                let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| harness.run_check(&id)))
                    .unwrap_or_else(|payload| Err(HarnessError::Panicked(panic_message(&payload))));
                let _ = tx.send((i, result));
            });
        }
        drop(tx);
        let deadline = timeout.map(|t| start + t);
        let mut slots: Vec<Option<Result<CheckResult, HarnessError>>> = (0..ids.len()).map(|_| None).collect();
        let mut received = 0;
        while received < ids.len() {
            let message = match deadline {
                Some(d) => match d.checked_duration_since(Instant::now()) {
                    Some(left) => rx.recv_timeout(left).ok(),
                    None => None,
                },
                None => rx.recv().ok(),
            };
            let Some((i, result)) = message else { break };
            slots[i] = Some(result);
            received += 1;
        }

        let timeout_secs = timeout.map(|t| t.as_secs()).unwrap_or(0);
        let mut results = Vec::with_capacity(ids.len());
        let mut infrastructure_failures = Vec::new();
        for (id, slot) in ids.iter().zip(slots) {
            let result = slot.unwrap_or(Err(HarnessError::Timeout(timeout_secs)));
            match result {
                Ok(r) => results.push(r),
                Err(e) => {
                    infrastructure_failures.push(id.to_string());
                    let spec = check_spec(id).expect("validated above");
                    results.push(CheckResult {
                        id: spec.id.to_string(),
                        claim: spec.claim.to_string(),
                        expected: checks::expected(spec.id),
                        computed: json!({ "error": e.to_string(), "infrastructure": true }),
                        pass: false,
                        millis: start.elapsed().as_millis() as u64,
                    });
                }
            }
        }
        Ok(RunReport {
            results,
            infrastructure_failures,
            threads: threads.max(1),
            millis: start.elapsed().as_millis() as u64,
        })
    }

    /// Runs every registered check.
    pub fn run_all(&self, threads: usize, timeout: Option<Duration>) -> Result<RunReport, HarnessError> {
        self.run_checks(&check_ids(), threads, timeout)
    }
}

fn panic_message(payload: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}

/// Exit status of a run: every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status of a run: some claim did not hold.
pub const EXIT_CLAIM_FAILED: i32 = 1;
/// Exit status of a run: fixtures, ids, or the runner itself failed.
pub const EXIT_INFRASTRUCTURE: i32 = 2;

/// Results of a batch run, in the order the ids were given.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub results: Vec<CheckResult>,
    /// Ids whose checks could not be carried out.
    pub infrastructure_failures: Vec<String>,
    pub threads: usize,
    pub millis: u64,
}

/// The trailing report record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    pub infrastructure_failures: Vec<String>,
    pub threads: usize,
    pub millis: u64,
    pub exit_code: i32,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if !self.infrastructure_failures.is_empty() {
            EXIT_INFRASTRUCTURE
        } else if self.results.iter().any(|r| !r.pass) {
            EXIT_CLAIM_FAILED
        } else {
            EXIT_PASS
        }
    }

    pub fn summary(&self) -> Summary {
        Summary {
            total: self.results.len(),
            passed: self.results.iter().filter(|r| r.pass).count(),
            failed: self
                .results
                .iter()
                .filter(|r| !r.pass)
                .map(|r| r.id.clone())
                .collect(),
            infrastructure_failures: self.infrastructure_failures.clone(),
            threads: self.threads,
            millis: self.millis,
            exit_code: self.exit_code(),
        }
    }

    /// One JSON object per check, then `{"summary": {...}}`.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.results {
            serde_json::to_writer(&mut out, r)?;
            writeln!(out)?;
        }
        serde_json::to_writer(&mut out, &json!({ "summary": self.summary() }))?;
        writeln!(out)?;
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matcher_semantics() {
        assert!(matches(&json!([1, 1, 14]), &json!([1, 1, 14])));
        assert!(!matches(&json!([1, 1, 14]), &json!([1, 14, 1])));
        assert!(matches(&json!({"a": 1}), &json!({"a": 1, "detail": [3]})));
        assert!(!matches(&json!({"a": 1, "b": 2}), &json!({"a": 1})));
        assert!(matches(&json!({"m": {"at_least": 5}}), &json!({"m": 6})));
        assert!(matches(&json!({"at_least": 5}), &json!(5)));
        assert!(!matches(&json!({"at_least": 5}), &json!(4)));
        assert!(!matches(&json!({"at_least": 5}), &json!(null)));
    }

    #[test]
    fn registry_ids_are_unique_and_ordered() {
        let ids = check_ids();
        let expect: Vec<String> = (1..=12).map(|i| format!("V{i}")).collect();
        assert_eq!(ids, expect);
    }

    #[test]
    fn unknown_id_is_rejected() {
        let h = Harness::new(crate::fixtures::shipped_fixture_dir());
        assert!(matches!(h.run_check("bogus"), Err(HarnessError::UnknownCheck(_))));
        assert!(matches!(
            h.run_checks(&["V1", "bogus"], 1, None),
            Err(HarnessError::UnknownCheck(_))
        ));
    }

    #[test]
    fn exit_codes() {
        let ok = CheckResult {
            id: "V1".into(),
            claim: String::new(),
            expected: json!(1),
            computed: json!(1),
            pass: true,
            millis: 0,
        };
        let mut report = RunReport {
            results: vec![ok.clone()],
            infrastructure_failures: vec![],
            threads: 1,
            millis: 0,
        };
        assert_eq!(report.exit_code(), EXIT_PASS);
        report.results.push(CheckResult { pass: false, ..ok });
        assert_eq!(report.exit_code(), EXIT_CLAIM_FAILED);
        report.infrastructure_failures.push("V2".into());
        assert_eq!(report.exit_code(), EXIT_INFRASTRUCTURE);
    }
}
