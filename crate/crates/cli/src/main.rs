//! Command line front end: batch verification of the registered checks and
//! small exploration commands over fixture groups.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use affrank3::cohom::{cocycle_space, complement_orbit_census, Certificate};
use affrank3::fixtures::{fixture_dir, fixture_manifest, load_fixture, load_fixture_file, FixtureRecord};
use affrank3::grp::MatrixGroup;
use affrank3::harness::{check_ids, Harness, HarnessError, EXIT_INFRASTRUCTURE};
use affrank3::module::{meataxe, MeataxeOutcome};
use affrank3::scene::{m2_scene, y_scene, SceneGroup, Side};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "affrank3", version, about = "Verify orbit, cohomology and complement computations for affine rank-3 groups")]
struct Cli {
    /// Fixture directory; defaults to $AFFRANK3_FIXTURES, then the shipped fixtures.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registered checks and write a JSON-lines report.
    Verify(VerifyArgs),
    /// Orbit lengths of a fixture group on its vector space.
    Orbits {
        /// Fixture file, or a fixture name in the fixture directory.
        group: String,
    },
    /// Dimensions of Z^1, B^1 and H^1 for a fixture module.
    H1 {
        group: String,
        /// `natural`, `dual`, or a module label from the fixture.
        module: String,
    },
    /// Complement classes and their orbit counts in a scene.
    ///
    /// Scene ids: `one:<fixture>[:<module>]` puts the module on V/W over a
    /// trivial line, `hyperplane:<fixture>[:<module>]` on a hyperplane with
    /// trivial quotient, `diag:<fixture>:<w-module>:<u-module>` on both.
    Complements { scene: String },
    /// Certify a fixture presentation by coset enumeration and report it.
    Tc { fixture: String },
    /// Irreducibility of a fixture module by the Meataxe.
    Meataxe { group: String, module: String },
    /// Load and verify every fixture in the directory.
    Manifest,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every registered check.
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Check ids to run, e.g. V1 V9.
    #[arg(long, num_args = 1.., value_name = "ID")]
    check: Vec<String>,
    /// Report path; `-` or absent writes to stdout.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Overall deadline in seconds; unfinished checks count as infrastructure failures.
    #[arg(long, value_name = "N")]
    timeout_secs: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Fixture(#[from] affrank3::fixtures::FixtureError),
    #[error(transparent)]
    Scene(#[from] affrank3::scene::SceneError),
    #[error(transparent)]
    Group(#[from] affrank3::grp::GroupError),
    #[error(transparent)]
    Cohom(#[from] affrank3::cohom::CohomError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = fixture_dir(cli.fixtures.as_deref());
    let result = match cli.command {
        Command::Verify(args) => verify(&dir, args),
        Command::Orbits { group } => orbits(&dir, &group).map(print_ok),
        Command::H1 { group, module } => h1(&dir, &group, &module).map(print_ok),
        Command::Complements { scene } => complements(&dir, &scene).map(print_ok),
        Command::Tc { fixture } => tc(&dir, &fixture).map(print_ok),
        Command::Meataxe { group, module } => run_meataxe(&dir, &group, &module).map(print_ok),
        Command::Manifest => manifest(&dir),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INFRASTRUCTURE as u8)
        }
    }
}

fn print_ok(v: Value) -> i32 {
    println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
    0
}

fn verify(dir: &Path, args: VerifyArgs) -> Result<i32, CliError> {
    let ids: Vec<String> = if args.all || args.check.is_empty() {
        check_ids().into_iter().map(String::from).collect()
    } else {
        args.check
    };
    let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let harness = Harness::new(dir.to_path_buf());
    let report = harness.run_checks(&id_refs, args.threads, args.timeout_secs.map(Duration::from_secs))?;
    match args.report.as_deref() {
        Some(p) if p != Path::new("-") => {
            report.write_jsonl(BufWriter::new(File::create(p)?))?;
            for r in &report.results {
                eprintln!("{} {} ({} ms)", if r.pass { "PASS" } else { "FAIL" }, r.id, r.millis);
            }
        }
        _ => report.write_jsonl(io::stdout().lock())?,
    }
    Ok(report.exit_code())
}

/// A fixture file path, or else a fixture name in `dir`.
fn load_group(dir: &Path, group: &str) -> Result<FixtureRecord, CliError> {
    let path = Path::new(group);
    if path.is_file() {
        Ok(load_fixture_file(path)?)
    } else {
        Ok(load_fixture(dir, group)?)
    }
}

fn module_of(rec: &FixtureRecord, label: &str) -> Result<affrank3::module::FpModule, CliError> {
    rec.module(label)
        .ok_or_else(|| CliError::Usage(format!("fixture {} has no module {label:?}", rec.name())))
}

fn presentation_of(rec: &FixtureRecord) -> Result<&affrank3::cohom::CertifiedPresentation, CliError> {
    rec.presentation()
        .ok_or_else(|| CliError::Usage(format!("fixture {} has no presentation", rec.name())))
}

fn orbits(dir: &Path, group: &str) -> Result<Value, CliError> {
    let rec = load_group(dir, group)?;
    let orbits = rec.group().orbits()?;
    Ok(json!({
        "fixture": rec.name(),
        "order": rec.order() as u64,
        "orbits": orbits.count(),
        "orbit_sizes": orbits.size_multiset(),
    }))
}

fn h1(dir: &Path, group: &str, label: &str) -> Result<Value, CliError> {
    let rec = load_group(dir, group)?;
    let module = module_of(&rec, label)?;
    let cs = cocycle_space(presentation_of(&rec)?, &module)?;
    Ok(json!({
        "fixture": rec.name(),
        "module": label,
        "dim": module.dim(),
        "z1_dim": cs.z1_dim(),
        "b1_dim": cs.b1_dim(),
        "h1_dim": cs.h1_dim(),
    }))
}

fn parse_scene(dir: &Path, id: &str) -> Result<(SceneGroup, FixtureRecord), CliError> {
    let parts: Vec<&str> = id.split(':').collect();
    let usage = || CliError::Usage(format!("bad scene id {id:?}; expected one:<fixture>[:<module>], hyperplane:<fixture>[:<module>] or diag:<fixture>:<w>:<u>"));
    let (kind, fixture) = match parts.as_slice() {
        [k, f, ..] => (*k, *f),
        _ => return Err(usage()),
    };
    let rec = load_group(dir, fixture)?;
    let scene = match (kind, &parts[2..]) {
        ("one", rest) | ("hyperplane", rest) if rest.len() <= 1 => {
            let label = rest.first().copied().unwrap_or("natural");
            let side = if kind == "one" { Side::OneSpace } else { Side::Hyperplane };
            y_scene(&module_of(&rec, label)?, side, id)?
        }
        ("diag", [w, u]) => m2_scene(&module_of(&rec, w)?, &module_of(&rec, u)?, id)?,
        _ => return Err(usage()),
    };
    Ok((scene, rec))
}

fn complements(dir: &Path, id: &str) -> Result<Value, CliError> {
    let (scene, rec) = parse_scene(dir, id)?;
    let cs = scene.cocycles(presentation_of(&rec)?)?;
    let comps = scene.complements(&cs)?;
    let groups: Vec<MatrixGroup> = comps.iter().map(|c| c.group.clone()).collect();
    let census = complement_orbit_census(&groups)?;
    Ok(json!({
        "scene": id,
        "n": scene.scene().n(),
        "q_order": scene.scene().q_order() as u64,
        "h1_dim": cs.h1_dim(),
        "classes": comps.len(),
        "orbit_counts": census.orbit_counts,
        "orbit_sizes": census.orbit_sizes,
    }))
}

fn tc(dir: &Path, fixture: &str) -> Result<Value, CliError> {
    let start = Instant::now();
    let rec = load_group(dir, fixture)?;
    let cert = presentation_of(&rec)?;
    let certificate = match cert.certificate() {
        Certificate::TrivialSubgroup { index } => json!({ "subgroup": "trivial", "index": index }),
        Certificate::CyclicSubgroup {
            generator,
            power,
            index,
        } => json!({
            "subgroup": format!("<{}>", (b'a' + *generator as u8) as char),
            "power": power,
            "index": index,
        }),
        Certificate::PrefixSubgroup {
            generators,
            subgroup_order,
            index,
        } => json!({
            "subgroup": format!("<first {generators} generators>"),
            "subgroup_order": *subgroup_order as u64,
            "index": index,
        }),
    };
    Ok(json!({
        "fixture": rec.name(),
        "order": rec.order() as u64,
        "relators": cert.presentation().relators().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "certificate": certificate,
        "millis": start.elapsed().as_millis() as u64,
    }))
}

fn run_meataxe(dir: &Path, group: &str, label: &str) -> Result<Value, CliError> {
    let rec = load_group(dir, group)?;
    let module = module_of(&rec, label)?;
    let outcome = meataxe(module.p(), module.dim(), module.action(), 0, 64);
    let (verdict, witness) = match outcome {
        MeataxeOutcome::Irreducible => ("irreducible", None),
        MeataxeOutcome::Reducible(s) => ("reducible", Some(s.dim())),
        MeataxeOutcome::Inconclusive => ("inconclusive", None),
    };
    Ok(json!({
        "fixture": rec.name(),
        "module": label,
        "dim": module.dim(),
        "verdict": verdict,
        "invariant_subspace_dim": witness,
    }))
}

fn manifest(dir: &Path) -> Result<i32, CliError> {
    let entries = fixture_manifest(dir)?;
    let mut out = io::stdout().lock();
    let mut code = 0;
    for (name, status) in entries {
        let line = match status {
            Ok(()) => json!({ "fixture": name, "verified": true }),
            Err(e) => {
                code = if e.is_infrastructure() { 2 } else { code.max(1) };
                json!({ "fixture": name, "verified": false, "error": e.to_string() })
            }
        };
        writeln!(out, "{line}")?;
    }
    Ok(code)
}
