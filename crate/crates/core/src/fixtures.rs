//! Fixture files: generator matrices, presentations and module variants of
//! the groups used by the checks, with a loader that verifies every claim
//! the file makes before handing the record out.
//!
//! The format is line oriented UTF-8. `#` starts a comment line.
//!
//! ```text
//! name gl3_2
//! p 2
//! dim 3
//! order 168
//! transitive 1
//! gen 0 0 1 0 1 0 1 0 0
//! gen 0 1 0 1 0 1 1 1 0
//! rel a^2
//! rel (a*b)^7
//! module twist
//! gen ...
//! ```
//!
//! `gen` lines hold `dim^2` residues row-major. `gen` lines after a
//! `module <label>` line belong to that module variant; its dimension is
//! read off the entry count.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::cohom::{verify_presentation, CertifiedPresentation, Presentation, PresentationError, Word};
use crate::gf::{FpMatrix, GfError};
use crate::grp::{GroupError, MatrixGroup};
use crate::module::{FpModule, ModuleError};

/// Environment variable naming the fixture directory.
pub const FIXTURE_ENV: &str = "AFFRANK3_FIXTURES";

/// File extension of fixture files.
pub const FIXTURE_EXTENSION: &str = "fix";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{source_name}: missing field {field}")]
    Missing { source_name: String, field: &'static str },
    #[error("{name}: order mismatch: file claims {expected}, generators give {computed}")]
    OrderMismatch { name: String, expected: u128, computed: u128 },
    #[error("{name}: transitivity mismatch: file claims {expected}, orbit count gives {computed}")]
    TransitivityMismatch { name: String, expected: bool, computed: bool },
    #[error("{name}: presentation rejected: {source}")]
    Presentation { name: String, source: PresentationError },
    #[error("{name}: module {label}: relator {relator} fails")]
    ModuleRelator { name: String, label: String, relator: String },
    #[error("{name}: module {label} has {found} generators, expected {expected}")]
    ModuleGeneratorCount {
        name: String,
        label: String,
        found: usize,
        expected: usize,
    },
    #[error("{name}: module {label} is reducible")]
    ModuleReducible { name: String, label: String },
    #[error("{name}: {source}")]
    Group { name: String, source: GroupError },
    #[error("{name}: {source}")]
    Module { name: String, source: ModuleError },
    #[error("no fixture named {0}")]
    Unknown(String),
}

impl FixtureError {
    /// Missing or malformed files, as opposed to files whose claims fail
    /// verification.
    pub fn is_infrastructure(&self) -> bool {
        matches!(
            self,
            FixtureError::Io { .. } | FixtureError::Parse { .. } | FixtureError::Missing { .. } | FixtureError::Unknown(_)
        )
    }
}

/// The contents of a fixture file before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFixture {
    pub name: String,
    pub p: u8,
    pub dim: usize,
    pub order: u128,
    pub transitive: bool,
    pub generators: Vec<FpMatrix>,
    pub relators: Vec<String>,
    pub modules: Vec<(String, Vec<FpMatrix>)>,
}

/// A verified fixture.
#[derive(Clone, Debug)]
pub struct FixtureRecord {
    name: String,
    group: MatrixGroup,
    transitive: bool,
    presentation: Option<CertifiedPresentation>,
    modules: Vec<FpModule>,
}

impl FixtureRecord {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u8 {
        self.group.p()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn presentation(&self) -> Option<&CertifiedPresentation> {
        self.presentation.as_ref()
    }

    /// The natural module, labelled `natural`.
    pub fn natural_module(&self) -> FpModule {
        FpModule::natural(&self.group, "natural")
    }

    /// Module variants shipped in the file.
    pub fn modules(&self) -> &[FpModule] {
        &self.modules
    }

    /// `natural`, `dual` (computed), or a shipped variant.
    pub fn module(&self, label: &str) -> Option<FpModule> {
        match label {
            "natural" => Some(self.natural_module()),
            "dual" => Some(self.natural_module().dual().with_label("dual")),
            _ => self.modules.iter().find(|m| m.label() == label).cloned(),
        }
    }
}

fn parse_error(source_name: &str, line: usize, message: impl Into<String>) -> FixtureError {
    FixtureError::Parse {
        source_name: source_name.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses fixture text; `source_name` labels error messages.
pub fn parse_fixture(text: &str, source_name: &str) -> Result<RawFixture, FixtureError> {
    let mut name = None;
    let mut p = None;
    let mut dim = None;
    let mut order = None;
    let mut transitive = None;
    let mut gens: Vec<(usize, Vec<u8>)> = Vec::new();
    let mut relators = Vec::new();
    let mut modules: Vec<(String, Vec<(usize, Vec<u8>)>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let int = |what: &str| -> Result<u128, FixtureError> {
            rest.parse::<u128>()
                .map_err(|_| parse_error(source_name, line_no, format!("{what} expects an integer, got {rest:?}")))
        };
        match key {
            "name" if !rest.is_empty() => name = Some(rest.to_string()),
            "p" => {
                let v = int("p")?;
                let v = u8::try_from(v).map_err(|_| parse_error(source_name, line_no, "p out of range"))?;
                p = Some(v);
            }
            "dim" => dim = Some(int("dim")? as usize),
            "order" => order = Some(int("order")?),
            "transitive" => {
                transitive = Some(match rest {
                    "0" => false,
                    "1" => true,
                    _ => return Err(parse_error(source_name, line_no, "transitive expects 0 or 1")),
                })
            }
            "gen" => {
                let entries = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u8>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| parse_error(source_name, line_no, "gen entries must be residues"))?;
                match modules.last_mut() {
                    Some((_, list)) => list.push((line_no, entries)),
                    None => gens.push((line_no, entries)),
                }
            }
            "rel" if !rest.is_empty() => relators.push(rest.to_string()),
            "module" if !rest.is_empty() => modules.push((rest.to_string(), Vec::new())),
            _ => return Err(parse_error(source_name, line_no, format!("unrecognized line {line:?}"))),
        }
    }
    let missing = |field| FixtureError::Missing {
        source_name: source_name.to_string(),
        field,
    };
    let name = name.ok_or_else(|| missing("name"))?;
    let p = p.ok_or_else(|| missing("p"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let order = order.ok_or_else(|| missing("order"))?;
    let transitive = transitive.ok_or_else(|| missing("transitive"))?;
    if gens.is_empty() {
        return Err(missing("gen"));
    }
    let to_matrix = |line_no: usize, m: usize, entries: Vec<u8>| -> Result<FpMatrix, FixtureError> {
        FpMatrix::new(p, m, m, entries).map_err(|e: GfError| parse_error(source_name, line_no, e.to_string()))
    };
    let generators = gens
        .into_iter()
        .map(|(line_no, entries)| {
            if entries.len() != dim * dim {
                return Err(parse_error(
                    source_name,
                    line_no,
                    format!("gen has {} entries, expected {}", entries.len(), dim * dim),
                ));
            }
            to_matrix(line_no, dim, entries)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let modules = modules
        .into_iter()
        .map(|(label, list)| {
            let mats = list
                .into_iter()
                .map(|(line_no, entries)| {
                    let m = (entries.len() as f64).sqrt().round() as usize;
                    if m * m != entries.len() || m == 0 {
                        return Err(parse_error(source_name, line_no, "module gen entry count is not a square"));
                    }
                    to_matrix(line_no, m, entries)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((label, mats))
        })
        .collect::<Result<Vec<_>, FixtureError>>()?;
    Ok(RawFixture {
        name,
        p,
        dim,
        order,
        transitive,
        generators,
        relators,
        modules,
    })
}

/// Verifies a parsed fixture: invertible generators, the claimed order, the
/// claimed transitivity on nonzero vectors, the presentation (relators hold
/// and coset enumeration reaches the order), and for each module variant
/// that it is an irreducible representation of the presented group.
pub fn verify_fixture(raw: RawFixture) -> Result<FixtureRecord, FixtureError> {
    let name = raw.name.clone();
    let group_err = |source| FixtureError::Group {
        name: name.clone(),
        source,
    };
    let group = MatrixGroup::new(raw.p, raw.dim, raw.generators).map_err(group_err)?;
    let computed = group.order();
    if computed != raw.order {
        return Err(FixtureError::OrderMismatch {
            name,
            expected: raw.order,
            computed,
        });
    }
    let orbits = group.orbits().map_err(group_err)?;
    let transitive = orbits.count() == 2;
    if transitive != raw.transitive {
        return Err(FixtureError::TransitivityMismatch {
            name,
            expected: raw.transitive,
            computed: transitive,
        });
    }
    let k = group.generators().len();
    let pres_err = |source| FixtureError::Presentation {
        name: name.clone(),
        source,
    };
    let (presentation, words) = if raw.relators.is_empty() {
        (None, Vec::new())
    } else {
        let refs: Vec<&str> = raw.relators.iter().map(|s| s.as_str()).collect();
        let pres = Presentation::parse(k, &refs).map_err(pres_err)?;
        let words: Vec<Word> = pres.relators().to_vec();
        (Some(verify_presentation(&group, &pres).map_err(pres_err)?), words)
    };
    let mut modules = Vec::new();
    for (label, action) in raw.modules {
        if action.len() != k {
            return Err(FixtureError::ModuleGeneratorCount {
                name,
                label,
                found: action.len(),
                expected: k,
            });
        }
        let dim = action[0].rows();
        let module = FpModule::new(raw.p, dim, action, label.clone()).map_err(|source| FixtureError::Module {
            name: name.clone(),
            source,
        })?;
        let inverses: Vec<FpMatrix> = module.action().iter().map(|a| a.inverse().expect("validated")).collect();
        for w in &words {
            if !w.evaluate(module.action(), &inverses).is_identity() {
                return Err(FixtureError::ModuleRelator {
                    name,
                    label,
                    relator: w.to_string(),
                });
            }
        }
        let irr = module.is_irreducible().map_err(|source| FixtureError::Module {
            name: name.clone(),
            source,
        })?;
        if !irr.irreducible {
            return Err(FixtureError::ModuleReducible { name, label });
        }
        modules.push(module);
    }
    Ok(FixtureRecord {
        name,
        group,
        transitive,
        presentation,
        modules,
    })
}

/// Reads and verifies one fixture file.
pub fn load_fixture_file(path: &Path) -> Result<FixtureRecord, FixtureError> {
    let text = fs::read_to_string(path).map_err(|e| FixtureError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let source_name = path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
    verify_fixture(parse_fixture(&text, &source_name)?)
}

/// Loads `<dir>/<name>.fix`.
pub fn load_fixture(dir: &Path, name: &str) -> Result<FixtureRecord, FixtureError> {
    let path = dir.join(format!("{name}.{FIXTURE_EXTENSION}"));
    if !path.exists() {
        return Err(FixtureError::Unknown(name.to_string()));
    }
    load_fixture_file(&path)
}

/// Fixture directory: the explicit choice, else `AFFRANK3_FIXTURES`, else
/// the directory shipped with this crate.
pub fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(d) = explicit {
        return d.to_path_buf();
    }
    match std::env::var_os(FIXTURE_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => shipped_fixture_dir(),
    }
}

/// The fixture directory inside this crate's source tree.
pub fn shipped_fixture_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

/// Names of the fixture files in `dir`, sorted.
pub fn fixture_names(dir: &Path) -> Result<Vec<String>, FixtureError> {
    let entries = fs::read_dir(dir).map_err(|e| FixtureError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == FIXTURE_EXTENSION))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    names.sort();
    Ok(names)
}

/// Loads every fixture in `dir`, one result per file.
pub fn fixture_manifest(dir: &Path) -> Result<Vec<(String, Result<(), FixtureError>)>, FixtureError> {
    use rayon::prelude::*;
    let names = fixture_names(dir)?;
    Ok(names
        .into_par_iter()
        .map(|n| {
            let r = load_fixture(dir, &n).map(|_| ());
            (n, r)
        })
        .collect())
}

/// Loads fixtures on first request and keeps them.
#[derive(Debug)]
pub struct FixtureStore {
    dir: PathBuf,
    cache: Mutex<HashMap<String, Arc<std::sync::OnceLock<Result<Arc<FixtureRecord>, FixtureError>>>>>,
}

impl FixtureStore {
    pub fn new(dir: PathBuf) -> Self {
        FixtureStore {
            dir,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, name: &str) -> Result<Arc<FixtureRecord>, FixtureError> {
        let cell = {
            let mut cache = self.cache.lock().expect("fixture cache lock");
            cache.entry(name.to_string()).or_default().clone()
        };
        // loading happens outside the map lock so distinct fixtures load in
        // parallel; the cell serializes loads of the same name
        cell.get_or_init(|| load_fixture(&self.dir, name).map(Arc::new)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "\
# S3 acting on F_2^2
name s3
p 2
dim 2
order 6
transitive 1
gen 0 1 1 0
gen 0 1 1 1
rel a^2
rel b^3
rel (a*b)^2
module sign
gen 1
gen 1
";

    #[test]
    fn parse_and_verify() {
        let raw = parse_fixture(S3, "s3.fix").unwrap();
        assert_eq!(raw.name, "s3");
        assert_eq!(raw.generators.len(), 2);
        assert_eq!(raw.relators.len(), 3);
        assert_eq!(raw.modules.len(), 1);
        let rec = verify_fixture(raw).unwrap();
        assert_eq!(rec.order(), 6);
        assert!(rec.is_transitive());
        assert!(rec.presentation().is_some());
        assert_eq!(rec.module("sign").unwrap().dim(), 1);
        assert_eq!(rec.module("dual").unwrap().dim(), 2);
    }

    #[test]
    fn wrong_order_is_reported() {
        let bad = S3.replace("order 6", "order 12");
        let err = verify_fixture(parse_fixture(&bad, "s3.fix").unwrap()).unwrap_err();
        assert!(err.to_string().contains("order mismatch"), "{err}");
        assert!(!err.is_infrastructure());
    }

    #[test]
    fn corrupted_entry_is_an_order_mismatch() {
        // flipping two entries turns the first generator into the identity
        let bad = S3.replace("gen 0 1 1 0", "gen 1 0 0 1");
        let err = verify_fixture(parse_fixture(&bad, "s3.fix").unwrap()).unwrap_err();
        assert!(matches!(err, FixtureError::OrderMismatch { computed: 3, .. }), "{err}");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let bad = S3.replace("gen 0 1 1 0", "gen 0 1 1");
        let err = parse_fixture(&bad, "s3.fix").unwrap_err();
        assert!(err.is_infrastructure());
        assert!(err.to_string().starts_with("s3.fix:7:"), "{err}");
        let err = parse_fixture("name x\np 2\n", "x.fix").unwrap_err();
        assert_eq!(
            err,
            FixtureError::Missing {
                source_name: "x.fix".into(),
                field: "dim"
            }
        );
    }

    #[test]
    fn module_variants_are_checked() {
        let base = "name c\np 3\ndim 1\norder 2\ntransitive 1\ngen 2\nrel a^2\nmodule m\n";
        let rec = verify_fixture(parse_fixture(&format!("{base}gen 1\n"), "c.fix").unwrap()).unwrap();
        assert_eq!(rec.modules().len(), 1);
        let err = verify_fixture(parse_fixture(&format!("{base}gen 1\ngen 1\n"), "c.fix").unwrap()).unwrap_err();
        assert!(matches!(err, FixtureError::ModuleGeneratorCount { .. }));
        // a unipotent 2x2 block has order 3, so a^2 fails on it
        let err = verify_fixture(parse_fixture(&format!("{base}gen 1 1 0 1\n"), "c.fix").unwrap()).unwrap_err();
        assert!(matches!(err, FixtureError::ModuleRelator { .. }), "{err}");
    }
}
