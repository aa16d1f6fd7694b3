//! Scratch fixture directories for tests that need modified fixtures.

use std::fs;
use std::path::{Path, PathBuf};

use affrank3::fixtures::shipped_fixture_dir;

/// The generator line of `G1` that [`corrupted_copy`] rewrites, and its
/// replacement. The new matrix generates a group of order 1344.
pub const G1_GENERATOR: &str = "gen 1 0 0 0 0 0 0 1 0 1 0 0 0 0 1 0";
pub const G1_CORRUPTED: &str = "gen 1 1 0 0 0 0 0 1 0 1 0 0 0 0 1 0";

/// A fresh empty directory under the system temp dir, unique per tag and
/// process.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affrank3-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Copies of the shipped fixtures in which one generator of `G1` is changed.
pub fn corrupted_copy(tag: &str) -> PathBuf {
    let dir = scratch_dir(tag);
    copy_fixtures(&shipped_fixture_dir(), &dir);
    let g1 = dir.join("g1_gl42.fix");
    let text = fs::read_to_string(&g1).unwrap();
    assert!(text.contains(G1_GENERATOR), "G1 fixture changed; update the corruption");
    fs::write(&g1, text.replacen(G1_GENERATOR, G1_CORRUPTED, 1)).unwrap();
    dir
}

pub fn copy_fixtures(from: &Path, to: &Path) {
    for entry in fs::read_dir(from).unwrap() {
        let path = entry.unwrap().path();
        if path.is_file() {
            fs::copy(&path, to.join(path.file_name().unwrap())).unwrap();
        }
    }
}
