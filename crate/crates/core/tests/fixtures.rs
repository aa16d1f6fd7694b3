//! Loading, verification and falsification of fixture files.

mod common;

use std::fs;

use affrank3::cohom::Certificate;
use affrank3::fixtures::{
    fixture_manifest, fixture_names, load_fixture, load_fixture_file, parse_fixture, shipped_fixture_dir,
    verify_fixture, FixtureError,
};

#[test]
fn every_shipped_fixture_verifies() {
    let manifest = fixture_manifest(&shipped_fixture_dir()).unwrap();
    assert!(manifest.len() >= 12, "only {} fixtures shipped", manifest.len());
    for (name, status) in &manifest {
        assert!(status.is_ok(), "{name}: {:?}", status);
    }
}

#[test]
fn shipped_fixtures_have_the_recorded_orders() {
    let dir = shipped_fixture_dir();
    let expect: &[(&str, u128, bool)] = &[
        ("g1_gl42", 168, false),
        ("g2_gl42", 168, false),
        ("gl3_2", 168, true),
        ("gl4_2", 20160, true),
        ("a6_gl42", 360, true),
        ("a7_gl42", 2520, true),
        ("sl3_3", 5616, true),
        ("sp4_2", 720, true),
        ("sp4_3", 51840, true),
        ("sp6_2_natural", 1451520, true),
        ("g2_2", 12096, true),
        ("psu3_3_gl62", 6048, true),
        ("sl2_5_gl2_11", 120, true),
    ];
    for &(name, order, transitive) in expect {
        let rec = load_fixture(&dir, name).unwrap();
        assert_eq!(rec.order(), order, "{name}");
        assert_eq!(rec.is_transitive(), transitive, "{name}");
        assert_eq!(rec.group().order(), order, "{name}");
    }
}

#[test]
fn large_presentations_are_certified_through_a_subgroup() {
    let dir = shipped_fixture_dir();
    let sp62 = load_fixture(&dir, "sp6_2_natural").unwrap();
    match sp62.presentation().unwrap().certificate() {
        Certificate::PrefixSubgroup {
            subgroup_order, index, ..
        } => assert_eq!(*subgroup_order * *index as u128, 1451520),
        other => panic!("unexpected certificate {other:?}"),
    }
    let gl32 = load_fixture(&dir, "gl3_2").unwrap();
    assert!(matches!(
        gl32.presentation().unwrap().certificate(),
        Certificate::TrivialSubgroup { index: 168 }
    ));
}

#[test]
fn changed_generator_is_an_order_mismatch() {
    let dir = common::corrupted_copy("fixtures-mismatch");
    let err = load_fixture(&dir, "g1_gl42").unwrap_err();
    assert!(
        matches!(err, FixtureError::OrderMismatch { expected: 168, computed: 1344, .. }),
        "{err}"
    );
    assert!(!err.is_infrastructure());
    let manifest = fixture_manifest(&dir).unwrap();
    let failing: Vec<&str> = manifest
        .iter()
        .filter(|(_, s)| s.is_err())
        .map(|(n, _)| n.as_str())
        .collect();
    assert_eq!(failing, ["g1_gl42"]);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn false_transitivity_claim_is_rejected() {
    let path = shipped_fixture_dir().join("g1_gl42.fix");
    let text = fs::read_to_string(path).unwrap().replace("transitive 0", "transitive 1");
    let err = verify_fixture(parse_fixture(&text, "edited").unwrap()).unwrap_err();
    assert!(matches!(err, FixtureError::TransitivityMismatch { .. }), "{err}");
}

#[test]
fn dropped_relator_is_rejected() {
    let path = shipped_fixture_dir().join("gl3_2.fix");
    let text = fs::read_to_string(path).unwrap().replace("rel (a*b)^7\n", "");
    let err = verify_fixture(parse_fixture(&text, "edited").unwrap()).unwrap_err();
    assert!(matches!(err, FixtureError::Presentation { .. }), "{err}");
}

#[test]
fn malformed_and_missing_files_are_infrastructure_errors() {
    let err = parse_fixture("name x\np 2\ndim two\n", "bad").unwrap_err();
    assert!(matches!(err, FixtureError::Parse { line: 3, .. }), "{err}");
    assert!(err.is_infrastructure());

    let err = parse_fixture("name x\np 2\n", "short").unwrap_err();
    assert!(err.is_infrastructure(), "{err}");

    let dir = common::scratch_dir("fixtures-missing");
    let err = load_fixture(&dir, "g1_gl42").unwrap_err();
    assert!(err.is_infrastructure(), "{err}");
    let err = load_fixture_file(&dir.join("nowhere.fix")).unwrap_err();
    assert!(err.is_infrastructure(), "{err}");
    assert!(fixture_names(&dir).unwrap().is_empty());
    fs::remove_dir_all(dir).unwrap();
}
