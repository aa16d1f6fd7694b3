//! The three-orbit classification at `(n, p) = (4, 2)`, recomputed from
//! scratch: every `O_2`-trivial subgroup of each Levi subgroup of `GL4(2)`,
//! every complement of the unipotent radical above it, and an orbit count
//! for each.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use super::checks::census_pattern;
use super::names::*;
use super::{Harness, HarnessError, Outcome};
use crate::cohom::brute_force_complements;
use crate::gf::{FpMatrix, FpVector};
use crate::grp::{l27_subgroup_census, p_core, subgroup_conjugator, ElementTable, MatrixGroup, ENUMERATION_BOUND};
use crate::scene::{ParabolicScene, SceneGroup};

pub(super) fn expected() -> Value {
    json!({
        "three_orbit_conjugate_to": ["G1", "G2"],
        "unmatched_three_orbit_groups": 0,
        "criterion_disagreements": 0,
        "census_three_orbit_conjugate_to": ["G1", "G2"],
    })
}

/// Which of `G1`, `G2` the group is conjugate to in `GL4(2)`.
fn match_known(
    gl4: &MatrixGroup,
    x: &MatrixGroup,
    g1: &MatrixGroup,
    g2: &MatrixGroup,
) -> Result<Option<&'static str>, HarnessError> {
    if subgroup_conjugator(gl4, x, g1)?.is_some() {
        return Ok(Some("G1"));
    }
    if subgroup_conjugator(gl4, x, g2)?.is_some() {
        return Ok(Some("G2"));
    }
    Ok(None)
}

pub(super) fn compute(h: &Harness) -> Result<Outcome, HarnessError> {
    let gl4 = h.fixture(GL4_2)?;
    let g1 = h.fixture(G1)?;
    let g2 = h.fixture(G2)?;
    let gl4 = gl4.group();

    let mut parabolics = Map::new();
    let mut matched: BTreeSet<&str> = BTreeSet::new();
    let mut unmatched = 0usize;
    let mut criterion_disagreements = 0usize;
    for d in 1..4 {
        let scene = ParabolicScene::new(2, 4, d)?;
        let levi = MatrixGroup::new(2, 4, scene.levi_generators())?;
        let table = ElementTable::new(&levi, ENUMERATION_BOUND)?;
        let subgroups = table.all_subgroups();
        let levi_gens: Vec<u32> = levi
            .generators()
            .iter()
            .map(|g| table.index_of(g).expect("generator is an element"))
            .collect();
        let reps = table.conjugacy_representatives(&subgroups, &levi_gens);
        let outside = FpVector::unit(2, 4, d);
        let q_elements = scene.q_elements();

        let mut o2_trivial = 0usize;
        let mut complements = 0usize;
        let mut three_orbit = 0usize;
        for r in reps {
            let section: Vec<FpMatrix> = table
                .generators_of(&subgroups[r])
                .iter()
                .map(|&e| table.element(e).clone())
                .collect();
            let l0 = MatrixGroup::new(2, 4, section.clone())?;
            if p_core(&l0, 2, ENUMERATION_BOUND)?.order() != 1 {
                continue;
            }
            o2_trivial += 1;
            let sg = SceneGroup::new(scene.clone(), section.clone(), format!("d={d}"))?;
            let search = brute_force_complements(&sg.full_group(), &section, &q_elements, l0.order(), ENUMERATION_BOUND)?;
            complements += search.classes;
            for x in &search.representatives {
                let has_three = x.orbits()?.count() == 3;
                if x.has_three_orbits_via_criterion(scene.w(), &outside)? != has_three {
                    criterion_disagreements += 1;
                }
                if !has_three {
                    continue;
                }
                three_orbit += 1;
                match match_known(gl4, x, g1.group(), g2.group())? {
                    Some(name) => {
                        matched.insert(name);
                    }
                    None => unmatched += 1,
                }
            }
        }
        parabolics.insert(
            format!("d={d}"),
            json!({
                "levi_order": levi.order() as u64,
                "levi_subgroup_classes": table.conjugacy_representatives(&subgroups, &levi_gens).len(),
                "o2_trivial_classes": o2_trivial,
                "complement_classes": complements,
                "three_orbit_complements": three_orbit,
            }),
        );
    }

    // the census side: which L2(7) classes have three orbits
    let census = l27_subgroup_census(gl4)?;
    let mut census_matched: BTreeSet<&str> = BTreeSet::new();
    let mut census_detail = Vec::new();
    for c in &census {
        let orbits = c.representative.orbits()?.size_multiset();
        let known = if orbits.len() == 3 {
            let m = match_known(gl4, &c.representative, g1.group(), g2.group())?;
            match m {
                Some(name) => {
                    census_matched.insert(name);
                }
                None => unmatched += 1,
            }
            m
        } else {
            None
        };
        census_detail.push(json!({
            "pattern": census_pattern(c.fixes_point, c.fixes_hyperplane),
            "orbit_sizes": orbits,
            "conjugate_to": known,
        }));
    }

    Ok(Outcome::new(json!({
        "parabolics": parabolics,
        "three_orbit_conjugate_to": matched.into_iter().collect::<Vec<_>>(),
        "unmatched_three_orbit_groups": unmatched,
        "criterion_disagreements": criterion_disagreements,
        "census": census_detail,
        "census_three_orbit_conjugate_to": census_matched.into_iter().collect::<Vec<_>>(),
    })))
}
