//! The cohomology property suite: coprime vanishing, a Kunneth instance,
//! `B^1` inside `Z^1`, the cocycle identity on random words, complements
//! against exhaustive search, and BSGS orders against enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::names::*;
use super::{Harness, HarnessError, Outcome};
use crate::cohom::{
    brute_force_complements, cocycle_space, complement_orbit_census, verify_presentation, CertifiedPresentation,
    CocycleSpace, Presentation, Word,
};
use crate::fixtures::fixture_names;
use crate::gf::FpMatrix;
use crate::grp::{MatrixGroup, ENUMERATION_BOUND};
use crate::module::FpModule;
use crate::scene::{m2_scene, y_scene, SceneGroup, Side};

/// Random word pairs per cocycle space in the identity fuzzing.
pub const FUZZ_PAIRS: usize = 200;
const FUZZ_MAX_LEN: usize = 12;
/// Scenes up to this order are compared with exhaustive search.
pub const BRUTE_FORCE_LIMIT: u128 = 20_000;
/// Random cyclic groups of coprime order generated for the vanishing test.
const COPRIME_SHAPES: [(u8, usize); 7] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)];

pub(super) fn expected() -> Value {
    json!({
        "coprime_instances": { "at_least": 5 },
        "coprime_nonzero_h1": [],
        "kunneth_instances": 3,
        "kunneth_mismatches": [],
        "b1_outside_z1": 0,
        "cocycle_identity_failures": 0,
        "brute_force_scenes": { "at_least": 10 },
        "brute_force_mismatches": [],
        "bsgs_fixtures": { "at_least": 12 },
        "bsgs_mismatches": [],
    })
}

/// Every cocycle space built by the suite, for the `B^1` and fuzzing checks.
struct Spaces {
    spaces: Vec<(String, CocycleSpace)>,
}

impl Spaces {
    fn push(&mut self, name: impl Into<String>, cs: CocycleSpace) -> usize {
        let h1 = cs.h1_dim();
        self.spaces.push((name.into(), cs));
        h1
    }
}

pub(super) fn compute(h: &Harness) -> Result<Outcome, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0c1);
    let mut spaces = Spaces { spaces: Vec::new() };

    let coprime = coprime_instances(h, &mut rng)?;
    let mut coprime_detail = Vec::new();
    let mut coprime_nonzero = Vec::new();
    for (name, cert, module) in &coprime {
        let h1 = spaces.push(name.clone(), cocycle_space(cert, module)?);
        if h1 != 0 {
            coprime_nonzero.push(name.clone());
        }
        coprime_detail.push(json!({ "instance": name, "order": cert.order() as u64, "h1_dim": h1 }));
    }

    let (kunneth_detail, kunneth_mismatches) = kunneth(h, &mut spaces)?;
    let (brute_detail, brute_mismatches) = brute_force_oracle(h, &mut spaces)?;

    let b1_outside_z1: usize = spaces
        .spaces
        .iter()
        .map(|(_, cs)| cs.b1().basis().iter().filter(|b| !cs.z1().contains(b)).count())
        .sum();
    let fuzz_failures: usize = spaces
        .spaces
        .iter()
        .map(|(_, cs)| cs.cocycle_identity_failures(&mut rng, FUZZ_PAIRS, FUZZ_MAX_LEN))
        .sum();

    let (bsgs_count, bsgs_mismatches) = bsgs_against_enumeration(h)?;

    Ok(Outcome::new(json!({
        "coprime_instances": coprime.len(),
        "coprime_nonzero_h1": coprime_nonzero,
        "coprime": coprime_detail,
        "kunneth_instances": kunneth_detail.len(),
        "kunneth_mismatches": kunneth_mismatches,
        "kunneth": kunneth_detail,
        "spaces_checked": spaces.spaces.len(),
        "b1_outside_z1": b1_outside_z1,
        "fuzz_pairs_per_cocycle": FUZZ_PAIRS,
        "cocycle_identity_failures": fuzz_failures,
        "brute_force_scenes": brute_detail.len(),
        "brute_force_mismatches": brute_mismatches,
        "brute_force": brute_detail,
        "bsgs_fixtures": bsgs_count,
        "bsgs_mismatches": bsgs_mismatches,
    })))
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

fn random_invertible<R: Rng>(p: u8, n: usize, rng: &mut R) -> FpMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        let m = FpMatrix::new(p, n, n, data).expect("entries below p");
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A cyclic group of order prime to `p` inside `GL_n(p)`: the `p'`-part of a
/// random invertible matrix, presented as `<a | a^k>`.
fn random_coprime_cyclic<R: Rng>(p: u8, n: usize, rng: &mut R) -> Result<CertifiedPresentation, HarnessError> {
    loop {
        let g = random_invertible(p, n, rng);
        let order = g.order(u64::MAX).expect("finite order");
        let pp = p_part(order, p as u64);
        let k = order / pp;
        if k == 1 {
            continue;
        }
        let group = MatrixGroup::new(p, n, vec![g.pow(pp)])?;
        let pres = Presentation::new(1, vec![Word::generator(0).pow(k as i64)]);
        return Ok(verify_presentation(&group, &pres)?);
    }
}

type Instance = (String, CertifiedPresentation, FpModule);

fn coprime_instances<R: Rng>(h: &Harness, rng: &mut R) -> Result<Vec<Instance>, HarnessError> {
    let mut out = Vec::new();
    for (p, n) in COPRIME_SHAPES {
        let cert = random_coprime_cyclic(p, n, rng)?;
        let natural = FpModule::natural(cert.group(), "natural");
        let name = format!("Z{} on F_{}^{}", cert.order(), p, n);
        out.push((format!("{name} (natural)"), cert.clone(), natural.clone()));
        let adjoint = natural.tensor(&natural.dual())?;
        out.push((format!("{name} (natural x dual)"), cert, adjoint));
    }
    let sl25 = h.fixture(SL2_5)?;
    let cert = sl25.presentation().ok_or_else(|| HarnessError::MissingPresentation(SL2_5.into()))?;
    let natural = sl25.natural_module();
    out.push(("SL2(5) on F_11^2 (natural)".into(), cert.clone(), natural.clone()));
    out.push((
        "SL2(5) on F_11^2 (natural x dual)".into(),
        cert.clone(),
        natural.tensor(&natural.dual())?,
    ));
    Ok(out)
}

/// `H^1(A x B, W (x) U) = H^1(A, W) (x) H^0(B, U)` when `H^0(A, W) = 0`,
/// with `A = GL3(2)` on its natural module and `B` of order 2.
fn kunneth(h: &Harness, spaces: &mut Spaces) -> Result<(Vec<Value>, Vec<String>), HarnessError> {
    let gl3 = h.fixture(GL3_2)?;
    let a_cert = gl3.presentation().ok_or_else(|| HarnessError::MissingPresentation(GL3_2.into()))?;
    let w = gl3.natural_module();
    if w.fixed_space().dim() != 0 {
        return Err(HarnessError::Scene(crate::scene::SceneError::Precondition(
            "H^0(A, W) must vanish".into(),
        )));
    }
    let h1_a = spaces.push("GL3(2) on F_2^3", cocycle_space(a_cert, &w)?);

    // A x B inside GL5(2) as block diagonal matrices, presented by the
    // relators of A, c^2, and c commuting with a and b
    let i2 = FpMatrix::identity(2, 2);
    let i3 = FpMatrix::identity(2, 3);
    let swap_free = FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]);
    let mut gens: Vec<FpMatrix> = w.action().iter().map(|a| FpMatrix::block_diagonal(a, &i2)).collect();
    gens.push(FpMatrix::block_diagonal(&i3, &swap_free));
    let product = MatrixGroup::new(2, 5, gens)?;
    let mut relators: Vec<Word> = a_cert.presentation().relators().to_vec();
    for r in ["c^2", "[a,c]", "[b,c]"] {
        relators.push(Word::parse(r, 3).map_err(crate::cohom::PresentationError::from)?);
    }
    let cert = verify_presentation(&product, &Presentation::new(3, relators))?;

    let w_ext = FpModule::new(2, 3, vec![w.action()[0].clone(), w.action()[1].clone(), i3.clone()], "W")?;
    let b_modules: [(&str, FpModule); 3] = [
        (
            "unipotent plane",
            FpModule::new(2, 2, vec![i2.clone(), i2.clone(), swap_free.clone()], "U")?,
        ),
        ("trivial plane", FpModule::trivial(2, 2, 3)),
        ("trivial line", FpModule::trivial(2, 1, 3)),
    ];
    let mut detail = Vec::new();
    let mut mismatches = Vec::new();
    for (name, u) in b_modules {
        let h0_b = FpModule::new(2, u.dim(), vec![u.action()[2].clone()], "U|B")?
            .fixed_space()
            .dim();
        let h1 = spaces.push(format!("A x B on W (x) {name}"), cocycle_space(&cert, &w_ext.tensor(&u)?)?);
        if h1 != h1_a * h0_b {
            mismatches.push(name.to_string());
        }
        detail.push(json!({
            "U": name,
            "h1_product": h1,
            "h1_a_times_h0_b": h1_a * h0_b,
        }));
    }
    Ok((detail, mismatches))
}

/// Scenes small enough for exhaustive complement search.
fn brute_force_scenes(h: &Harness) -> Result<Vec<(SceneGroup, CertifiedPresentation)>, HarnessError> {
    let mut out = Vec::new();
    for name in [GL3_2, A6, S6, SP4_2, SL2_5] {
        let rec = h.fixture(name)?;
        let cert = rec.presentation().ok_or_else(|| HarnessError::MissingPresentation(name.into()))?;
        let mut modules = vec![rec.natural_module()];
        if name == GL3_2 {
            modules.push(rec.natural_module().dual().with_label("dual"));
        }
        modules.extend(rec.modules().iter().cloned());
        for m in modules {
            for (side, tag) in [(Side::OneSpace, "one-space"), (Side::Hyperplane, "hyperplane")] {
                let scene = y_scene(&m, side, format!("{name} {} {tag}", m.label()))?;
                out.push((scene, cert.clone()));
            }
        }
    }
    // GL2(2) = S3 on F_2^2 in the diagonal scenes
    let gl22 = MatrixGroup::new(
        2,
        2,
        vec![
            FpMatrix::from_rows(2, &[&[0, 1], &[1, 0]]),
            FpMatrix::from_rows(2, &[&[0, 1], &[1, 1]]),
        ],
    )?;
    let cert = verify_presentation(&gl22, &Presentation::parse(2, &["a^2", "b^3", "(a*b)^2"])?)?;
    let natural = FpModule::natural(&gl22, "natural");
    let dual = natural.dual().with_label("dual");
    for (w, u) in [(&natural, &natural), (&natural, &dual), (&dual, &natural)] {
        let scene = m2_scene(w, u, format!("GL2(2) {} + {}", w.label(), u.label()))?;
        out.push((scene, cert.clone()));
    }
    Ok(out)
}

fn brute_force_oracle(h: &Harness, spaces: &mut Spaces) -> Result<(Vec<Value>, Vec<String>), HarnessError> {
    let mut detail = Vec::new();
    let mut mismatches = Vec::new();
    for (scene, cert) in brute_force_scenes(h)? {
        let full = scene.full_group();
        if full.order() > BRUTE_FORCE_LIMIT {
            continue;
        }
        let cs = scene.cocycles(&cert)?;
        let comps = scene.complements(&cs)?;
        let groups: Vec<MatrixGroup> = comps.into_iter().map(|c| c.group).collect();
        let section_order = scene.section_group().order();
        let brute = brute_force_complements(
            &full,
            scene.section(),
            &scene.scene().q_elements(),
            section_order,
            BRUTE_FORCE_LIMIT,
        )?;
        let mut from_cocycles = complement_orbit_census(&groups)?.orbit_sizes;
        let mut from_search = complement_orbit_census(&brute.representatives)?.orbit_sizes;
        from_cocycles.sort();
        from_search.sort();
        let agree = groups.len() == brute.classes && from_cocycles == from_search;
        if !agree {
            mismatches.push(scene.label().to_string());
        }
        detail.push(json!({
            "scene": scene.label(),
            "order": full.order() as u64,
            "h1_dim": cs.h1_dim(),
            "cocycle_classes": groups.len(),
            "search_classes": brute.classes,
            "search_subgroups": brute.subgroups,
        }));
        spaces.push(scene.label().to_string(), cs);
    }
    Ok((detail, mismatches))
}

/// Orders from Schreier-Sims against plain enumeration on every fixture
/// small enough to enumerate.
fn bsgs_against_enumeration(h: &Harness) -> Result<(usize, Vec<String>), HarnessError> {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for name in fixture_names(h.fixtures().dir())? {
        let rec = h.fixture(&name)?;
        if rec.order() > ENUMERATION_BOUND {
            continue;
        }
        let listed = rec.group().enumerate_elements(ENUMERATION_BOUND)?.len() as u128;
        checked += 1;
        if listed != rec.order() {
            mismatches.push(name);
        }
    }
    Ok((checked, mismatches))
}
