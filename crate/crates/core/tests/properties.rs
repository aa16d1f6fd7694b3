//! Randomized invariants of the field arithmetic, group algorithms and
//! cohomology machinery.

use affrank3::cohom::{todd_coxeter, Presentation, Word, DEFAULT_MAX_ROWS};
use affrank3::fixtures::{load_fixture, shipped_fixture_dir, FixtureRecord};
use affrank3::gf::{FpMatrix, FpVector};
use affrank3::grp::{MatrixGroup, Subspace};
use affrank3::module::{exhaustive_reducibility_witness, meataxe, MeataxeOutcome};
use affrank3::scene::{y_scene, Side};
use proptest::prelude::*;
use std::sync::OnceLock;

fn matrix(p: u8, n: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p, n * n).prop_map(move |d| FpMatrix::new(p, n, n, d).unwrap())
}

fn invertible(p: u8, n: usize) -> impl Strategy<Value = FpMatrix> {
    matrix(p, n).prop_filter("singular", |m| m.inverse().is_some())
}

/// `(p, n)` with `p^n` small enough for orbit and enumeration work.
fn small_space() -> impl Strategy<Value = (u8, usize)> {
    prop::sample::select(vec![(2u8, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
}

/// One to three invertible matrices over a small space.
fn small_group() -> impl Strategy<Value = (u8, usize, Vec<FpMatrix>)> {
    small_space().prop_flat_map(|(p, n)| {
        prop::collection::vec(invertible(p, n), 1..=3).prop_map(move |gens| (p, n, gens))
    })
}

fn word(generators: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..=max_len).prop_map(|letters| {
        Word::from_letters(
            letters
                .into_iter()
                .map(|(gen, positive)| affrank3::cohom::Letter { gen, positive }),
        )
    })
}

fn gl3_2() -> &'static FixtureRecord {
    static REC: OnceLock<FixtureRecord> = OnceLock::new();
    REC.get_or_init(|| load_fixture(&shipped_fixture_dir(), "gl3_2").unwrap())
}

fn sp4_2() -> &'static FixtureRecord {
    static REC: OnceLock<FixtureRecord> = OnceLock::new();
    REC.get_or_init(|| load_fixture(&shipped_fixture_dir(), "sp4_2").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_of_product_reverses(
        (a, b) in prop::sample::select(vec![2u8, 3, 5, 7])
            .prop_flat_map(|p| (invertible(p, 3), invertible(p, 3)))
    ) {
        let ai = a.inverse().unwrap();
        prop_assert!((&a * &ai).is_identity());
        let ab = &a * &b;
        prop_assert_eq!(ab.inverse().unwrap(), &b.inverse().unwrap() * &ai);
        prop_assert!((&a.inverse_transpose().unwrap() * &a.transpose()).is_identity());
    }

    #[test]
    fn kronecker_mixed_product(
        (a, b, c, d) in prop::sample::select(vec![2u8, 3, 5])
            .prop_flat_map(|p| (matrix(p, 2), matrix(p, 3), matrix(p, 2), matrix(p, 3)))
    ) {
        let lhs = &a.kronecker(&b).unwrap() * &c.kronecker(&d).unwrap();
        let rhs = (&a * &c).kronecker(&(&b * &d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_plus_nullity(
        (p, m) in prop::sample::select(vec![2u8, 3, 5])
            .prop_flat_map(|p| (Just(p), matrix(p, 4)))
    ) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        let x = FpVector::from_ints(p, &[1, 2, 3, 4]);
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn vector_codes_roundtrip((p, n) in small_space(), seed in any::<u64>()) {
        let total = (p as u64).pow(n as u32);
        let code = seed % total;
        prop_assert_eq!(FpVector::decode(p, n, code).encode(), code);
    }

    #[test]
    fn subspace_reduction_is_a_projection_modulo_w(
        (p, vs, v) in small_space().prop_flat_map(|(p, n)| (
            Just(p),
            prop::collection::vec(prop::collection::vec(0..p, n), 0..4),
            prop::collection::vec(0..p, n),
        ))
    ) {
        let n = v.len();
        let gens: Vec<FpVector> = vs.into_iter().map(|e| FpVector::new(p, e).unwrap()).collect();
        let count = gens.len();
        let w = Subspace::span(p, n, gens.clone());
        prop_assert!(w.dim() <= count);
        for g in &gens {
            prop_assert!(w.contains(g));
        }
        let v = FpVector::new(p, v).unwrap();
        let r = w.reduce(&v);
        prop_assert_eq!(w.reduce(&r), r.clone());
        prop_assert!(w.contains(&v.sub(&r)));
        prop_assert_eq!(w.element_codes().len() as u64, (p as u64).pow(w.dim() as u32));
    }

    #[test]
    fn word_display_parses_back(w in word(3, 16)) {
        prop_assert_eq!(Word::parse(&w.to_string(), 3).unwrap(), w);
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(u in word(2, 10), v in word(2, 10)) {
        let rec = gl3_2();
        let images = rec.group().generators().to_vec();
        let inverses: Vec<FpMatrix> = images.iter().map(|g| g.inverse().unwrap()).collect();
        let uv = u.mul(&v).evaluate(&images, &inverses);
        prop_assert_eq!(uv, &u.evaluate(&images, &inverses) * &v.evaluate(&images, &inverses));
        prop_assert!((&u.evaluate(&images, &inverses) * &u.inverse().evaluate(&images, &inverses)).is_identity());
    }

    #[test]
    fn orbits_partition_the_space((p, n, gens) in small_group()) {
        let g = MatrixGroup::new(p, n, gens).unwrap();
        let orbits = g.orbits().unwrap();
        let sizes = orbits.size_multiset();
        prop_assert_eq!(sizes.iter().sum::<usize>() as u64, (p as u64).pow(n as u32));
        // the zero vector is always its own orbit
        prop_assert_eq!(sizes[0], 1);
        for s in &sizes {
            prop_assert_eq!(g.order() % *s as u128, 0);
        }
    }

    #[test]
    fn conjugate_groups_have_equal_orbit_structure(
        (p, n, gens, x) in small_group().prop_flat_map(|(p, n, gens)| {
            (Just(p), Just(n), Just(gens), invertible(p, n))
        })
    ) {
        let g = MatrixGroup::new(p, n, gens).unwrap();
        let h = g.conjugate(&x);
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.orbits().unwrap().size_multiset(), g.orbits().unwrap().size_multiset());
    }

    #[test]
    fn bsgs_order_matches_enumeration((p, n, gens) in small_group()) {
        let g = MatrixGroup::new(p, n, gens.clone()).unwrap();
        let elements = g.enumerate_elements(100_000).unwrap();
        prop_assert_eq!(elements.len() as u128, g.order());
        for e in elements.iter().take(50) {
            prop_assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn meataxe_agrees_with_exhaustive_search(
        (p, n, gens) in small_group(),
        seed in any::<u64>(),
    ) {
        let oracle = exhaustive_reducibility_witness(p, n, &gens);
        match meataxe(p, n, &gens, seed, 64) {
            MeataxeOutcome::Irreducible => prop_assert!(oracle.is_none()),
            MeataxeOutcome::Reducible(s) => {
                prop_assert!(s.dim() > 0 && s.dim() < n);
                for g in &gens {
                    prop_assert!(s.is_invariant_under(g));
                }
                prop_assert!(oracle.is_some());
            }
            // repeated eigenvalues everywhere leave no isolated factor
            MeataxeOutcome::Inconclusive => {}
        }
        if let Some(s) = oracle {
            prop_assert!(s.dim() > 0 && s.dim() < n);
            for g in &gens {
                prop_assert!(s.is_invariant_under(g));
            }
        }
    }

    #[test]
    fn dihedral_coset_enumeration(m in 2usize..40) {
        let pres = Presentation::parse(2, &["a^2", "b^2", &format!("(a*b)^{m}")]).unwrap();
        prop_assert_eq!(todd_coxeter(2, pres.relators(), &[], DEFAULT_MAX_ROWS).unwrap(), 2 * m);
        let rotation = Word::parse("a*b", 2).unwrap();
        prop_assert_eq!(todd_coxeter(2, pres.relators(), &[rotation], DEFAULT_MAX_ROWS).unwrap(), 2);
        let reflection = Word::parse("a", 2).unwrap();
        prop_assert_eq!(todd_coxeter(2, pres.relators(), &[reflection], DEFAULT_MAX_ROWS).unwrap(), m);
    }

    #[test]
    fn abelian_coset_enumeration(m in 1usize..20, k in 1usize..20) {
        let pres = Presentation::parse(2, &[&format!("a^{m}"), &format!("b^{k}"), "[a,b]"]).unwrap();
        prop_assert_eq!(todd_coxeter(2, pres.relators(), &[], DEFAULT_MAX_ROWS).unwrap(), m * k);
    }
}

/// Modules of `GL3(2)` and `Sp4(2)` with nonzero and zero `H^1`.
fn cohomology_module(choice: usize) -> (&'static FixtureRecord, affrank3::module::FpModule) {
    match choice {
        0 => (gl3_2(), gl3_2().natural_module()),
        1 => (gl3_2(), gl3_2().natural_module().dual()),
        2 => {
            let n = gl3_2().natural_module();
            (gl3_2(), n.tensor(&n.dual()).unwrap())
        }
        3 => (sp4_2(), sp4_2().natural_module()),
        _ => (sp4_2(), sp4_2().module("twist").unwrap()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_cocycles_satisfy_the_cocycle_identity(
        choice in 0usize..5,
        coeffs in prop::collection::vec(0u8..2, 16),
        u in word(2, 12),
        v in word(2, 12),
    ) {
        let (rec, module) = cohomology_module(choice);
        let cs = affrank3::cohom::cocycle_space(rec.presentation().unwrap(), &module).unwrap();
        prop_assert_eq!(cs.z1_dim(), cs.b1_dim() + cs.h1_dim());
        prop_assert!(cs.z1().contains_subspace(cs.b1()));
        let mut z = FpVector::zero(2, cs.z1().ambient_dim());
        for (c, b) in coeffs.iter().zip(cs.z1().basis()) {
            if *c != 0 {
                z = z.add(b);
            }
        }
        let images = module.action().to_vec();
        let inverses: Vec<FpMatrix> = images.iter().map(|g| g.inverse().unwrap()).collect();
        let lhs = cs.evaluate(&z, &u.mul(&v));
        let rhs = cs.evaluate(&z, &u).add(&u.evaluate(&images, &inverses).mul_vec(&cs.evaluate(&z, &v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cohomologous_cocycles_give_conjugate_complements(
        choice in 0usize..5,
        coeffs in prop::collection::vec(0u8..2, 16),
        shift in prop::collection::vec(0u8..2, 16),
    ) {
        let (rec, module) = cohomology_module(choice);
        let scene = y_scene(&module, Side::OneSpace, "prop").unwrap();
        let cs = scene.cocycles(rec.presentation().unwrap()).unwrap();
        let mut z = FpVector::zero(2, cs.z1().ambient_dim());
        for (c, b) in coeffs.iter().zip(cs.z1().basis()) {
            if *c != 0 {
                z = z.add(b);
            }
        }
        let mut shifted = z.clone();
        for (c, b) in shift.iter().zip(cs.b1().basis()) {
            if *c != 0 {
                shifted = shifted.add(b);
            }
        }
        let nf = cs.normal_form(&z);
        prop_assert_eq!(cs.normal_form(&shifted), nf.clone());
        prop_assert_eq!(cs.normal_form(&nf), nf.clone());
        prop_assert!(cs.class_representatives().contains(&nf));

        let ambient = scene.scene();
        let build = |c: &FpVector| {
            let gens: Vec<FpMatrix> = scene
                .section()
                .iter()
                .zip(cs.split(c))
                .map(|(g, v)| &ambient.unipotent(&v) * g)
                .collect();
            MatrixGroup::new(2, ambient.n(), gens).unwrap()
        };
        let a = build(&z);
        let b = build(&shifted);
        prop_assert_eq!(a.order(), rec.order());
        prop_assert_eq!(b.order(), rec.order());
        prop_assert_eq!(a.orbits().unwrap().size_multiset(), b.orbits().unwrap().size_multiset());
    }
}
