//! Regenerates the shipped fixture files.
//!
//! Each group is constructed from a generating set with a known order
//! (transvections, derived subgroups, or a random search inside a larger
//! group), reduced to two generators, and given a presentation found by
//! adding power relators `w^|w|` of short words until coset enumeration
//! reaches the group order. The fixture loader re-verifies every claim, so
//! nothing here is trusted.
//!
//! Usage: `cargo run --release --example gen_fixtures -- [<output-dir> [<name>...]]`

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use affrank3::cohom::{verify_presentation, Letter, Presentation, Word, TRIVIAL_SUBGROUP_LIMIT};
use affrank3::gf::{FpMatrix, FpVector};
use affrank3::grp::{l27_subgroup_census, MatrixGroup};
use affrank3::module::FpModule;
use affrank3::scene::{general_linear_generators, small_examples, ParabolicScene};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDER_LIMIT: u64 = 1000;

fn order_of(m: &FpMatrix) -> u64 {
    m.order(ORDER_LIMIT).expect("element of a finite group")
}

fn transvection(p: u8, n: usize, i: usize, j: usize) -> FpMatrix {
    let mut t = FpMatrix::identity(p, n);
    t.set(i, j, 1);
    t
}

fn special_linear(p: u8, n: usize) -> MatrixGroup {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(transvection(p, n, i, j));
            }
        }
    }
    MatrixGroup::new(p, n, gens).unwrap()
}

/// Symplectic transvections `x -> x + B(x, v) v` for the form with Gram
/// matrix `[[0, I], [-I, 0]]`, over every nonzero `v`.
fn symplectic(p: u8, n: usize) -> MatrixGroup {
    let m = n / 2;
    let mut j = FpMatrix::zero(p, n, n);
    for i in 0..m {
        j.set(i, m + i, 1);
        j.set(m + i, i, p - 1);
    }
    let mut gens = Vec::new();
    for code in 1..(p as u64).pow(n as u32) {
        let v = FpVector::decode(p, n, code);
        // B(x, v) = x^T J v, so the map is I + v (J v)^T
        let jv = j.mul_vec(&v);
        let mut t = FpMatrix::identity(p, n);
        for r in 0..n {
            for c in 0..n {
                let add = (v.entries()[r] as u32 * jv.entries()[c] as u32) % p as u32;
                t.set(r, c, ((t.get(r, c) as u32 + add) % p as u32) as u8);
            }
        }
        gens.push(t);
    }
    MatrixGroup::new(p, n, gens).unwrap()
}

fn commutator(x: &FpMatrix, y: &FpMatrix) -> FpMatrix {
    let xi = x.inverse().unwrap();
    let yi = y.inverse().unwrap();
    &(&(&xi * &yi) * x) * y
}

/// Derived subgroup: commutators of random elements until the order reaches
/// `target`.
fn derived_subgroup(g: &MatrixGroup, target: u128, rng: &mut ChaCha8Rng) -> MatrixGroup {
    let mut gens = Vec::new();
    for _ in 0..200 {
        let x = g.bsgs().random_element(rng);
        let y = g.bsgs().random_element(rng);
        gens.push(commutator(&x, &y));
        let h = MatrixGroup::new(g.p(), g.dim(), gens.clone()).unwrap();
        if h.order() == target {
            return h;
        }
    }
    panic!("derived subgroup of order {target} not reached");
}

/// Random pair `(x, y)` of `g` generating a subgroup of order `target`, with
/// `x` of order `ox` and `y` of order `oy`.
fn find_pair(g: &MatrixGroup, ox: u64, oy: u64, target: u128, rng: &mut ChaCha8Rng) -> (FpMatrix, FpMatrix) {
    let pick = |rng: &mut ChaCha8Rng, want: u64| loop {
        let e = g.bsgs().random_element(rng);
        let o = order_of(&e);
        if o % want == 0 {
            let e = e.pow(o / want);
            if order_of(&e) == want {
                return e;
            }
        }
    };
    for _ in 0..200_000 {
        let x = pick(rng, ox);
        let y = pick(rng, oy);
        let h = MatrixGroup::new(g.p(), g.dim(), vec![x.clone(), y.clone()]).unwrap();
        if h.order() == target {
            return (x, y);
        }
    }
    panic!("no generating pair of orders ({ox}, {oy}) for order {target}");
}

/// Words `a^e1 b^f1 a^e2 b^f2 ...` with at most `max_len` letters and
/// exponents reduced modulo the generator orders (`|e| <= order / 2`), one
/// per class under cyclic rotation and inversion.
fn candidate_words(orders: &[u64], max_len: usize) -> Vec<Word> {
    let exps = |o: u64| -> Vec<i64> {
        let h = (o / 2) as i64;
        (-h..=h)
            .filter(|&e| e != 0 && !(o % 2 == 0 && e == -h))
            .collect()
    };
    let ea = exps(orders[0]);
    let eb = exps(orders[1]);
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    // (letters so far, length)
    let mut stack: Vec<Vec<Letter>> = vec![vec![]];
    while let Some(w) = stack.pop() {
        for &e in &ea {
            for &f in &eb {
                let add = (e.unsigned_abs() + f.unsigned_abs()) as usize;
                if w.len() + add > max_len {
                    continue;
                }
                let mut v = w.clone();
                v.extend(syllable(0, e));
                v.extend(syllable(1, f));
                let key = canonical(&v);
                if seen.insert(key.clone()) {
                    out.push(Word::from_letters(key));
                }
                stack.push(v);
            }
        }
    }
    out
}

fn syllable(gen: usize, e: i64) -> Vec<Letter> {
    let l = Letter { gen, positive: e > 0 };
    vec![l; e.unsigned_abs() as usize]
}

fn canonical(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for base in [w.to_vec(), inv] {
        for r in 0..n {
            let rot: Vec<Letter> = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn relator_text(w: &Word, k: u64) -> String {
    if k == 1 {
        w.to_string()
    } else if w.len() == 1 {
        format!("{w}^{k}")
    } else {
        format!("({w})^{k}")
    }
}

/// Adds power relators of short words until coset enumeration reaches the
/// group order, then drops relators that turn out redundant.
fn find_presentation(gens: &[FpMatrix], order: u128) -> Vec<String> {
    let invs: Vec<FpMatrix> = gens.iter().map(|g| g.inverse().unwrap()).collect();
    let orders: Vec<u64> = gens.iter().map(order_of).collect();
    // the enumeration subgroup mirrors the certification rule
    let big = order > TRIVIAL_SUBGROUP_LIMIT;
    let cyc = (0..gens.len()).max_by_key(|&i| (orders[i], std::cmp::Reverse(i))).unwrap();
    let target = if big { order / orders[cyc] as u128 } else { order } as usize;
    let subgroup: Vec<Word> = if big { vec![Word::generator(cyc)] } else { vec![] };
    let max_rows = if big { 4_000_000 } else { (order as usize * 30).max(10_000) };
    let index = |rels: &[String]| -> Option<usize> {
        let pres = Presentation::parse(gens.len(), &rels.iter().map(|s| s.as_str()).collect::<Vec<_>>()).unwrap();
        pres.coset_index(&subgroup, max_rows).ok()
    };

    let mut rels: Vec<String> = (0..gens.len())
        .map(|i| relator_text(&Word::generator(i), orders[i]))
        .collect();
    let mut cands: Vec<(usize, String)> = candidate_words(&orders, 14)
        .into_iter()
        .map(|w| {
            // involutions read better with positive letters
            let w = Word::from_letters(w.letters().iter().map(|&l| Letter {
                gen: l.gen,
                positive: l.positive || orders[l.gen] == 2,
            }));
            let k = order_of(&w.evaluate(gens, &invs));
            (w.len() * k as usize, relator_text(&w, k))
        })
        .collect();
    cands.sort();
    let mut found = false;
    for (_, r) in cands {
        if rels.contains(&r) {
            continue;
        }
        rels.push(r);
        if rels.len() < 3 {
            continue;
        }
        match index(&rels) {
            Some(i) if i == target => {
                found = true;
                break;
            }
            Some(i) if i < target => panic!("index {i} below {target} for relators {rels:?} on {gens:?}"),
            Some(i) => eprintln!("  {} relators: index {i}", rels.len()),
            None => eprintln!("  {} relators: overflow", rels.len()),
        }
    }
    assert!(found, "no presentation found");
    let mut i = rels.len();
    while i > 0 {
        i -= 1;
        if i == cyc && big {
            continue;
        }
        let mut fewer = rels.clone();
        fewer.remove(i);
        if index(&fewer) == Some(target) {
            rels = fewer;
        }
    }
    rels
}

/// A pair `(x, y)` satisfying the relators, generating the group, whose
/// module is not isomorphic to the natural one or its dual.
fn find_twist(g: &MatrixGroup, rels: &[String]) -> Option<(FpMatrix, FpMatrix)> {
    let pres = Presentation::parse(2, &rels.iter().map(|s| s.as_str()).collect::<Vec<_>>()).unwrap();
    let elements = g.enumerate_elements(100_000).unwrap();
    let gens = g.generators();
    let nat = FpModule::natural(g, "natural");
    let dual = nat.dual();
    let (oa, ob) = (order_of(&gens[0]), order_of(&gens[1]));
    let xs: Vec<&FpMatrix> = elements.iter().filter(|e| order_of(e) == oa).collect();
    let ys: Vec<&FpMatrix> = elements.iter().filter(|e| order_of(e) == ob).collect();
    for x in &xs {
        for y in &ys {
            let imgs = vec![(*x).clone(), (*y).clone()];
            let invs: Vec<FpMatrix> = imgs.iter().map(|m| m.inverse().unwrap()).collect();
            if !pres.relators().iter().all(|r| r.evaluate(&imgs, &invs).is_identity()) {
                continue;
            }
            let m = FpModule::new(g.p(), g.dim(), imgs.clone(), "twist").unwrap();
            if m.is_isomorphic(&nat).unwrap() || m.is_isomorphic(&dual).unwrap() {
                continue;
            }
            if MatrixGroup::new(g.p(), g.dim(), imgs.clone()).unwrap().order() == g.order() {
                return Some(((*x).clone(), (*y).clone()));
            }
        }
    }
    None
}

struct Fixture {
    name: &'static str,
    comment: &'static str,
    group: MatrixGroup,
    rels: Vec<String>,
    modules: Vec<(String, Vec<FpMatrix>)>,
}

fn matrix_line(m: &FpMatrix) -> String {
    let parts: Vec<String> = m.data().iter().map(|x| x.to_string()).collect();
    format!("gen {}", parts.join(" "))
}

fn write_fixture(dir: &Path, f: &Fixture) {
    let g = &f.group;
    let transitive = g.orbits().map(|o| o.count() == 2).unwrap_or(false);
    let mut s = String::new();
    writeln!(s, "# {}", f.comment).unwrap();
    writeln!(s, "name {}", f.name).unwrap();
    writeln!(s, "p {}", g.p()).unwrap();
    writeln!(s, "dim {}", g.dim()).unwrap();
    writeln!(s, "order {}", g.order()).unwrap();
    writeln!(s, "transitive {}", u8::from(transitive)).unwrap();
    for m in g.generators() {
        writeln!(s, "{}", matrix_line(m)).unwrap();
    }
    for r in &f.rels {
        writeln!(s, "rel {r}").unwrap();
    }
    for (label, gens) in &f.modules {
        writeln!(s, "module {label}").unwrap();
        for m in gens {
            writeln!(s, "{}", matrix_line(m)).unwrap();
        }
    }
    let path = dir.join(format!("{}.fix", f.name));
    std::fs::write(&path, s).unwrap();
    eprintln!("wrote {}", path.display());
}

fn two_generated(
    name: &'static str,
    comment: &'static str,
    ambient: &MatrixGroup,
    orders: (u64, u64),
    target: u128,
    rng: &mut ChaCha8Rng,
) -> Fixture {
    eprintln!("{name}");
    let (x, y) = find_pair(ambient, orders.0, orders.1, target, rng);
    let group = MatrixGroup::new(ambient.p(), ambient.dim(), vec![x, y]).unwrap();
    let rels = find_presentation(group.generators(), target);
    Fixture {
        name,
        comment,
        group,
        rels,
        modules: vec![],
    }
}

/// E7 Dynkin diagram with the end node of the long arm last, so that the
/// first six nodes span E6: chain 0-1-2-3-4-6 with node 5 on node 2.
const E7_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 6)];

/// Sp6(2) as W(E7) modulo its centre: symplectic transvections `t_v` with
/// `B(v_i, v_j) = 1` exactly along the edges of E7 satisfy the Coxeter
/// relations, and the central longest element is `c^9` for the Coxeter
/// element `c`.
fn sp6_2_coxeter() -> Fixture {
    eprintln!("sp6_2_natural");
    let n = 6;
    let m = n / 2;
    let form = |x: &FpVector, y: &FpVector| -> u8 {
        (0..m)
            .map(|i| x.entries()[i] * y.entries()[m + i] + x.entries()[m + i] * y.entries()[i])
            .sum::<u8>()
            % 2
    };
    let vectors: Vec<FpVector> = (1..64).map(|c| FpVector::decode(2, n, c)).collect();
    let adjacent = |i: usize, j: usize| E7_EDGES.contains(&(i.min(j), i.max(j)));
    fn extend(
        chosen: &mut Vec<usize>,
        vectors: &[FpVector],
        ok: &dyn Fn(&[usize], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == 7 {
            out.push(chosen.clone());
            return;
        }
        for v in 0..vectors.len() {
            if ok(chosen, v) {
                chosen.push(v);
                extend(chosen, vectors, ok, out);
                chosen.pop();
                if !out.is_empty() {
                    return;
                }
            }
        }
    }
    let ok = |chosen: &[usize], v: usize| {
        let k = chosen.len();
        !chosen.contains(&v)
            && chosen
                .iter()
                .enumerate()
                .all(|(i, &u)| (form(&vectors[u], &vectors[v]) == 1) == adjacent(i, k))
    };
    let mut found = Vec::new();
    extend(&mut Vec::new(), &vectors, &ok, &mut found);
    let chosen = &found[0];
    let gens: Vec<FpMatrix> = chosen
        .iter()
        .map(|&i| {
            let v = &vectors[i];
            let mut t = FpMatrix::identity(2, n);
            for r in 0..n {
                for c in 0..n {
                    // x -> x + B(x, v) v
                    let e = FpVector::unit(2, n, c);
                    let add = v.entries()[r] * form(&e, v);
                    t.set(r, c, (t.get(r, c) + add) % 2);
                }
            }
            t
        })
        .collect();
    let group = MatrixGroup::new(2, n, gens).unwrap();
    assert_eq!(group.order(), 1_451_520);
    let letters = |i: usize| ((b'a' + i as u8) as char).to_string();
    let mut rels: Vec<String> = (0..7).map(|i| format!("{}^2", letters(i))).collect();
    for i in 0..7 {
        for j in (i + 1)..7 {
            if adjacent(i, j) {
                rels.push(format!("({}*{})^3", letters(i), letters(j)));
            } else {
                rels.push(format!("[{},{}]", letters(i), letters(j)));
            }
        }
    }
    rels.push("(a*b*c*d*e*f*g)^9".to_string());
    let pres = Presentation::parse(7, &rels.iter().map(|s| s.as_str()).collect::<Vec<_>>()).unwrap();
    let cert = verify_presentation(&group, &pres).expect("Coxeter presentation certifies");
    eprintln!("  certified: {:?}", cert.certificate());
    Fixture {
        name: "sp6_2_natural",
        comment: "Sp6(2) on its natural module, generated by transvections satisfying the E7 Coxeter relations",
        group,
        rels,
        modules: vec![],
    }
}

/// Sp4(3) from transvections `t_v(x) = x + B(x, v) v` along a path:
/// `B(v_i, v_{i+1}) = 1` and all other pairs orthogonal. They have order 3,
/// braid along the path and commute otherwise, so they satisfy the
/// relations of the braid group on five strands with cubed generators; a
/// power of the product `abcd` removes the central factor of order 3.
fn sp4_3_braid() -> Fixture {
    eprintln!("sp4_3");
    let n = 4;
    let form = |x: &FpVector, y: &FpVector| -> u8 {
        let e = x.entries();
        let f = y.entries();
        ((e[0] * f[2] + e[1] * f[3] + 2 * e[2] * f[0] + 2 * e[3] * f[1]) % 3) as u8
    };
    let vectors: Vec<FpVector> = (1..81).map(|c| FpVector::decode(3, n, c)).collect();
    let mut chosen: Vec<usize> = Vec::new();
    fn search(chosen: &mut Vec<usize>, vectors: &[FpVector], form: &dyn Fn(&FpVector, &FpVector) -> u8) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        let k = chosen.len();
        for v in 0..vectors.len() {
            let fits = chosen.iter().enumerate().all(|(i, &u)| {
                let want = if i + 1 == k { 1 } else { 0 };
                form(&vectors[u], &vectors[v]) == want
            });
            if fits && !chosen.contains(&v) {
                chosen.push(v);
                if search(chosen, vectors, form) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    assert!(search(&mut chosen, &vectors, &form));
    let gens: Vec<FpMatrix> = chosen
        .iter()
        .map(|&i| {
            let v = &vectors[i];
            let mut t = FpMatrix::identity(3, n);
            for c in 0..n {
                let e = FpVector::unit(3, n, c);
                let b = form(&e, v);
                for r in 0..n {
                    t.set(r, c, (t.get(r, c) + b * v.entries()[r]) % 3);
                }
            }
            t
        })
        .collect();
    let group = MatrixGroup::new(3, n, gens.clone()).unwrap();
    assert_eq!(group.order(), 51840);
    let prod = gens.iter().skip(1).fold(gens[0].clone(), |acc, g| &acc * g);
    let k = order_of(&prod);
    let letters = |i: usize| ((b'a' + i as u8) as char).to_string();
    let mut rels: Vec<String> = (0..4).map(|i| format!("{}^3", letters(i))).collect();
    for i in 0..4 {
        for j in (i + 1)..4 {
            if j == i + 1 {
                let (x, y) = (letters(i), letters(j));
                rels.push(format!("{x}*{y}*{x}*{y}^-1*{x}^-1*{y}^-1"));
            } else {
                rels.push(format!("[{},{}]", letters(i), letters(j)));
            }
        }
    }
    rels.push(format!("(a*b*c*d)^{k}"));
    let pres = Presentation::parse(4, &rels.iter().map(|s| s.as_str()).collect::<Vec<_>>()).unwrap();
    let cert = verify_presentation(&group, &pres).expect("braid presentation certifies");
    eprintln!("  certified: {:?}", cert.certificate());
    Fixture {
        name: "sp4_3",
        comment: "Sp4(3) on its natural module, generated by transvections satisfying cubic braid relations",
        group,
        rels,
        modules: vec![],
    }
}

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")));
    std::fs::create_dir_all(&dir).unwrap();
    let only: Vec<String> = std::env::args().skip(2).collect();
    let wanted = |name: &str| only.is_empty() || only.iter().any(|o| o == name);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let gl3 = MatrixGroup::new(2, 3, general_linear_generators(2, 3)).unwrap();
    let gl4 = MatrixGroup::new(2, 4, general_linear_generators(2, 4)).unwrap();
    let sp42 = symplectic(2, 4);
    let sp62 = symplectic(2, 6);
    let mut out: Vec<Fixture> = Vec::new();

    // the lex-least pair with |a| = 2, |b| = 3, |ab| = 7, |[a,b]| = 4
    let (la, lb) = l27_subgroup_census(&gl3).unwrap()[0].generators.clone();
    let l27_rels: Vec<String> = ["a^2", "b^3", "(a*b)^7", "[a,b]^4"].map(String::from).to_vec();
    if wanted("gl3_2") {
        out.push(Fixture {
            name: "gl3_2",
            comment: "GL3(2) = SL3(2) = L2(7) on its natural module",
            group: MatrixGroup::new(2, 3, vec![la.clone(), lb.clone()]).unwrap(),
            rels: l27_rels.clone(),
            modules: vec![],
        });
    }
    if wanted("sl3_3") {
        let sl33 = special_linear(3, 3);
        out.push(two_generated("sl3_3", "SL3(3) on its natural module", &sl33, (2, 3), 5616, &mut rng));
    }
    if wanted("sp4_2") {
        let mut f = two_generated("sp4_2", "Sp4(2) = S6 on its natural module, with the module twisted by an outer automorphism", &sp42, (2, 5), 720, &mut rng);
        let (x, y) = find_twist(&f.group, &f.rels).expect("outer twist");
        f.modules.push(("twist".into(), vec![x, y]));
        out.push(f);
    }
    if wanted("s6") {
        out.push(two_generated("s6", "S6 = Sp4(2) on F_2^4, generated by an involution and a 6-element", &sp42, (2, 6), 720, &mut rng));
    }
    if wanted("a6_gl42") {
        let a6 = derived_subgroup(&sp42, 360, &mut rng);
        out.push(two_generated("a6_gl42", "A6 = Sp4(2)' on F_2^4", &a6, (2, 4), 360, &mut rng));
    }
    if wanted("sp4_3") {
        out.push(sp4_3_braid());
    }
    if wanted("sp6_2_natural") {
        out.push(sp6_2_coxeter());
    }
    if wanted("g2_2") || wanted("psu3_3_gl62") || wanted("psu3_3_2") {
        eprintln!("searching Sp6(2) for G2(2)");
        let (x, y) = find_pair(&sp62, 2, 12, 12096, &mut rng);
        let g22 = MatrixGroup::new(2, 6, vec![x, y]).unwrap();
        if wanted("g2_2") {
            out.push(two_generated("g2_2", "G2(2) = PSU3(3):2 on F_2^6", &g22, (2, 12), 12096, &mut rng));
        }
        if wanted("psu3_3_2") {
            out.push(two_generated("psu3_3_2", "PSU3(3):2 = G2(2) on F_2^6, generated by an involution and an 8-element", &g22, (2, 8), 12096, &mut rng));
        }
        if wanted("psu3_3_gl62") {
            let u33 = derived_subgroup(&g22, 6048, &mut rng);
            out.push(two_generated("psu3_3_gl62", "PSU3(3) = G2(2)' on F_2^6", &u33, (2, 6), 6048, &mut rng));
        }
    }
    if wanted("a7_gl42") {
        out.push(two_generated("a7_gl42", "A7 inside GL4(2) = A8", &gl4, (3, 5), 2520, &mut rng));
    }
    if wanted("sl2_5_gl2_11") {
        let sl211 = special_linear(11, 2);
        out.push(two_generated("sl2_5_gl2_11", "SL2(5) inside SL2(11), regular on nonzero vectors", &sl211, (4, 3), 120, &mut rng));
    }
    if wanted("gl4_2") {
        out.push(two_generated("gl4_2", "GL4(2) = A8", &gl4, (2, 7), 20160, &mut rng));
    }
    let ex = small_examples();
    for (name, comment, g) in [
        ("g1_gl42", "G1: three orbits 1, 1, 14 on F_2^4", ex.g1),
        ("g2_gl42", "G2: three orbits 1, 7, 8 on F_2^4", ex.g2),
    ] {
        if wanted(name) {
            eprintln!("{name}");
            let rels = find_presentation(g.generators(), 168);
            out.push(Fixture {
                name,
                comment,
                group: g,
                rels,
                modules: vec![],
            });
        }
    }
    if wanted("l27_gl42") {
        let scene = ParabolicScene::new(2, 4, 1).unwrap();
        let one = FpMatrix::identity(2, 1);
        let gens = vec![scene.levi_embed(&one, &la), scene.levi_embed(&one, &lb)];
        out.push(Fixture {
            name: "l27_gl42",
            comment: "L2(7) as the Levi subgroup GL1(2) x GL3(2) of a point stabilizer in GL4(2)",
            group: MatrixGroup::new(2, 4, gens).unwrap(),
            rels: l27_rels,
            modules: vec![],
        });
    }
    for f in &out {
        write_fixture(&dir, f);
    }
}
