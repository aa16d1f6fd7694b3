//! Subgroup computations on fully enumerated groups: Sylow subgroups and
//! p-cores, conjugators between subgroups, and the census of subgroups
//! isomorphic to `L_2(7)`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{Bsgs, GroupError, MatrixGroup};
use crate::gf::FpMatrix;

/// Default enumeration bound for the search routines in this module.
pub const ENUMERATION_BOUND: u128 = 100_000;

/// An enumerated group with an element index, for closure computations by
/// table lookup.
pub struct ElementTable {
    elements: Vec<FpMatrix>,
    index: HashMap<FpMatrix, u32>,
}

impl ElementTable {
    pub fn new(group: &MatrixGroup, bound: u128) -> Result<Self, GroupError> {
        let elements = group.enumerate_elements(bound)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(ElementTable { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &FpMatrix {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn index_of(&self, g: &FpMatrix) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        let m = &self.elements[i as usize] * &self.elements[j as usize];
        self.index[&m]
    }

    /// `x^-1 g x` as an index.
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        let xm = &self.elements[x as usize];
        let xi = xm.inverse().expect("group elements are invertible");
        let m = &(&xi * &self.elements[g as usize]) * xm;
        self.index[&m]
    }

    /// Subgroup generated by the given elements, as a sorted index list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.bounded_closure(gens, usize::MAX)
            .expect("unbounded closure always completes")
    }

    /// Like [`closure`](Self::closure), but gives up with `None` as soon as
    /// the subgroup has more than `limit` elements.
    pub fn bounded_closure(&self, gens: &[u32], limit: usize) -> Option<Vec<u32>> {
        let id = self.index[&FpMatrix::identity(
            self.elements[0].p(),
            self.elements[0].rows(),
        )];
        let mut seen: HashSet<u32> = HashSet::new();
        seen.insert(id);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for &g in gens {
                let y = self.mul(out[k], g);
                if seen.insert(y) {
                    out.push(y);
                    if out.len() > limit {
                        return None;
                    }
                }
            }
            k += 1;
        }
        out.sort_unstable();
        Some(out)
    }

    /// A short generating set of the subgroup `sub` (sorted indices):
    /// elements generating large cyclic subgroups are tried first and kept
    /// while they enlarge the closure.
    pub fn generators_of(&self, sub: &[u32]) -> Vec<u32> {
        let mut candidates: Vec<(usize, u32)> = sub.iter().map(|&e| (self.closure(&[e]).len(), e)).collect();
        candidates.sort_by_key(|&(len, e)| (std::cmp::Reverse(len), e));
        let mut gens: Vec<u32> = Vec::new();
        let mut closure = self.closure(&[]);
        for (_, e) in candidates {
            if closure.len() == sub.len() {
                break;
            }
            if closure.binary_search(&e).is_err() {
                gens.push(e);
                closure = self.closure(&gens);
            }
        }
        gens
    }

    /// Every subgroup, as sorted index lists ordered by size then content:
    /// cyclic subgroups joined pairwise until nothing new appears.
    pub fn all_subgroups(&self) -> Vec<Vec<u32>> {
        let mut found: HashSet<Vec<u32>> = HashSet::new();
        let mut list: Vec<Vec<u32>> = Vec::new();
        for e in 0..self.len() as u32 {
            let c = self.closure(&[e]);
            if found.insert(c.clone()) {
                list.push(c);
            }
        }
        let cyclic = list.clone();
        // joining with cyclic subgroups suffices: every subgroup is a chain
        // of joins of cyclic ones
        let mut k = 0;
        while k < list.len() {
            let h = list[k].clone();
            let h_gens = self.generators_of(&h);
            for c in &cyclic {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.extend(self.generators_of(c));
                let j = self.closure(&gens);
                if found.insert(j.clone()) {
                    list.push(j);
                }
            }
            k += 1;
        }
        list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        list
    }

    /// Indices into `subs` of one representative per orbit under
    /// conjugation by the elements `by` (which should generate the
    /// conjugating group). `subs` must be closed under that conjugation.
    pub fn conjugacy_representatives(&self, subs: &[Vec<u32>], by: &[u32]) -> Vec<usize> {
        let pos: HashMap<&Vec<u32>, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut parent: Vec<usize> = (0..subs.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..subs.len() {
            for &x in by {
                let mut img: Vec<u32> = subs[i].iter().map(|&e| self.conjugate(e, x)).collect();
                img.sort_unstable();
                let j = *pos.get(&img).expect("subgroup list closed under conjugation");
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..subs.len()).filter(|&i| find(&mut parent, i) == i).collect()
    }
}

fn p_part(mut n: u128, p: u128) -> u128 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Matrix group generated by a set of elements, choosing generators greedily
/// so that each one enlarges the group.
fn group_from_elements(p: u8, dim: usize, elems: &[&FpMatrix]) -> MatrixGroup {
    let mut bsgs = Bsgs::new(p, dim, &[]);
    let mut gens = Vec::new();
    for g in elems {
        if !g.is_identity() && bsgs.insert(g) {
            gens.push((*g).clone());
        }
    }
    MatrixGroup::with_bsgs(p, dim, gens, bsgs)
}

/// A Sylow `p`-subgroup, by growing a `p`-subgroup with `p`-elements from its
/// normalizer until its order is the `p`-part of `|G|`. Returned as a sorted
/// index list into `table`.
fn sylow_indices(table: &ElementTable, order: u128, p: u8) -> Vec<u32> {
    let target = p_part(order, p as u128) as usize;
    let elem_orders: Vec<u64> = table
        .elements()
        .iter()
        .map(|g| g.order(u64::MAX).expect("finite group element"))
        .collect();
    let mut gens: Vec<u32> = Vec::new();
    let mut current = table.closure(&gens);
    while current.len() < target {
        let members: HashSet<u32> = current.iter().copied().collect();
        let next = (0..table.len() as u32).find(|&x| {
            !members.contains(&x)
                && is_p_power(elem_orders[x as usize], p as u64)
                && gens.iter().all(|&s| members.contains(&table.conjugate(s, x)))
        });
        let x = next.expect("a proper p-subgroup has p-elements in its normalizer");
        gens.push(x);
        current = table.closure(&gens);
    }
    current
}

/// A Sylow `p`-subgroup of `G`.
pub fn sylow_subgroup(g: &MatrixGroup, p: u8, bound: u128) -> Result<MatrixGroup, GroupError> {
    let table = ElementTable::new(g, bound)?;
    let s = sylow_indices(&table, g.order(), p);
    let elems: Vec<&FpMatrix> = s.iter().map(|&i| table.element(i)).collect();
    Ok(group_from_elements(g.p(), g.dim(), &elems))
}

/// `O_p(G)`: the intersection of the conjugates of a Sylow `p`-subgroup,
/// obtained by intersecting with conjugates under generators until stable.
pub fn p_core(g: &MatrixGroup, p: u8, bound: u128) -> Result<MatrixGroup, GroupError> {
    let table = ElementTable::new(g, bound)?;
    let mut core: HashSet<u32> = sylow_indices(&table, g.order(), p).into_iter().collect();
    let gen_idx: Vec<u32> = g
        .generators()
        .iter()
        .map(|x| table.index_of(x).expect("generator is an element"))
        .collect();
    loop {
        let before = core.len();
        for &x in &gen_idx {
            let xi = table
                .index_of(&table.element(x).inverse().unwrap())
                .unwrap();
            // C <- C meet x^-1 C x: keep c when x c x^-1 lies in C
            let snapshot = core.clone();
            core.retain(|&c| snapshot.contains(&table.mul(table.mul(x, c), xi)));
        }
        if core.len() == before {
            break;
        }
    }
    let mut sorted: Vec<u32> = core.into_iter().collect();
    sorted.sort_unstable();
    let elems: Vec<&FpMatrix> = sorted.iter().map(|&i| table.element(i)).collect();
    Ok(group_from_elements(g.p(), g.dim(), &elems))
}

/// Some `x` in `ambient` with `x^-1 H x = K`, or `None`. Scans the
/// enumerated ambient group, testing each candidate on the generators of `H`
/// cheapest-first.
pub fn subgroup_conjugator(
    ambient: &MatrixGroup,
    h: &MatrixGroup,
    k: &MatrixGroup,
) -> Result<Option<FpMatrix>, GroupError> {
    if h.order() != k.order() {
        return Ok(None);
    }
    let table = ElementTable::new(ambient, ENUMERATION_BOUND)?;
    // conjugation preserves element order and fixed-space dimension, so a
    // generator of H with no counterpart in K rules out every candidate
    let k_elems: HashSet<FpMatrix> = k.enumerate_elements(ENUMERATION_BOUND)?.into_iter().collect();
    let k_invariants: HashSet<(u64, usize)> = k_elems
        .iter()
        .map(|x| (x.order(u64::MAX).unwrap(), x.fixed_space_dim()))
        .collect();
    for gen in h.generators() {
        let inv = (gen.order(u64::MAX).unwrap(), gen.fixed_space_dim());
        if !k_invariants.contains(&inv) {
            return Ok(None);
        }
    }
    for x in table.elements() {
        let xi = x.inverse().unwrap();
        if h
            .generators()
            .iter()
            .all(|g| k_elems.contains(&(&(&xi * g) * x)))
        {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

/// One conjugacy class of `L_2(7)` subgroups in a census.
#[derive(Clone, Debug, Serialize)]
pub struct L27Class {
    /// Standard generators `(a, b)` of the representative: `|a| = 2`,
    /// `|b| = 3`, `|ab| = 7`, `|[a,b]| = 4`, lexicographically minimal over
    /// the class.
    #[serde(skip)]
    pub generators: (FpMatrix, FpMatrix),
    #[serde(skip)]
    pub representative: MatrixGroup,
    pub class_size: usize,
    /// Whether the representative leaves some 1-dimensional subspace invariant.
    pub fixes_point: bool,
    /// Whether the representative leaves some hyperplane invariant.
    pub fixes_hyperplane: bool,
}

fn has_invariant_line(group: &MatrixGroup) -> Result<bool, GroupError> {
    Ok(group
        .minimal_invariant_subspaces()?
        .iter()
        .any(|s| s.dim() == 1))
}

fn dual_group(group: &MatrixGroup) -> MatrixGroup {
    let gens = group
        .generators()
        .iter()
        .map(|g| g.inverse_transpose().unwrap())
        .collect();
    MatrixGroup::new(group.p(), group.dim(), gens).unwrap()
}

/// Every subgroup of `ambient` isomorphic to `L_2(7)`, grouped into
/// conjugacy classes under `ambient`.
///
/// Any pair with `|a| = 2`, `|b| = 3`, `|ab| = 7`, `|[a,b]| = 4` generates a
/// nontrivial quotient of `<a, b | a^2, b^3, (ab)^7, [a,b]^4>`, which is the
/// simple group `L_2(7)`, and every `L_2(7)` contains such a pair. Scanning
/// all pairs therefore finds every such subgroup; each is also checked to
/// have order 168. Pairs are scanned in lexicographic order of their matrix
/// entries, so the first pair generating a subgroup is its minimal one.
pub fn l27_subgroup_census(ambient: &MatrixGroup) -> Result<Vec<L27Class>, GroupError> {
    let table = ElementTable::new(ambient, ENUMERATION_BOUND)?;
    let n = table.len() as u32;
    let orders: Vec<u64> = table
        .elements()
        .iter()
        .map(|g| g.order(u64::MAX).unwrap())
        .collect();
    let mut involutions: Vec<u32> = (0..n).filter(|&i| orders[i as usize] == 2).collect();
    let mut thirds: Vec<u32> = (0..n).filter(|&i| orders[i as usize] == 3).collect();
    let lex = |i: &u32| table.element(*i).data().to_vec();
    involutions.sort_by_key(lex);
    thirds.sort_by_key(lex);
    let inverse: Vec<u32> = table
        .elements()
        .iter()
        .map(|g| table.index_of(&g.inverse().unwrap()).unwrap())
        .collect();

    let mut subgroups: Vec<Vec<u32>> = Vec::new();
    let mut first_pair: Vec<(u32, u32)> = Vec::new();
    let mut member_of: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    for &a in &involutions {
        for &b in &thirds {
            let ab = table.mul(a, b);
            if orders[ab as usize] != 7 {
                continue;
            }
            let comm = table.mul(table.mul(inverse[a as usize], inverse[b as usize]), ab);
            if orders[comm as usize] != 4 {
                continue;
            }
            let known = member_of[a as usize]
                .iter()
                .any(|s| member_of[b as usize].contains(s));
            if known {
                continue;
            }
            let sub = table.closure(&[a, b]);
            if sub.len() != 168 {
                return Err(GroupError::Precondition(format!(
                    "standard pair generated a group of order {}",
                    sub.len()
                )));
            }
            let id = subgroups.len() as u32;
            for &x in &sub {
                member_of[x as usize].push(id);
            }
            subgroups.push(sub);
            first_pair.push((a, b));
        }
    }

    // conjugacy classes: union-find under conjugation by ambient generators
    let key_of: HashMap<Vec<u32>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let gen_idx: Vec<u32> = ambient
        .generators()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    let mut parent: Vec<usize> = (0..subgroups.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, s) in subgroups.iter().enumerate() {
        for &x in &gen_idx {
            let mut img: Vec<u32> = s.iter().map(|&e| table.conjugate(e, x)).collect();
            img.sort_unstable();
            let j = key_of[&img];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..subgroups.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        let best = *members
            .iter()
            .min_by_key(|&&i| {
                let (a, b) = first_pair[i];
                (lex(&a), lex(&b))
            })
            .unwrap();
        let (a, b) = first_pair[best];
        let (am, bm) = (table.element(a).clone(), table.element(b).clone());
        let rep = MatrixGroup::new(ambient.p(), ambient.dim(), vec![am.clone(), bm.clone()])?;
        let fixes_point = has_invariant_line(&rep)?;
        let fixes_hyperplane = has_invariant_line(&dual_group(&rep))?;
        out.push(L27Class {
            generators: (am, bm),
            representative: rep,
            class_size: members.len(),
            fixes_point,
            fixes_hyperplane,
        });
    }
    out.sort_by(|x, y| {
        (x.generators.0.data(), x.generators.1.data())
            .cmp(&(y.generators.0.data(), y.generators.1.data()))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl3_2() -> MatrixGroup {
        MatrixGroup::new(
            2,
            3,
            vec![
                FpMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
                FpMatrix::from_rows(2, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
                FpMatrix::from_rows(2, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn subgroup_lattice_of_gl3_2() {
        let g = gl3_2();
        let t = ElementTable::new(&g, ENUMERATION_BOUND).unwrap();
        let subs = t.all_subgroups();
        // the subgroup lattice of L_2(7): 179 subgroups in 15 classes
        assert_eq!(subs.len(), 179);
        let by: Vec<u32> = g.generators().iter().map(|x| t.index_of(x).unwrap()).collect();
        assert_eq!(t.conjugacy_representatives(&subs, &by).len(), 15);
        for s in &subs {
            assert_eq!(t.closure(&t.generators_of(s)), *s);
        }
    }

    #[test]
    fn bounded_closure_stops_at_the_limit() {
        let g = gl3_2();
        let t = ElementTable::new(&g, ENUMERATION_BOUND).unwrap();
        let gens: Vec<u32> = g.generators().iter().map(|x| t.index_of(x).unwrap()).collect();
        assert!(t.bounded_closure(&gens, 167).is_none());
        assert_eq!(t.bounded_closure(&gens, 168).unwrap().len(), 168);
        assert_eq!(t.bounded_closure(&gens[..1], 2).unwrap().len(), 2);
    }

    #[test]
    fn p_core_and_sylow() {
        let g = gl3_2();
        assert_eq!(sylow_subgroup(&g, 2, ENUMERATION_BOUND).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&g, 7, ENUMERATION_BOUND).unwrap().order(), 7);
        assert_eq!(p_core(&g, 2, ENUMERATION_BOUND).unwrap().order(), 1);
    }
}
