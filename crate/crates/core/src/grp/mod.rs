//! Matrix groups over prime fields: order and membership through a BSGS,
//! element enumeration, orbits on `F_p^n`, coset stabilizers, the rank-3
//! coset criterion, p-cores and small-group subgroup searches.

mod bsgs;
mod orbit;
mod subgroups;
mod subspace;

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf::{FpMatrix, FpVector, GfError};

pub use bsgs::Bsgs;
pub(crate) use orbit::CodeAction;
pub use orbit::OrbitPartition;
pub use subgroups::{
    l27_subgroup_census, p_core, subgroup_conjugator, sylow_subgroup, ElementTable, L27Class,
    ENUMERATION_BOUND,
};
pub use subspace::Subspace;

/// Largest domain (`p^n`) for which orbits are computed with dense arrays.
pub const MAX_DOMAIN: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {index} has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadGenerator {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    TooLarge { order: u128, bound: u128 },
    #[error("domain p^n = {0} is too large for orbit computations")]
    DomainTooLarge(u64),
    #[error("subspace is not invariant under the group")]
    NotInvariant,
    #[error("vector lies in the subspace")]
    VectorInSubspace,
    #[error("{0}")]
    Precondition(String),
}

/// A subgroup of `GL_n(p)` given by generators. The BSGS is built on first
/// use and cached.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    p: u8,
    dim: usize,
    gens: Vec<FpMatrix>,
    bsgs: OnceLock<Bsgs>,
}

impl MatrixGroup {
    pub fn new(p: u8, dim: usize, gens: Vec<FpMatrix>) -> Result<Self, GroupError> {
        crate::gf::check_prime(p as u32)?;
        for (i, g) in gens.iter().enumerate() {
            if g.p() != p {
                return Err(GfError::ModulusMismatch(g.p(), p).into());
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::BadGenerator {
                    index: i,
                    rows: g.rows(),
                    cols: g.cols(),
                    dim,
                });
            }
            if g.inverse().is_none() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        Ok(MatrixGroup {
            p,
            dim,
            gens,
            bsgs: OnceLock::new(),
        })
    }

    pub(crate) fn with_bsgs(p: u8, dim: usize, gens: Vec<FpMatrix>, bsgs: Bsgs) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(bsgs);
        MatrixGroup {
            p,
            dim,
            gens,
            bsgs: cell,
        }
    }

    pub fn trivial(p: u8, dim: usize) -> Self {
        MatrixGroup {
            p,
            dim,
            gens: Vec::new(),
            bsgs: OnceLock::new(),
        }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.gens
    }

    pub fn identity(&self) -> FpMatrix {
        FpMatrix::identity(self.p, self.dim)
    }

    pub fn domain_size(&self) -> u64 {
        (self.p as u64).pow(self.dim as u32)
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::new(self.p, self.dim, &self.gens))
    }

    /// Builds the BSGS (if needed) and returns the group order.
    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    fn check_element(&self, g: &FpMatrix) -> Result<(), GroupError> {
        if g.p() != self.p {
            return Err(GfError::ModulusMismatch(g.p(), self.p).into());
        }
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(GfError::DimensionMismatch(format!(
                "{}x{} element for a degree-{} group",
                g.rows(),
                g.cols(),
                self.dim
            ))
            .into());
        }
        Ok(())
    }

    pub fn contains(&self, g: &FpMatrix) -> Result<bool, GroupError> {
        self.check_element(g)?;
        Ok(self.bsgs().contains(g))
    }

    /// Every element exactly once, by closure under right multiplication by
    /// generators.
    pub fn enumerate_elements(&self, bound: u128) -> Result<Vec<FpMatrix>, GroupError> {
        let order = self.order();
        if order > bound {
            return Err(GroupError::TooLarge { order, bound });
        }
        let id = self.identity();
        let mut seen: HashSet<FpMatrix> = HashSet::with_capacity(order as usize);
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for g in &self.gens {
                let y = &out[k] * g;
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    out.push(y);
                }
            }
            k += 1;
        }
        Ok(out)
    }

    pub fn orbits(&self) -> Result<OrbitPartition, GroupError> {
        let d = self.domain_size();
        if d > MAX_DOMAIN {
            return Err(GroupError::DomainTooLarge(d));
        }
        Ok(OrbitPartition::compute(self.p, self.dim, &self.gens))
    }

    pub fn is_invariant(&self, w: &Subspace) -> bool {
        self.gens.iter().all(|g| w.is_invariant_under(g))
    }

    /// Conjugate group `x^-1 G x`.
    pub fn conjugate(&self, x: &FpMatrix) -> MatrixGroup {
        let xi = x.inverse().expect("conjugating element must be invertible");
        let gens = self.gens.iter().map(|g| &(&xi * g) * x).collect();
        MatrixGroup::new(self.p, self.dim, gens).expect("conjugates stay invertible")
    }

    /// Smallest invariant subspace containing the seeds.
    pub fn spin(&self, seeds: &[FpVector]) -> Subspace {
        spin_subspace(self.p, self.dim, &self.gens, seeds)
    }

    /// Setwise stabilizer of the coset `v + W`, via orbit–stabilizer on the
    /// induced action on `V/W`.
    pub fn setwise_coset_stabilizer(
        &self,
        w: &Subspace,
        v: &FpVector,
    ) -> Result<MatrixGroup, GroupError> {
        if !self.is_invariant(w) {
            return Err(GroupError::NotInvariant);
        }
        let (stab, _) = self.coset_orbit_stabilizer(w, v);
        Ok(stab)
    }

    /// Orbit of `v + W` in `V/W` (as canonical coset codes) and its
    /// stabilizer. Assumes `W` is invariant.
    pub fn coset_orbit_stabilizer(&self, w: &Subspace, v: &FpVector) -> (MatrixGroup, Vec<u64>) {
        let start = w.reduce(v);
        let mut pos: HashMap<u64, usize> = HashMap::new();
        let mut reps: Vec<FpVector> = vec![start.clone()];
        let mut trans: Vec<FpMatrix> = vec![self.identity()];
        pos.insert(start.encode(), 0);
        let mut k = 0;
        while k < reps.len() {
            for g in &self.gens {
                let img = w.reduce(&g.mul_vec(&reps[k]));
                let code = img.encode();
                if !pos.contains_key(&code) {
                    pos.insert(code, reps.len());
                    trans.push(g * &trans[k]);
                    reps.push(img);
                }
            }
            k += 1;
        }
        let mut bsgs = Bsgs::new(self.p, self.dim, &[]);
        let mut gens = Vec::new();
        let trans_inv: Vec<FpMatrix> = trans.iter().map(|t| t.inverse().unwrap()).collect();
        for (k, rep) in reps.iter().enumerate() {
            for g in &self.gens {
                let img = w.reduce(&g.mul_vec(rep));
                let j = pos[&img.encode()];
                let h = &(&trans_inv[j] * g) * &trans[k];
                if !h.is_identity() && bsgs.insert(&h) {
                    gens.push(h);
                }
            }
        }
        let codes = reps.iter().map(|r| r.encode()).collect();
        (MatrixGroup::with_bsgs(self.p, self.dim, gens, bsgs), codes)
    }

    /// Whether the stabilizer of the coset `v + W` is transitive on it. With
    /// `G` transitive on the nonzero vectors of `W` and of `V/W`, this holds
    /// exactly when `G` has three orbits on `V`.
    pub fn rank3_criterion(&self, w: &Subspace, v: &FpVector) -> Result<bool, GroupError> {
        if !self.is_invariant(w) {
            return Err(GroupError::NotInvariant);
        }
        if w.contains(v) {
            return Err(GroupError::VectorInSubspace);
        }
        let stab = self.setwise_coset_stabilizer(w, v)?;
        let actions: Vec<CodeAction> = stab.gens.iter().map(CodeAction::new).collect();
        let mut seen = HashSet::new();
        let mut stack = vec![v.encode()];
        seen.insert(v.encode());
        while let Some(x) = stack.pop() {
            for a in &actions {
                let y = a.apply(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let coset_size = (self.p as usize).pow(w.dim() as u32);
        Ok(seen.len() == coset_size)
    }

    /// Transitive on `W \ {0}` and on `(V/W) \ {0}`, and the coset criterion
    /// holds: exactly the three orbits `{0}`, `W \ {0}`, `V \ W`.
    pub fn has_three_orbits_via_criterion(
        &self,
        w: &Subspace,
        v: &FpVector,
    ) -> Result<bool, GroupError> {
        if !self.is_invariant(w) {
            return Err(GroupError::NotInvariant);
        }
        let wd = w.dim();
        let pw = (self.p as usize).pow(wd as u32);
        if wd > 0 {
            let w0 = w.basis()[0].clone();
            let orbit = self.vector_orbit(&w0);
            if orbit.len() != pw - 1 {
                return Ok(false);
            }
        }
        let (_, cosets) = self.coset_orbit_stabilizer(w, v);
        let quotient_points = (self.p as usize).pow((self.dim - wd) as u32);
        if cosets.len() != quotient_points - 1 {
            return Ok(false);
        }
        self.rank3_criterion(w, v)
    }

    pub fn vector_orbit(&self, v: &FpVector) -> Vec<u64> {
        let actions: Vec<CodeAction> = self.gens.iter().map(CodeAction::new).collect();
        let mut seen = HashSet::new();
        let mut out = vec![v.encode()];
        seen.insert(v.encode());
        let mut k = 0;
        while k < out.len() {
            for a in &actions {
                let y = a.apply(out[k]);
                if seen.insert(y) {
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }

    /// Inclusion-minimal nonzero invariant subspaces: spin every nonzero
    /// vector, deduplicate, keep the minimal spins.
    pub fn minimal_invariant_subspaces(&self) -> Result<Vec<Subspace>, GroupError> {
        let d = self.domain_size();
        if d > MAX_DOMAIN {
            return Err(GroupError::DomainTooLarge(d));
        }
        let mut found: Vec<Subspace> = Vec::new();
        let mut seen: HashSet<Subspace> = HashSet::new();
        let mut covered = vec![false; d as usize];
        for code in 1..d {
            if covered[code as usize] {
                continue;
            }
            let v = FpVector::decode(self.p, self.dim, code);
            let s = self.spin(&[v]);
            if s.dim() == 1 || s.dim() == self.dim {
                // a 1-dimensional spin of v is the same for its multiples
                if s.dim() == 1 {
                    for c in s.element_codes() {
                        covered[c as usize] = true;
                    }
                }
            }
            if seen.insert(s.clone()) {
                found.push(s);
            }
        }
        let minimal: Vec<Subspace> = found
            .iter()
            .filter(|s| {
                !found
                    .iter()
                    .any(|t| t.dim() < s.dim() && s.contains_subspace(t))
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort();
        Ok(minimal)
    }
}

/// Closure of the seeds' span under the matrices.
pub fn spin_subspace(p: u8, dim: usize, gens: &[FpMatrix], seeds: &[FpVector]) -> Subspace {
    let mut space = Subspace::zero(p, dim);
    let mut queue: Vec<FpVector> = Vec::new();
    for s in seeds {
        if !space.contains(s) {
            space = space.sum(&Subspace::span(p, dim, vec![s.clone()]));
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul_vec(&x);
            if !space.contains(&y) {
                space = space.sum(&Subspace::span(p, dim, vec![y.clone()]));
                queue.push(y);
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn gl3_2() -> MatrixGroup {
        MatrixGroup::new(
            2,
            3,
            vec![
                FpMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
                FpMatrix::from_rows(2, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = MatrixGroup::trivial(2, 2);
        assert_eq!(g.order(), 1);
        assert_eq!(g.enumerate_elements(10).unwrap(), vec![FpMatrix::identity(2, 2)]);
        assert_eq!(g.orbits().unwrap().size_multiset(), vec![1, 1, 1, 1]);
        let with_identity = MatrixGroup::new(2, 3, vec![FpMatrix::identity(2, 3)]).unwrap();
        assert_eq!(with_identity.order(), 1);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl3_2().order(), 168);
        let gl22 = MatrixGroup::new(
            2,
            2,
            vec![
                FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]),
                FpMatrix::from_rows(2, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap();
        assert_eq!(gl22.enumerate_elements(100).unwrap().len(), 6);
        let elems = gl3_2().enumerate_elements(1000).unwrap();
        assert_eq!(elems.len(), 168);
        let set: HashSet<_> = elems.iter().collect();
        assert_eq!(set.len(), 168);
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            gl3_2().enumerate_elements(100),
            Err(GroupError::TooLarge { order: 168, .. })
        ));
    }

    #[test]
    fn membership_matches_enumeration() {
        let g = gl3_2();
        let h = MatrixGroup::new(
            2,
            3,
            vec![FpMatrix::from_rows(2, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])],
        )
        .unwrap();
        let elems = g.enumerate_elements(1000).unwrap();
        let hs: HashSet<_> = h.enumerate_elements(10).unwrap().into_iter().collect();
        for x in &elems {
            assert!(g.contains(x).unwrap());
            assert_eq!(h.contains(x).unwrap(), hs.contains(x));
        }
        assert!(g.contains(&FpMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn orbit_of_gl32() {
        let o = gl3_2().orbits().unwrap();
        assert_eq!(o.size_multiset(), vec![1, 7]);
        assert_eq!(o.representatives, vec![0, 1]);
    }

    #[test]
    fn irreducible_has_single_minimal_subspace() {
        let m = gl3_2().minimal_invariant_subspaces().unwrap();
        assert_eq!(m, vec![Subspace::full(2, 3)]);
    }

    #[test]
    fn orbit_stabilizer_index() {
        // GL3(2) acting on F_2^4 fixing e0: cosets of <e0>
        let g = MatrixGroup::new(
            2,
            4,
            gl3_2()
                .generators()
                .iter()
                .map(|a| FpMatrix::block_diagonal(&FpMatrix::identity(2, 1), a))
                .collect(),
        )
        .unwrap();
        let w = Subspace::coordinate(2, 4, 1);
        let v = FpVector::unit(2, 4, 1);
        let (stab, orbit) = g.coset_orbit_stabilizer(&w, &v);
        assert_eq!(orbit.len() as u128 * stab.order(), g.order());
        assert!(!g.rank3_criterion(&w, &v).unwrap());
        assert_eq!(
            g.rank3_criterion(&w, &FpVector::unit(2, 4, 0)),
            Err(GroupError::VectorInSubspace)
        );
    }
}
