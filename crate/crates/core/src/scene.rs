//! Parabolic scenes: the stabilizer `P[W]` of the coordinate subspace
//! `W = <e_1..e_d>` in `GL_n(p)`, its unipotent radical `Q` and block
//! diagonal sections over which complements of `Q` are classified.
//!
//! Elements of `P[W]` have the block form `[[A, C], [0, B]]` with `A` of
//! size `d`. The radical `Q` is the set of `q(C) = [[I, C], [0, I]]`, and a
//! block diagonal `g = diag(A, B)` conjugates `q(C)` to `q(A C B^-1)`. With
//! `C` flattened row-major this is `kron(A, B^-T)`, the module `W ⊗ U*`.

use thiserror::Error;

use crate::cohom::{
    cocycle_space, complement_representatives, CertifiedPresentation, CocycleSpace, CohomError, Complement,
    PresentationError,
};
use crate::gf::{FpMatrix, FpVector, GfError};
use crate::grp::{GroupError, MatrixGroup, Subspace};
use crate::module::{FpModule, ModuleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SceneError {
    #[error("scene parameters need 0 < d < n, got n = {n}, d = {d}")]
    BadParameters { n: usize, d: usize },
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("section generator {0} is not block diagonal")]
    NotBlockDiagonal(usize),
    #[error("block modules act through {0} and {1} generators")]
    GeneratorMismatch(usize, usize),
    #[error("{0}")]
    Precondition(String),
}

/// The parabolic `P[W] <= GL_n(p)` for `W` the span of the first `d`
/// coordinate vectors.
#[derive(Clone, Debug)]
pub struct ParabolicScene {
    p: u8,
    n: usize,
    d: usize,
    w: Subspace,
}

/// Generators of `GL_m(p)`: all elementary transvections plus
/// `diag(w, 1, ..., 1)` for a primitive root `w` when `p > 2`.
pub fn general_linear_generators(p: u8, m: usize) -> Vec<FpMatrix> {
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut t = FpMatrix::identity(p, m);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    if p > 2 && m > 0 {
        let mut d = FpMatrix::identity(p, m);
        d.set(0, 0, primitive_root(p));
        gens.push(d);
    }
    gens
}

fn primitive_root(p: u8) -> u8 {
    (2..p)
        .find(|&g| {
            let mut x = 1u32;
            (1..p - 1).all(|_| {
                x = x * g as u32 % p as u32;
                x != 1
            })
        })
        .unwrap_or(1)
}

impl ParabolicScene {
    pub fn new(p: u8, n: usize, d: usize) -> Result<Self, SceneError> {
        crate::gf::check_prime(p as u32)?;
        if d == 0 || d >= n {
            return Err(SceneError::BadParameters { n, d });
        }
        Ok(ParabolicScene {
            p,
            n,
            d,
            w: Subspace::coordinate(p, n, d),
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The stabilized subspace `W`.
    pub fn w(&self) -> &Subspace {
        &self.w
    }

    /// `dim Q = d (n - d)`.
    pub fn q_dim(&self) -> usize {
        self.d * (self.n - self.d)
    }

    pub fn q_order(&self) -> u128 {
        (self.p as u128).pow(self.q_dim() as u32)
    }

    /// `q(C)` for `C` given row-major as a vector of length `d (n - d)`.
    pub fn unipotent(&self, c: &FpVector) -> FpMatrix {
        let block = FpMatrix::from_vector(c, self.d, self.n - self.d);
        let mut m = FpMatrix::identity(self.p, self.n);
        m.set_block(0, self.d, &block);
        m
    }

    /// `q(E_ij)` in row-major order of `(i, j)`.
    pub fn q_generators(&self) -> Vec<FpMatrix> {
        (0..self.q_dim())
            .map(|k| self.unipotent(&FpVector::unit(self.p, self.q_dim(), k)))
            .collect()
    }

    /// Every element of `Q`, in encoded order of `C`.
    pub fn q_elements(&self) -> Vec<FpMatrix> {
        let k = self.q_dim();
        (0..self.q_order() as u64)
            .map(|code| self.unipotent(&FpVector::decode(self.p, k, code)))
            .collect()
    }

    pub fn q_group(&self) -> MatrixGroup {
        MatrixGroup::new(self.p, self.n, self.q_generators()).expect("unipotent generators")
    }

    pub fn levi_embed(&self, a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
        FpMatrix::block_diagonal(a, b)
    }

    /// The blocks `(A, C, B)` of an element of `P[W]`.
    pub fn blocks(&self, g: &FpMatrix) -> (FpMatrix, FpMatrix, FpMatrix) {
        let (n, d) = (self.n, self.d);
        (
            g.submatrix(0, 0, d, d),
            g.submatrix(0, d, d, n - d),
            g.submatrix(d, d, n - d, n - d),
        )
    }

    pub fn is_block_diagonal(&self, g: &FpMatrix) -> bool {
        let (n, d) = (self.n, self.d);
        g.submatrix(0, d, d, n - d).is_zero() && g.submatrix(d, 0, n - d, d).is_zero()
    }

    /// Generators of the Levi factor `GL_d(p) x GL_{n-d}(p)`, block diagonal.
    pub fn levi_generators(&self) -> Vec<FpMatrix> {
        let (p, n, d) = (self.p, self.n, self.d);
        let ia = FpMatrix::identity(p, d);
        let ib = FpMatrix::identity(p, n - d);
        general_linear_generators(p, d)
            .iter()
            .map(|a| self.levi_embed(a, &ib))
            .chain(
                general_linear_generators(p, n - d)
                    .iter()
                    .map(|b| self.levi_embed(&ia, b)),
            )
            .collect()
    }

    /// The whole parabolic `P[W]`.
    pub fn parabolic_group(&self) -> MatrixGroup {
        let mut gens = self.levi_generators();
        gens.extend(self.q_generators());
        MatrixGroup::new(self.p, self.n, gens).expect("invertible generators")
    }

    /// Pairs `(g, k)` where conjugating `q(E_k)` by the block diagonal `g`
    /// disagrees with `q(kron(A, B^-T) E_k)`. Empty when the tensor
    /// description of the conjugation action holds on every listed element.
    pub fn tensor_identity_failures(&self, section: &[FpMatrix]) -> Result<Vec<(usize, usize)>, SceneError> {
        let mut failures = Vec::new();
        for (gi, g) in section.iter().enumerate() {
            if !self.is_block_diagonal(g) {
                return Err(SceneError::NotBlockDiagonal(gi));
            }
            let (a, _, b) = self.blocks(g);
            let action = a.kronecker(&b.inverse_transpose()?)?;
            let g_inv = g.inverse().ok_or(GroupError::NotInvertible(gi))?;
            for k in 0..self.q_dim() {
                let e = FpVector::unit(self.p, self.q_dim(), k);
                let lhs = &(g * &self.unipotent(&e)) * &g_inv;
                let rhs = self.unipotent(&action.mul_vec(&e));
                if lhs != rhs {
                    failures.push((gi, k));
                }
            }
        }
        Ok(failures)
    }
}

/// A subgroup `Q : G` of `P[W]` given by a block diagonal section of `G`.
#[derive(Clone, Debug)]
pub struct SceneGroup {
    scene: ParabolicScene,
    section: Vec<FpMatrix>,
    label: String,
}

impl SceneGroup {
    pub fn new(scene: ParabolicScene, section: Vec<FpMatrix>, label: impl Into<String>) -> Result<Self, SceneError> {
        for (i, g) in section.iter().enumerate() {
            if g.rows() != scene.n || g.cols() != scene.n || g.p() != scene.p {
                return Err(SceneError::NotBlockDiagonal(i));
            }
            if !scene.is_block_diagonal(g) {
                return Err(SceneError::NotBlockDiagonal(i));
            }
        }
        Ok(SceneGroup {
            scene,
            section,
            label: label.into(),
        })
    }

    /// The section `diag(W(g), U(g))` built from modules for `W` and
    /// `U = V/W` acting through the same generators.
    pub fn from_modules(w: &FpModule, u: &FpModule, label: impl Into<String>) -> Result<Self, SceneError> {
        if w.generator_count() != u.generator_count() {
            return Err(SceneError::GeneratorMismatch(w.generator_count(), u.generator_count()));
        }
        if w.p() != u.p() {
            return Err(ModuleError::ModulusMismatch(u.p(), w.p()).into());
        }
        let scene = ParabolicScene::new(w.p(), w.dim() + u.dim(), w.dim())?;
        let section = w
            .action()
            .iter()
            .zip(u.action())
            .map(|(a, b)| scene.levi_embed(a, b))
            .collect();
        SceneGroup::new(scene, section, label)
    }

    pub fn scene(&self) -> &ParabolicScene {
        &self.scene
    }

    pub fn section(&self) -> &[FpMatrix] {
        &self.section
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The section subgroup `{diag(A, B)}`.
    pub fn section_group(&self) -> MatrixGroup {
        MatrixGroup::new(self.scene.p, self.scene.n, self.section.clone()).expect("validated section")
    }

    /// `Q : G`, generated by the section and `Q`.
    pub fn full_group(&self) -> MatrixGroup {
        let mut gens = self.section.clone();
        gens.extend(self.scene.q_generators());
        MatrixGroup::new(self.scene.p, self.scene.n, gens).expect("validated section")
    }

    /// `W` as a module: the top left blocks.
    pub fn w_module(&self) -> FpModule {
        let action = self.section.iter().map(|g| self.scene.blocks(g).0).collect();
        FpModule::new(self.scene.p, self.scene.d, action, "W").expect("blocks of invertible block diagonal")
    }

    /// `U = V/W` as a module: the bottom right blocks.
    pub fn u_module(&self) -> FpModule {
        let action = self.section.iter().map(|g| self.scene.blocks(g).2).collect();
        FpModule::new(self.scene.p, self.scene.n - self.scene.d, action, "U")
            .expect("blocks of invertible block diagonal")
    }

    /// `Q` as a module under conjugation, `W ⊗ U*`.
    pub fn q_module(&self) -> FpModule {
        self.w_module()
            .tensor(&self.u_module().dual())
            .expect("same generator count")
            .with_label("Q")
    }

    /// Cocycles of the section with values in `Q`. The presentation must be
    /// certified for some group isomorphic to the section via generators; it
    /// is transferred to the section group before use.
    pub fn cocycles(&self, cert: &CertifiedPresentation) -> Result<CocycleSpace, SceneError> {
        let local = cert.transfer(&self.section_group())?;
        Ok(cocycle_space(&local, &self.q_module())?)
    }

    /// One complement of `Q` per `H^1` class.
    pub fn complements(&self, cs: &CocycleSpace) -> Result<Vec<Complement>, SceneError> {
        let scene = &self.scene;
        let unipotent = |c: &FpVector| scene.unipotent(c);
        let order = self.section_group().order();
        Ok(complement_representatives(&self.section, &unipotent, cs, order)?)
    }
}

/// Which side of a one-dimensional fixed piece a Y-scene puts the module on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Trivial line `W = <e_1>`, module on `V/W`: section `diag(1, B)`.
    OneSpace,
    /// Module on the hyperplane `W`, trivial quotient: section `diag(B, 1)`.
    Hyperplane,
}

/// The scene `F_p^m` extended by a trivial line on the chosen side.
pub fn y_scene(module: &FpModule, side: Side, label: impl Into<String>) -> Result<SceneGroup, SceneError> {
    let line = FpModule::trivial(module.p(), 1, module.generator_count());
    match side {
        Side::OneSpace => SceneGroup::from_modules(&line, module, label),
        Side::Hyperplane => SceneGroup::from_modules(module, &line, label),
    }
}

/// The scene `diag(W(g), U(g))` with `n = dim W + dim U`.
pub fn m2_scene(w: &FpModule, u: &FpModule, label: impl Into<String>) -> Result<SceneGroup, SceneError> {
    SceneGroup::from_modules(w, u, label)
}

/// The two three-orbit subgroups of `GL_4(2)` and the Levi subgroup
/// `GL_1(2) x GL_3(2)` of the point stabilizer.
#[derive(Clone, Debug)]
pub struct SmallExamples {
    pub g1: MatrixGroup,
    pub g2: MatrixGroup,
    pub levi: MatrixGroup,
}

pub fn small_examples() -> SmallExamples {
    let t = FpMatrix::from_rows(2, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    let s1 = FpMatrix::from_rows(2, &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let s2 = FpMatrix::from_rows(2, &[&[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let g1 = MatrixGroup::new(2, 4, vec![t.clone(), s1]).expect("invertible");
    let g2 = MatrixGroup::new(2, 4, vec![t, s2]).expect("invertible");
    let scene = ParabolicScene::new(2, 4, 1).expect("valid parameters");
    let levi = MatrixGroup::new(2, 4, scene.levi_generators()).expect("invertible");
    SmallExamples { g1, g2, levi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_are_checked() {
        assert!(ParabolicScene::new(2, 4, 0).is_err());
        assert!(ParabolicScene::new(2, 4, 4).is_err());
        assert!(ParabolicScene::new(4, 4, 1).is_err());
        assert!(ParabolicScene::new(3, 4, 2).is_ok());
    }

    #[test]
    fn parabolic_order_and_invariance() {
        let s = ParabolicScene::new(2, 4, 1).unwrap();
        let g = s.parabolic_group();
        // |GL_1(2)| |GL_3(2)| 2^3
        assert_eq!(g.order(), 168 * 8);
        assert!(g.is_invariant(s.w()));
        assert_eq!(s.q_group().order(), 8);
        assert_eq!(s.q_elements().len(), 8);
    }

    #[test]
    fn general_linear_generator_orders() {
        for (p, m, order) in [(2u8, 3usize, 168u128), (3, 2, 48), (5, 2, 480), (3, 1, 2)] {
            let g = MatrixGroup::new(p, m, general_linear_generators(p, m)).unwrap();
            assert_eq!(g.order(), order, "GL_{m}({p})");
        }
    }

    #[test]
    fn blocks_roundtrip() {
        let s = ParabolicScene::new(3, 5, 2).unwrap();
        let c = FpVector::from_ints(3, &[1, 2, 0, 0, 1, 1]);
        let (a, cc, b) = s.blocks(&s.unipotent(&c));
        assert!(a.is_identity() && b.is_identity());
        assert_eq!(cc.to_vector(), c);
    }

    #[test]
    fn tensor_identity_on_levi() {
        let s = ParabolicScene::new(3, 5, 2).unwrap();
        assert!(s.tensor_identity_failures(&s.levi_generators()).unwrap().is_empty());
    }

    #[test]
    fn small_example_orbits() {
        let ex = small_examples();
        assert_eq!(ex.g1.orbits().unwrap().size_multiset(), vec![1, 1, 14]);
        assert_eq!(ex.g2.orbits().unwrap().size_multiset(), vec![1, 7, 8]);
        assert_eq!(ex.levi.orbits().unwrap().size_multiset(), vec![1, 1, 7, 7]);
    }
}
