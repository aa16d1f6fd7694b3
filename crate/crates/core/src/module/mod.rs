//! Modules for a group given by generator images: spinning, irreducibility,
//! homomorphism spaces, and dual, tensor and quotient constructions.
//!
//! Abstract generator `i` acts on column vectors by `action[i]`, on the
//! left. Modules built over the same abstract generators can be combined
//! index by index.

mod meataxe;
mod poly;

use thiserror::Error;

use crate::gf::{FpMatrix, FpVector, GfError};
use crate::grp::{spin_subspace, MatrixGroup, OrbitPartition, Subspace, MAX_DOMAIN};

pub use meataxe::{exhaustive_reducibility_witness, meataxe, MeataxeOutcome};

/// Modules up to this dimension always get the exhaustive irreducibility
/// oracle in addition to the Meataxe.
pub const EXHAUSTIVE_IRREDUCIBILITY_DIM: usize = 12;

/// Seed for the Meataxe's random algebra elements.
pub const MEATAXE_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("action matrix {0} is not invertible")]
    NotInvertible(usize),
    #[error("action matrix {index} has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("modules have {0} and {1} generators")]
    GeneratorCountMismatch(usize, usize),
    #[error("modules are over F_{0} and F_{1}")]
    ModulusMismatch(u8, u8),
    #[error("subspace is not invariant under the module action")]
    NotInvariant,
    #[error("meataxe and exhaustive spin disagree on {0}")]
    IrreducibilityDisagreement(String),
    #[error("meataxe was inconclusive on {0}")]
    Inconclusive(String),
    #[error("domain p^dim = {0} too large")]
    DomainTooLarge(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    p: u8,
    dim: usize,
    action: Vec<FpMatrix>,
    label: String,
}

/// Basis of the intertwiners `X` (`dim M2 x dim M1`) with
/// `X * A_i = B_i * X` for all generators.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<FpMatrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Irreducibility verdict with a reducibility witness when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub witness: Option<Subspace>,
    /// Whether the exhaustive oracle was run and agreed.
    pub oracle_checked: bool,
}

/// The quotient `M / W` together with the block data of the change of basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FpModule,
    /// Action on `W` in its echelon basis.
    pub sub: FpModule,
    /// Columns: the echelon basis of `W`, then standard vectors completing it.
    pub change_of_basis: FpMatrix,
}

impl FpModule {
    pub fn new(p: u8, dim: usize, action: Vec<FpMatrix>, label: impl Into<String>) -> Result<Self, ModuleError> {
        crate::gf::check_prime(p as u32)?;
        for (i, g) in action.iter().enumerate() {
            if g.p() != p {
                return Err(ModuleError::ModulusMismatch(g.p(), p));
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(ModuleError::BadShape {
                    index: i,
                    rows: g.rows(),
                    cols: g.cols(),
                    dim,
                });
            }
            if g.inverse().is_none() {
                return Err(ModuleError::NotInvertible(i));
            }
        }
        Ok(FpModule {
            p,
            dim,
            action,
            label: label.into(),
        })
    }

    /// The natural module of a matrix group, generator by generator.
    pub fn natural(group: &MatrixGroup, label: impl Into<String>) -> Self {
        FpModule {
            p: group.p(),
            dim: group.dim(),
            action: group.generators().to_vec(),
            label: label.into(),
        }
    }

    /// Trivial module of the given dimension on `k` generators.
    pub fn trivial(p: u8, dim: usize, k: usize) -> Self {
        FpModule {
            p,
            dim,
            action: vec![FpMatrix::identity(p, dim); k],
            label: "trivial".into(),
        }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The matrix group generated by the action matrices.
    pub fn image_group(&self) -> MatrixGroup {
        MatrixGroup::new(self.p, self.dim, self.action.clone()).expect("validated action")
    }

    fn compatible(&self, other: &FpModule) -> Result<(), ModuleError> {
        if self.p != other.p {
            return Err(ModuleError::ModulusMismatch(self.p, other.p));
        }
        if self.action.len() != other.action.len() {
            return Err(ModuleError::GeneratorCountMismatch(
                self.action.len(),
                other.action.len(),
            ));
        }
        Ok(())
    }

    pub fn spin(&self, seeds: &[FpVector]) -> Subspace {
        spin_subspace(self.p, self.dim, &self.action, seeds)
    }

    /// Meataxe verdict, cross-checked by the exhaustive spin oracle up to
    /// [`EXHAUSTIVE_IRREDUCIBILITY_DIM`]. Disagreement is an error.
    pub fn is_irreducible(&self) -> Result<Irreducibility, ModuleError> {
        let outcome = meataxe(self.p, self.dim, &self.action, MEATAXE_SEED, 200);
        let small = self.dim <= EXHAUSTIVE_IRREDUCIBILITY_DIM
            && (self.p as u64).pow(self.dim as u32) <= MAX_DOMAIN;
        if !small {
            return match outcome {
                MeataxeOutcome::Irreducible => Ok(Irreducibility {
                    irreducible: true,
                    witness: None,
                    oracle_checked: false,
                }),
                MeataxeOutcome::Reducible(w) => Ok(Irreducibility {
                    irreducible: false,
                    witness: Some(w),
                    oracle_checked: false,
                }),
                MeataxeOutcome::Inconclusive => Err(ModuleError::Inconclusive(self.label.clone())),
            };
        }
        let oracle = exhaustive_reducibility_witness(self.p, self.dim, &self.action);
        match (outcome, oracle) {
            (MeataxeOutcome::Irreducible, None) | (MeataxeOutcome::Inconclusive, None) => {
                Ok(Irreducibility {
                    irreducible: true,
                    witness: None,
                    oracle_checked: true,
                })
            }
            (MeataxeOutcome::Reducible(w), Some(_)) | (MeataxeOutcome::Inconclusive, Some(w)) => {
                Ok(Irreducibility {
                    irreducible: false,
                    witness: Some(w),
                    oracle_checked: true,
                })
            }
            _ => Err(ModuleError::IrreducibilityDisagreement(self.label.clone())),
        }
    }

    /// Intertwiners from `self` to `other`, from the kernel of the
    /// Kronecker-lifted system. With `X` flattened row-major,
    /// `vec(X A) = (I ⊗ A^T) vec(X)` and `vec(B X) = (B ⊗ I) vec(X)`.
    pub fn hom_space(&self, other: &FpModule) -> Result<HomSpace, ModuleError> {
        self.compatible(other)?;
        let (m1, m2) = (self.dim, other.dim);
        let id1 = FpMatrix::identity(self.p, m1);
        let id2 = FpMatrix::identity(self.p, m2);
        let blocks: Vec<FpMatrix> = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let left = id2.kronecker(&a.transpose()).unwrap();
                let right = b.kronecker(&id1).unwrap();
                left.try_sub(&right).unwrap()
            })
            .collect();
        let basis = if blocks.is_empty() {
            (0..m1 * m2)
                .map(|i| FpMatrix::from_vector(&FpVector::unit(self.p, m1 * m2, i), m2, m1))
                .collect()
        } else {
            FpMatrix::vstack(self.p, m1 * m2, &blocks)
                .kernel_basis()
                .iter()
                .map(|v| FpMatrix::from_vector(v, m2, m1))
                .collect()
        };
        Ok(HomSpace { basis })
    }

    /// An isomorphism `X` with `X * A_i = B_i * X` when one exists. Basis
    /// elements are tried first, then all combinations when the hom space is
    /// small enough to enumerate.
    pub fn isomorphism_to(&self, other: &FpModule) -> Result<Option<FpMatrix>, ModuleError> {
        self.compatible(other)?;
        if self.dim != other.dim {
            return Ok(None);
        }
        let hom = self.hom_space(other)?;
        for b in &hom.basis {
            if b.inverse().is_some() {
                return Ok(Some(b.clone()));
            }
        }
        let h = hom.dim() as u32;
        let total = (self.p as u64).checked_pow(h).unwrap_or(u64::MAX);
        if total > 1 << 16 {
            return Err(ModuleError::Inconclusive(format!(
                "isomorphism search over a {h}-dimensional hom space"
            )));
        }
        for code in 1..total {
            let coeffs = FpVector::decode(self.p, h as usize, code);
            let mut x = FpMatrix::zero(self.p, other.dim, self.dim);
            for (c, b) in coeffs.entries().iter().zip(&hom.basis) {
                if *c != 0 {
                    x = x.try_add(&b.scale(*c)).unwrap();
                }
            }
            if x.inverse().is_some() {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> Result<bool, ModuleError> {
        Ok(self.isomorphism_to(other)?.is_some())
    }

    pub fn dual(&self) -> FpModule {
        FpModule {
            p: self.p,
            dim: self.dim,
            action: self
                .action
                .iter()
                .map(|g| g.inverse_transpose().expect("validated action"))
                .collect(),
            label: format!("{}*", self.label),
        }
    }

    /// Tensor product with action `kron(A_i, B_i)`, basis `e_i ⊗ f_j` at
    /// index `i * dim(other) + j`.
    pub fn tensor(&self, other: &FpModule) -> Result<FpModule, ModuleError> {
        self.compatible(other)?;
        Ok(FpModule {
            p: self.p,
            dim: self.dim * other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.kronecker(b).unwrap())
                .collect(),
            label: format!("{}⊗{}", self.label, other.label),
        })
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule, ModuleError> {
        self.compatible(other)?;
        Ok(FpModule {
            p: self.p,
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| FpMatrix::block_diagonal(a, b))
                .collect(),
            label: format!("{}⊕{}", self.label, other.label),
        })
    }

    /// Action on `V / W` in the basis extending `W`'s echelon basis by
    /// standard vectors. In that basis every generator is block upper
    /// triangular `[[A, C], [0, B]]`; the quotient records `B`, the
    /// submodule `A`.
    pub fn quotient(&self, w: &Subspace) -> Result<Quotient, ModuleError> {
        if w.ambient_dim() != self.dim || w.p() != self.p {
            return Err(GfError::DimensionMismatch("subspace ambient".into()).into());
        }
        if !self.action.iter().all(|g| w.is_invariant_under(g)) {
            return Err(ModuleError::NotInvariant);
        }
        let basis = w.extended_basis();
        let pmat = FpMatrix::from_columns(self.p, self.dim, &basis);
        let pinv = pmat.inverse().expect("extended basis is a basis");
        let d = w.dim();
        let q = self.dim - d;
        let mut sub = Vec::new();
        let mut quo = Vec::new();
        for g in &self.action {
            let conj = &(&pinv * g) * &pmat;
            sub.push(conj.submatrix(0, 0, d, d));
            quo.push(conj.submatrix(d, d, q, q));
        }
        Ok(Quotient {
            module: FpModule {
                p: self.p,
                dim: q,
                action: quo,
                label: format!("{}/W", self.label),
            },
            sub: FpModule {
                p: self.p,
                dim: d,
                action: sub,
                label: format!("W<{}", self.label),
            },
            change_of_basis: pmat,
        })
    }

    /// Whether the nonzero vectors form a single orbit.
    pub fn is_transitive_linear(&self) -> Result<bool, ModuleError> {
        let domain = (self.p as u64).pow(self.dim as u32);
        if domain > MAX_DOMAIN {
            return Err(ModuleError::DomainTooLarge(domain));
        }
        if self.dim == 0 {
            return Ok(true);
        }
        Ok(OrbitPartition::compute(self.p, self.dim, &self.action).count() == 2)
    }

    /// `H^0`: the common fixed space of all generators.
    pub fn fixed_space(&self) -> Subspace {
        if self.action.is_empty() {
            return Subspace::full(self.p, self.dim);
        }
        let id = FpMatrix::identity(self.p, self.dim);
        let blocks: Vec<FpMatrix> = self.action.iter().map(|g| g.try_sub(&id).unwrap()).collect();
        let stacked = FpMatrix::vstack(self.p, self.dim, &blocks);
        Subspace::span(self.p, self.dim, stacked.kernel_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl3_2() -> FpModule {
        FpModule::new(
            2,
            3,
            vec![
                FpMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
                FpMatrix::from_rows(2, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            ],
            "natural",
        )
        .unwrap()
    }

    #[test]
    fn natural_and_dual_sl3_2() {
        let m = sl3_2();
        let irr = m.is_irreducible().unwrap();
        assert!(irr.irreducible && irr.oracle_checked);
        assert_eq!(m.hom_space(&m).unwrap().dim(), 1);
        let d = m.dual();
        assert_eq!(m.hom_space(&d).unwrap().dim(), 0);
        assert!(!m.is_isomorphic(&d).unwrap());
        assert_eq!(d.dual().action(), m.action());
        assert!(m.is_transitive_linear().unwrap());
        assert!(m.fixed_space().dim() == 0);
    }

    #[test]
    fn hom_basis_intertwines() {
        let m = sl3_2();
        let s = m.direct_sum(&FpModule::trivial(2, 1, 2)).unwrap();
        let hom = s.hom_space(&s).unwrap();
        assert_eq!(hom.dim(), 2);
        for x in &hom.basis {
            for g in s.action() {
                assert_eq!(x * g, g * x);
            }
        }
        let irr = s.is_irreducible().unwrap();
        assert!(!irr.irreducible);
        let w = irr.witness.unwrap();
        assert!(w.dim() > 0 && w.dim() < 4);
    }

    #[test]
    fn quotient_blocks() {
        let s = FpModule::trivial(2, 1, 2).direct_sum(&sl3_2()).unwrap();
        let w = Subspace::coordinate(2, 4, 1);
        let q = s.quotient(&w).unwrap();
        assert_eq!(q.module.action(), sl3_2().action());
        assert_eq!(q.sub.dim(), 1);
        let zero = s.quotient(&Subspace::zero(2, 4)).unwrap();
        assert_eq!(zero.module.action(), s.action());
        assert_eq!(
            s.quotient(&Subspace::coordinate(2, 4, 2)).unwrap_err(),
            ModuleError::NotInvariant
        );
    }

    #[test]
    fn tensor_with_trivial_line() {
        let m = sl3_2();
        let t = FpModule::trivial(2, 1, 2).tensor(&m).unwrap();
        assert_eq!(t.action(), m.action());
        assert!(t.is_isomorphic(&m).unwrap());
    }
}
