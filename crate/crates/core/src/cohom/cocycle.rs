//! First cohomology from a certified presentation, and complements of an
//! abelian normal subgroup in a split extension.
//!
//! The group acts on the coefficient module on the left, and cocycles
//! satisfy `phi(gh) = phi(g) + g.phi(h)`. A cocycle is stored as the
//! concatenation of its values on the generators. Coboundaries are
//! `phi_q(g) = g.q - q`.

use std::collections::HashSet;

use rand::Rng;
use thiserror::Error;

use super::presentation::CertifiedPresentation;
use super::word::Word;
use crate::gf::{FpMatrix, FpVector};
use crate::grp::{MatrixGroup, Subspace};
use crate::module::FpModule;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomError {
    #[error("module has {module} generators, presentation has {presentation}")]
    GeneratorCount { module: usize, presentation: usize },
    #[error("complement for cocycle {index} has order {found}, expected {expected}")]
    ComplementOrder {
        index: usize,
        found: u128,
        expected: u128,
    },
    #[error("section has {0} generators, cocycles have {1}")]
    SectionCount(usize, usize),
}

/// `Z^1`, `B^1` and a canonical transversal of `B^1` in `Z^1`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    module: FpModule,
    z1: Subspace,
    b1: Subspace,
    /// `B^1` with coordinates reversed, so its echelon pivots sit at the
    /// most significant coordinates of the encoded order.
    b1_reversed: Subspace,
    /// Basis (coordinates reversed) of the normal forms of `Z^1` modulo `B^1`.
    transversal_reversed: Subspace,
}

fn reversed(v: &FpVector) -> FpVector {
    let mut e = v.entries().to_vec();
    e.reverse();
    FpVector::new(v.p(), e).expect("entries already reduced")
}

/// Linear map `phi -> phi(w)` as one `dim x (k * dim)` block row.
fn word_operator(module: &FpModule, inverses: &[FpMatrix], w: &Word) -> FpMatrix {
    let p = module.p();
    let m = module.dim();
    let k = module.generator_count();
    let mut out = FpMatrix::zero(p, m, k * m);
    let mut prefix = FpMatrix::identity(p, m);
    for l in w.letters() {
        let a = &module.action()[l.gen];
        let ai = &inverses[l.gen];
        let (term, next) = if l.positive {
            (prefix.clone(), &prefix * a)
        } else {
            // phi(g^-1) = -g^-1 phi(g)
            let t = &prefix * ai;
            (t.scale(p - 1), t)
        };
        let cur = out.submatrix(0, l.gen * m, m, m);
        out.set_block(0, l.gen * m, &cur.try_add(&term).unwrap());
        prefix = next;
    }
    out
}

/// `Z^1(G, Q)` from the relators of a certified presentation, with `B^1`
/// and `H^1`.
pub fn cocycle_space(cert: &CertifiedPresentation, q: &FpModule) -> Result<CocycleSpace, CohomError> {
    let k = cert.presentation().generators();
    if q.generator_count() != k {
        return Err(CohomError::GeneratorCount {
            module: q.generator_count(),
            presentation: k,
        });
    }
    let p = q.p();
    let m = q.dim();
    let inverses: Vec<FpMatrix> = q.action().iter().map(|a| a.inverse().unwrap()).collect();
    let blocks: Vec<FpMatrix> = cert
        .presentation()
        .relators()
        .iter()
        .map(|r| word_operator(q, &inverses, r))
        .collect();
    let z1 = if blocks.is_empty() {
        Subspace::full(p, k * m)
    } else {
        Subspace::span(p, k * m, FpMatrix::vstack(p, k * m, &blocks).kernel_basis())
    };
    let id = FpMatrix::identity(p, m);
    let b1_gens: Vec<FpVector> = (0..m)
        .map(|i| {
            let e = FpVector::unit(p, m, i);
            let parts: Vec<FpVector> = q
                .action()
                .iter()
                .map(|a| a.try_sub(&id).unwrap().mul_vec(&e))
                .collect();
            FpVector::concat(&parts)
        })
        .collect();
    let b1 = Subspace::span(p, k * m, b1_gens.clone());
    let b1_reversed = Subspace::span(p, k * m, b1_gens.iter().map(reversed).collect());
    let normal_forms: Vec<FpVector> = z1
        .basis()
        .iter()
        .map(|z| b1_reversed.reduce(&reversed(z)))
        .collect();
    let transversal_reversed = Subspace::span(p, k * m, normal_forms);
    Ok(CocycleSpace {
        module: q.clone(),
        z1,
        b1,
        b1_reversed,
        transversal_reversed,
    })
}

impl CocycleSpace {
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn z1_dim(&self) -> usize {
        self.z1.dim()
    }

    pub fn b1_dim(&self) -> usize {
        self.b1.dim()
    }

    pub fn h1_dim(&self) -> usize {
        self.z1.dim() - self.b1.dim()
    }

    pub fn z1(&self) -> &Subspace {
        &self.z1
    }

    pub fn b1(&self) -> &Subspace {
        &self.b1
    }

    /// Basis cocycles, each split into its values on the generators.
    pub fn z1_basis(&self) -> Vec<Vec<FpVector>> {
        self.z1.basis().iter().map(|z| self.split(z)).collect()
    }

    /// Values of a cocycle on each generator.
    pub fn split(&self, cocycle: &FpVector) -> Vec<FpVector> {
        let m = self.module.dim();
        cocycle
            .entries()
            .chunks(m.max(1))
            .take(self.module.generator_count())
            .map(|c| FpVector::new(self.module.p(), c.to_vec()).unwrap())
            .collect()
    }

    /// Canonical representative of the class of `cocycle`: the minimum of
    /// `cocycle + B^1` in the encoded-vector order.
    pub fn normal_form(&self, cocycle: &FpVector) -> FpVector {
        reversed(&self.b1_reversed.reduce(&reversed(cocycle)))
    }

    /// One cocycle per `H^1` class, each the minimum of its class, listed in
    /// increasing encoded order (the zero cocycle first).
    pub fn class_representatives(&self) -> Vec<FpVector> {
        let p = self.module.p();
        let h = self.transversal_reversed.dim();
        let basis = self.transversal_reversed.basis();
        let n = self.z1.ambient_dim();
        let mut reps: Vec<FpVector> = Vec::new();
        let total = (p as u64).pow(h as u32);
        for code in 0..total {
            let coeffs = FpVector::decode(p, h, code);
            let mut v = FpVector::zero(p, n);
            for (c, b) in coeffs.entries().iter().zip(basis) {
                if *c != 0 {
                    v = v.add(&b.scale(*c));
                }
            }
            reps.push(v);
        }
        reps.sort_by(|a, b| a.entries().cmp(b.entries()));
        reps.iter().map(reversed).collect()
    }

    /// `phi(w)` for a cocycle given by its generator values.
    pub fn evaluate(&self, cocycle: &FpVector, w: &Word) -> FpVector {
        let inverses: Vec<FpMatrix> = self
            .module
            .action()
            .iter()
            .map(|a| a.inverse().unwrap())
            .collect();
        word_operator(&self.module, &inverses, w).mul_vec(cocycle)
    }

    /// Checks `phi(uv) = phi(u) + u.phi(v)` on random word pairs for every
    /// basis cocycle; returns the number of failures.
    pub fn cocycle_identity_failures<R: Rng>(&self, rng: &mut R, pairs: usize, max_len: usize) -> usize {
        let k = self.module.generator_count();
        if k == 0 {
            return 0;
        }
        let inverses: Vec<FpMatrix> = self
            .module
            .action()
            .iter()
            .map(|a| a.inverse().unwrap())
            .collect();
        let random_word = |rng: &mut R| {
            let len = rng.gen_range(0..=max_len);
            Word::from_letters((0..len).map(|_| super::word::Letter {
                gen: rng.gen_range(0..k),
                positive: rng.gen_bool(0.5),
            }))
        };
        let mut failures = 0;
        for z in self.z1.basis() {
            for _ in 0..pairs {
                let u = random_word(rng);
                let v = random_word(rng);
                let lhs = self.evaluate(z, &u.mul(&v));
                let act_u = if u.is_empty() {
                    FpMatrix::identity(self.module.p(), self.module.dim())
                } else {
                    u.evaluate(self.module.action(), &inverses)
                };
                let rhs = self.evaluate(z, &u).add(&act_u.mul_vec(&self.evaluate(z, &v)));
                if lhs != rhs {
                    failures += 1;
                }
            }
        }
        failures
    }
}

/// A complement `<q(phi(g_i)) g_i>` for one `H^1` class.
#[derive(Clone, Debug)]
pub struct Complement {
    /// Canonical cocycle of the class.
    pub cocycle: FpVector,
    pub group: MatrixGroup,
}

/// One complement per `H^1` class in the split extension `Q:G`, where
/// `section[i]` is the image of generator `i` and `unipotent` realizes a
/// module vector as an element of `Q`. The module action must be
/// conjugation: `g q(c) g^-1 = q(g.c)`. Each complement is checked to have
/// order `|G|`; since it maps onto `G`, that forces trivial intersection
/// with `Q`.
pub fn complement_representatives(
    section: &[FpMatrix],
    unipotent: &dyn Fn(&FpVector) -> FpMatrix,
    cs: &CocycleSpace,
    g_order: u128,
) -> Result<Vec<Complement>, CohomError> {
    let k = cs.module().generator_count();
    if section.len() != k {
        return Err(CohomError::SectionCount(section.len(), k));
    }
    let p = cs.module().p();
    let dim = section.first().map(|g| g.rows()).unwrap_or(0);
    let mut out = Vec::new();
    for (index, phi) in cs.class_representatives().into_iter().enumerate() {
        let values = cs.split(&phi);
        let gens: Vec<FpMatrix> = section
            .iter()
            .zip(&values)
            .map(|(g, c)| &unipotent(c) * g)
            .collect();
        let group = MatrixGroup::new(p, dim, gens).expect("products of invertible matrices");
        let found = group.order();
        if found != g_order {
            return Err(CohomError::ComplementOrder {
                index,
                found,
                expected: g_order,
            });
        }
        out.push(Complement { cocycle: phi, group });
    }
    Ok(out)
}

/// Orbit-size multisets of each complement on `F_p^n`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OrbitCensus {
    pub orbit_sizes: Vec<Vec<usize>>,
    pub orbit_counts: Vec<usize>,
    pub min_orbits: Option<usize>,
}

pub fn complement_orbit_census(reps: &[MatrixGroup]) -> Result<OrbitCensus, crate::grp::GroupError> {
    let mut orbit_sizes = Vec::new();
    for r in reps {
        orbit_sizes.push(r.orbits()?.size_multiset());
    }
    let orbit_counts: Vec<usize> = orbit_sizes.iter().map(|s| s.len()).collect();
    let min_orbits = orbit_counts.iter().copied().min();
    Ok(OrbitCensus {
        orbit_sizes,
        orbit_counts,
        min_orbits,
    })
}

/// Distinct members of a list of cocycle classes, by normal form.
pub fn distinct_classes(cs: &CocycleSpace, cocycles: &[FpVector]) -> usize {
    cocycles
        .iter()
        .map(|c| cs.normal_form(c))
        .collect::<HashSet<_>>()
        .len()
}
