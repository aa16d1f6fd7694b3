//! Irreducibility testing: the Holt–Rees form of the Meataxe, backed by an
//! exhaustive spin of every nonzero vector for small modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{char_poly, eval_matrix, isolated_irreducible_factors};
use crate::gf::{FpMatrix, FpVector};
use crate::grp::{spin_subspace, Subspace};

/// Result of one Meataxe run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeataxeOutcome {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
    /// No conclusive algebra element was found within the attempt budget.
    Inconclusive,
}

/// Holt–Rees Meataxe with a seeded generator. Random algebra elements are
/// linear combinations of a growing pool of random products of generators.
pub fn meataxe(p: u8, dim: usize, action: &[FpMatrix], seed: u64, attempts: usize) -> MeataxeOutcome {
    if dim <= 1 {
        return MeataxeOutcome::Irreducible;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<FpMatrix> = action.to_vec();
    if pool.is_empty() {
        // the trivial action on dimension > 1 fixes every line
        return MeataxeOutcome::Reducible(Subspace::span(p, dim, vec![FpVector::unit(p, dim, 0)]));
    }
    let transposed: Vec<FpMatrix> = action.iter().map(|g| g.transpose()).collect();
    for _ in 0..attempts {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        let prod = &pool[i] * &pool[j];
        pool.push(prod);
        let mut theta = FpMatrix::zero(p, dim, dim);
        for m in &pool {
            let c = rng.gen_range(0..p);
            if c != 0 {
                theta = theta.try_add(&m.scale(c)).expect("same shape");
            }
        }
        let chi = char_poly(&theta);
        for f in isolated_irreducible_factors(&chi, p) {
            let ft = eval_matrix(&f, &theta);
            let null = ft.kernel_basis();
            if null.len() != f.len() - 1 {
                continue;
            }
            let s = spin_subspace(p, dim, action, &null[..1]);
            if s.dim() < dim {
                return MeataxeOutcome::Reducible(s);
            }
            // Norton's test: a vector in the null space of f(theta)^T
            // spinning to a proper subspace under the transposed action
            // gives an invariant annihilator.
            let null_t = ft.transpose().kernel_basis();
            let st = spin_subspace(p, dim, &transposed, &null_t[..1]);
            if st.dim() < dim {
                let rows = FpMatrix::from_row_vectors(p, dim, st.basis());
                return MeataxeOutcome::Reducible(Subspace::span(p, dim, rows.kernel_basis()));
            }
            return MeataxeOutcome::Irreducible;
        }
        if pool.len() > 24 {
            pool.truncate(action.len());
        }
    }
    MeataxeOutcome::Inconclusive
}

/// Exhaustive oracle: spin one vector from every line; irreducible iff every
/// spin is the whole space. Returns a proper invariant subspace otherwise.
pub fn exhaustive_reducibility_witness(p: u8, dim: usize, action: &[FpMatrix]) -> Option<Subspace> {
    let total = (p as u64).pow(dim as u32);
    for code in 1..total {
        let v = FpVector::decode(p, dim, code);
        // one representative per line: leading nonzero entry equal to 1
        if v.entries().iter().find(|&&e| e != 0) != Some(&1) {
            continue;
        }
        let s = spin_subspace(p, dim, action, &[v]);
        if s.dim() < dim {
            return Some(s);
        }
    }
    None
}
