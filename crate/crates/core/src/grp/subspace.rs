use std::fmt;

use crate::gf::{echelonize_vectors, neg_mod, FpMatrix, FpVector};

/// A subspace of `F_p^n` held as a reduced-echelon basis, so equal subspaces
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u8,
    ambient: usize,
    basis: Vec<FpVector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(p={}, n={}, dim={}) <", self.p, self.ambient, self.dim())?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

impl Subspace {
    pub fn zero(p: u8, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u8, ambient: usize) -> Self {
        Self::span(p, ambient, (0..ambient).map(|i| FpVector::unit(p, ambient, i)).collect())
    }

    pub fn span(p: u8, ambient: usize, vectors: Vec<FpVector>) -> Self {
        let basis = echelonize_vectors(p, ambient, vectors);
        let pivots = basis
            .iter()
            .map(|b| b.entries().iter().position(|&e| e != 0).unwrap())
            .collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots,
        }
    }

    /// Span of the first `d` standard basis vectors.
    pub fn coordinate(p: u8, ambient: usize, d: usize) -> Self {
        Self::span(p, ambient, (0..d).map(|i| FpVector::unit(p, ambient, i)).collect())
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of the coset `v + self`: `v` with every pivot
    /// coordinate cleared.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        let p = self.p as u16;
        let mut e = v.entries().to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = e[pc];
            if f == 0 {
                continue;
            }
            let f = neg_mod(f, self.p) as u16;
            for (x, &y) in e.iter_mut().zip(b.entries()) {
                *x = ((*x as u16 + f * y as u16) % p) as u8;
            }
        }
        FpVector::from_raw(self.p, e)
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn is_invariant_under(&self, g: &FpMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&g.mul_vec(b)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.ambient, v)
    }

    /// Encoded codes of every vector in the subspace.
    pub fn element_codes(&self) -> Vec<u64> {
        let p = self.p as u64;
        let total = p.pow(self.dim() as u32);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut k = idx;
            let mut v = FpVector::zero(self.p, self.ambient);
            for b in &self.basis {
                let c = (k % p) as u8;
                k /= p;
                if c != 0 {
                    v = v.add(&b.scale(c));
                }
            }
            out.push(v.encode());
        }
        out.sort_unstable();
        out
    }

    /// Basis of `F_p^n` extending this subspace's echelon basis by the
    /// standard vectors at non-pivot positions, in increasing order.
    pub fn extended_basis(&self) -> Vec<FpVector> {
        let mut out = self.basis.clone();
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        out.extend(
            (0..self.ambient)
                .filter(|&c| !is_pivot[c])
                .map(|c| FpVector::unit(self.p, self.ambient, c)),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(
            3,
            3,
            vec![
                FpVector::new(3, vec![1, 1, 0]).unwrap(),
                FpVector::new(3, vec![0, 1, 1]).unwrap(),
            ],
        );
        let b = Subspace::span(
            3,
            3,
            vec![
                FpVector::new(3, vec![1, 2, 1]).unwrap(),
                FpVector::new(3, vec![2, 0, 1]).unwrap(),
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.element_codes().len(), 9);
    }

    #[test]
    fn coset_reduction() {
        let w = Subspace::coordinate(2, 4, 1);
        let v = FpVector::new(2, vec![1, 0, 1, 0]).unwrap();
        assert_eq!(w.reduce(&v).entries(), &[0, 0, 1, 0]);
        assert!(w.contains(&FpVector::unit(2, 4, 0)));
        assert_eq!(w.extended_basis().len(), 4);
    }
}
