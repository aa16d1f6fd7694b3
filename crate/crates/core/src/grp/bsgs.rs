//! Schreier–Sims for matrix groups acting on encoded column vectors.

use std::collections::HashMap;

use rand::Rng;

use crate::gf::FpMatrix;

#[derive(Clone, Debug)]
struct Level {
    base: u64,
    gens: Vec<usize>,
    orbit: Vec<u64>,
    pos: HashMap<u64, usize>,
    trans: Vec<FpMatrix>,
    trans_inv: Vec<FpMatrix>,
    /// For each orbit point, how many of `gens` have had their Schreier
    /// generator checked.
    done: Vec<usize>,
}

/// Base and strong generating set. Base points are encoded vectors; the
/// group acts on the left, `x -> g x`.
#[derive(Clone, Debug)]
pub struct Bsgs {
    p: u8,
    dim: usize,
    strong: Vec<FpMatrix>,
    strong_inv: Vec<FpMatrix>,
    levels: Vec<Level>,
}

fn first_moved_code(g: &FpMatrix) -> u64 {
    let domain = (g.p() as u64).pow(g.rows() as u32);
    (1..domain)
        .find(|&c| g.apply_code(c) != c)
        .expect("non-identity matrix moves some vector")
}

impl Bsgs {
    pub fn new(p: u8, dim: usize, gens: &[FpMatrix]) -> Self {
        let mut b = Bsgs {
            p,
            dim,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            b.insert(g);
        }
        b
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[FpMatrix] {
        &self.strong
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it went all the way).
    fn strip(&self, mut h: FpMatrix, from: usize) -> (FpMatrix, usize) {
        for (i, lev) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply_code(lev.base);
            match lev.pos.get(&beta) {
                None => return (h, i),
                Some(&k) => {
                    if k != 0 {
                        h = &lev.trans_inv[k] * &h;
                    }
                }
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn contains(&self, g: &FpMatrix) -> bool {
        let (r, lvl) = self.strip(g.clone(), 0);
        lvl == self.levels.len() && r.is_identity()
    }

    fn new_level(&mut self, base: u64) {
        let id = FpMatrix::identity(self.p, self.dim);
        let mut pos = HashMap::new();
        pos.insert(base, 0);
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![id.clone()],
            trans_inv: vec![id],
            done: vec![0],
        });
    }

    /// Adds strong generator `idx` to level `l` and extends that level's orbit.
    fn add_gen_to_level(&mut self, l: usize, idx: usize) {
        let s = self.strong[idx].clone();
        let s_inv = self.strong_inv[idx].clone();
        let lev = &mut self.levels[l];
        lev.gens.push(idx);
        let all: Vec<(FpMatrix, FpMatrix)> = lev
            .gens
            .iter()
            .map(|&g| (self.strong[g].clone(), self.strong_inv[g].clone()))
            .collect();
        // images of existing points under the new generator, then BFS over
        // new points with every generator
        let mut frontier = Vec::new();
        for k in 0..lev.orbit.len() {
            let img = s.apply_code(lev.orbit[k]);
            if !lev.pos.contains_key(&img) {
                let u = &s * &lev.trans[k];
                let ui = &lev.trans_inv[k] * &s_inv;
                lev.pos.insert(img, lev.orbit.len());
                lev.orbit.push(img);
                lev.trans.push(u);
                lev.trans_inv.push(ui);
                lev.done.push(0);
                frontier.push(lev.orbit.len() - 1);
            }
        }
        while let Some(k) = frontier.pop() {
            for (g, gi) in &all {
                let img = g.apply_code(lev.orbit[k]);
                if !lev.pos.contains_key(&img) {
                    let u = g * &lev.trans[k];
                    let ui = &lev.trans_inv[k] * gi;
                    lev.pos.insert(img, lev.orbit.len());
                    lev.orbit.push(img);
                    lev.trans.push(u);
                    lev.trans_inv.push(ui);
                    lev.done.push(0);
                    frontier.push(lev.orbit.len() - 1);
                }
            }
        }
    }

    /// Registers `y` (which fixes the base points of levels `< from`) as a
    /// strong generator on levels `from..=to`, creating a new level if `to`
    /// is past the end.
    fn add_strong(&mut self, y: FpMatrix, from: usize, to: usize) {
        if to >= self.levels.len() {
            let b = first_moved_code(&y);
            self.new_level(b);
        }
        let yi = y.inverse().expect("group elements are invertible");
        self.strong.push(y);
        self.strong_inv.push(yi);
        let idx = self.strong.len() - 1;
        for l in from..=to {
            self.add_gen_to_level(l, idx);
        }
    }

    /// Adds `g` to the group and restores the BSGS property. Returns false
    /// when `g` was already a member.
    pub fn insert(&mut self, g: &FpMatrix) -> bool {
        let (y, lvl) = self.strip(g.clone(), 0);
        if lvl == self.levels.len() && y.is_identity() {
            return false;
        }
        let to = lvl.min(self.levels.len());
        self.add_strong(y, 0, to);
        self.complete(to);
        true
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut k = 0;
            while k < self.levels[l].orbit.len() {
                while self.levels[l].done[k] < self.levels[l].gens.len() {
                    let lev = &self.levels[l];
                    let sidx = lev.gens[lev.done[k]];
                    let s = &self.strong[sidx];
                    let gamma = s.apply_code(lev.orbit[k]);
                    let gpos = lev.pos[&gamma];
                    let h = &(&lev.trans_inv[gpos] * s) * &lev.trans[k];
                    self.levels[l].done[k] += 1;
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(h, l + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        self.add_strong(y, l + 1, j);
                        i = j.min(self.levels.len() - 1) as isize;
                        continue 'outer;
                    }
                }
                k += 1;
            }
            i -= 1;
        }
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> FpMatrix {
        let mut g = FpMatrix::identity(self.p, self.dim);
        for lev in self.levels.iter().rev() {
            let k = rng.gen_range(0..lev.orbit.len());
            g = &lev.trans[k] * &g;
        }
        g
    }

    /// Orbit of the first base point, if any.
    pub fn first_orbit(&self) -> Option<&[u64]> {
        self.levels.first().map(|l| l.orbit.as_slice())
    }
}
