//! Coset enumeration, HLT strategy with lookahead and table compaction.

use thiserror::Error;

use super::word::{Letter, Word};

/// Default bound on coset table rows.
pub const DEFAULT_MAX_ROWS: usize = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset table overflow at {0} rows")]
    Overflow(usize),
    #[error("word uses generator {0} but the presentation has {1}")]
    GeneratorOutOfRange(usize, usize),
}

struct Table {
    cols: usize,
    /// Row-major; 0 means undefined, cosets are numbered from 1.
    data: Vec<u32>,
    parent: Vec<u32>,
    max_rows: usize,
    queue: Vec<u32>,
}

enum Scan {
    Done,
    Full,
}

impl Table {
    fn new(cols: usize, max_rows: usize) -> Self {
        // row 0 is a sentinel so coset numbers index rows directly
        Table {
            cols,
            data: vec![0; 2 * cols],
            parent: vec![0, 1],
            max_rows,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.data[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.data[c as usize * self.cols + col] = v;
    }

    fn rows(&self) -> usize {
        self.parent.len() - 1
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn live_count(&self) -> usize {
        (1..self.parent.len() as u32).filter(|&c| self.is_live(c)).count()
    }

    fn define(&mut self, c: u32, col: usize) -> bool {
        if self.rows() >= self.max_rows {
            return false;
        }
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.data.extend(std::iter::repeat(0).take(self.cols));
        self.set(c, col, n);
        self.set(n, col ^ 1, c);
        true
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == 0 {
                    continue;
                }
                self.set(d, col ^ 1, 0);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, col);
                if mx != 0 {
                    self.merge(nu, mx);
                } else {
                    let ny = self.get(nu, col ^ 1);
                    if ny != 0 {
                        self.merge(mu, ny);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `word` from coset `alpha`, defining cosets when `fill` is set,
    /// and records deductions and coincidences.
    fn scan(&mut self, alpha: u32, word: &[usize], fill: bool) -> Scan {
        let r = word.len();
        if r == 0 {
            return Scan::Done;
        }
        let mut f = alpha;
        let mut i = 0;
        let mut b = alpha;
        let mut j = r;
        loop {
            while i < r && self.get(f, word[i]) != 0 {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == r {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Scan::Done;
            }
            // word[i..j] is the part not yet traced from either end
            while j > i && self.get(b, word[j - 1] ^ 1) != 0 {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j <= i {
                self.coincidence(f, b);
                return Scan::Done;
            } else if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Scan::Done;
            } else if !fill {
                return Scan::Done;
            } else if !self.define(f, word[i]) {
                return Scan::Full;
            }
        }
    }

    /// Renumbers live cosets consecutively, dropping dead rows. Returns the
    /// new number of `keep`.
    fn compact(&mut self, keep: u32) -> u32 {
        let n = self.parent.len();
        let mut new_id = vec![0u32; n];
        let mut next = 1u32;
        for c in 1..n as u32 {
            if self.is_live(c) {
                new_id[c as usize] = next;
                next += 1;
            }
        }
        let mut data = vec![0u32; next as usize * self.cols];
        for c in 1..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            let nc = new_id[c as usize] as usize;
            for col in 0..self.cols {
                let v = self.get(c, col);
                if v != 0 {
                    let rv = self.rep(v);
                    data[nc * self.cols + col] = new_id[rv as usize];
                }
            }
        }
        // the coset being processed may have died; resume at the next live one
        let resume = (keep as usize..n)
            .find(|&c| self.parent[c] == c as u32)
            .map_or(next, |c| new_id[c]);
        self.data = data;
        self.parent = (0..next).collect();
        resume
    }
}

/// Index of the subgroup generated by `subgroup` in the group
/// `<generators | relators>`.
pub fn todd_coxeter(
    generators: usize,
    relators: &[Word],
    subgroup: &[Word],
    max_rows: usize,
) -> Result<usize, EnumerationError> {
    for w in relators.iter().chain(subgroup) {
        let b = w.generator_bound();
        if b > generators {
            return Err(EnumerationError::GeneratorOutOfRange(b - 1, generators));
        }
    }
    let cols_of = |w: &Word| -> Vec<usize> { w.letters().iter().map(|l: &Letter| l.column()).collect() };
    let rels: Vec<Vec<usize>> = relators.iter().map(cols_of).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(cols_of).collect();
    let cols = 2 * generators;
    let mut t = Table::new(cols, max_rows);
    if generators == 0 {
        return Ok(1);
    }

    let mut alpha: u32 = 1;
    let mut subgroup_done = false;
    loop {
        if !subgroup_done {
            let mut full = false;
            for w in &subs {
                if let Scan::Full = t.scan(1, w, true) {
                    full = true;
                    break;
                }
            }
            if full {
                alpha = lookahead(&mut t, &rels, alpha)?;
                continue;
            }
            subgroup_done = true;
        }
        if alpha as usize >= t.parent.len() {
            break;
        }
        if !t.is_live(alpha) {
            alpha += 1;
            continue;
        }
        let mut full = false;
        for w in &rels {
            if let Scan::Full = t.scan(alpha, w, true) {
                full = true;
                break;
            }
            if !t.is_live(alpha) {
                break;
            }
        }
        if !full && t.is_live(alpha) {
            for col in 0..cols {
                if t.get(alpha, col) == 0 && !t.define(alpha, col) {
                    full = true;
                    break;
                }
            }
        }
        if full {
            alpha = lookahead(&mut t, &rels, alpha)?;
            continue;
        }
        alpha += 1;
    }
    Ok(t.live_count())
}

/// Scans every live coset under every relator without defining new cosets,
/// then compacts. Fails when no rows were freed.
fn lookahead(t: &mut Table, rels: &[Vec<usize>], alpha: u32) -> Result<u32, EnumerationError> {
    let mut c = 1u32;
    while (c as usize) < t.parent.len() {
        if t.is_live(c) {
            for w in rels {
                t.scan(c, w, false);
                if !t.is_live(c) {
                    break;
                }
            }
        }
        c += 1;
    }
    let new_alpha = t.compact(alpha);
    // demand some headroom so a nearly full table does not thrash
    let headroom = (t.max_rows / 100).max(1);
    if t.rows() + headroom > t.max_rows {
        return Err(EnumerationError::Overflow(t.max_rows));
    }
    Ok(new_alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(gens: usize, rels: &[&str]) -> Vec<Word> {
        rels.iter().map(|r| Word::parse(r, gens).unwrap()).collect()
    }

    #[test]
    fn cyclic_and_trivial() {
        assert_eq!(todd_coxeter(1, &words(1, &["a"]), &[], 100).unwrap(), 1);
        assert_eq!(todd_coxeter(1, &words(1, &["a^5"]), &[], 100).unwrap(), 5);
        assert_eq!(
            todd_coxeter(1, &words(1, &["a^6"]), &words(1, &["a^2"]), 100).unwrap(),
            2
        );
    }

    #[test]
    fn symmetric_group_s3() {
        let rels = words(2, &["a^2", "b^3", "(a*b)^2"]);
        assert_eq!(todd_coxeter(2, &rels, &[], 1000).unwrap(), 6);
        assert_eq!(todd_coxeter(2, &rels, &words(2, &["a"]), 1000).unwrap(), 3);
    }

    #[test]
    fn l27_presentation() {
        let rels = words(2, &["a^2", "b^3", "(a*b)^7", "[a,b]^4"]);
        assert_eq!(todd_coxeter(2, &rels, &[], 100_000).unwrap(), 168);
        assert_eq!(todd_coxeter(2, &rels, &words(2, &["b"]), 100_000).unwrap(), 56);
    }

    #[test]
    fn overflow_on_infinite_group() {
        let rels = words(2, &["a^2", "b^3"]);
        assert_eq!(
            todd_coxeter(2, &rels, &[], 5000),
            Err(EnumerationError::Overflow(5000))
        );
    }

    #[test]
    fn small_table_forces_lookahead() {
        // A_5 = <a,b | a^2, b^3, (ab)^5>; HLT needs more than 60 rows
        let rels = words(2, &["a^2", "b^3", "(a*b)^5"]);
        assert_eq!(todd_coxeter(2, &rels, &[], 1_000_000).unwrap(), 60);
        assert_eq!(todd_coxeter(2, &rels, &[], 80).unwrap(), 60);
    }
}
