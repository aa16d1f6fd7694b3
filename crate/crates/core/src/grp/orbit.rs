use serde::Serialize;

use crate::gf::FpMatrix;

/// Fast image computation for a fixed matrix on encoded vectors. For
/// `p = 2` the image of a bitmask is the XOR of column images.
#[derive(Clone, Debug)]
pub(crate) struct CodeAction {
    matrix: FpMatrix,
    columns: Vec<u64>,
}

impl CodeAction {
    pub(crate) fn new(g: &FpMatrix) -> Self {
        let columns = if g.p() == 2 {
            (0..g.cols()).map(|c| g.column(c).encode()).collect()
        } else {
            Vec::new()
        };
        CodeAction {
            matrix: g.clone(),
            columns,
        }
    }

    #[inline]
    pub(crate) fn apply(&self, code: u64) -> u64 {
        if self.matrix.p() == 2 {
            let mut out = 0;
            let mut c = code;
            let mut i = 0;
            while c != 0 {
                if c & 1 == 1 {
                    out ^= self.columns[i];
                }
                c >>= 1;
                i += 1;
            }
            out
        } else {
            self.matrix.apply_code(code)
        }
    }
}

/// Partition of `F_p^n` into orbits. Orbit ids are assigned in increasing
/// order of their minimal encoded vector, which is also the representative.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPartition {
    pub p: u8,
    pub dim: usize,
    #[serde(skip)]
    pub orbit_of: Vec<u32>,
    pub sizes: Vec<usize>,
    pub representatives: Vec<u64>,
}

impl OrbitPartition {
    pub fn compute(p: u8, dim: usize, gens: &[FpMatrix]) -> Self {
        let actions: Vec<CodeAction> = gens.iter().map(CodeAction::new).collect();
        let domain = (p as u64).pow(dim as u32) as usize;
        let mut orbit_of = vec![u32::MAX; domain];
        let mut sizes = Vec::new();
        let mut representatives = Vec::new();
        let mut stack = Vec::new();
        for start in 0..domain {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            orbit_of[start] = id;
            stack.push(start as u64);
            let mut size = 0;
            while let Some(x) = stack.pop() {
                size += 1;
                for a in &actions {
                    let y = a.apply(x) as usize;
                    if orbit_of[y] == u32::MAX {
                        orbit_of[y] = id;
                        stack.push(y as u64);
                    }
                }
            }
            sizes.push(size);
            representatives.push(start as u64);
        }
        OrbitPartition {
            p,
            dim,
            orbit_of,
            sizes,
            representatives,
        }
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Orbit sizes sorted ascending.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable();
        s
    }

    pub fn orbit_id(&self, code: u64) -> u32 {
        self.orbit_of[code as usize]
    }

    /// Encoded members of orbit `id`, ascending.
    pub fn members(&self, id: u32) -> Vec<u64> {
        self.orbit_of
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == id)
            .map(|(c, _)| c as u64)
            .collect()
    }
}
