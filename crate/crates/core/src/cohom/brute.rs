//! Exhaustive complement search, used as an oracle for the cocycle method
//! on small extensions.

use std::collections::HashMap;

use crate::gf::FpMatrix;
use crate::grp::{ElementTable, GroupError, MatrixGroup};

/// Result of the exhaustive search.
#[derive(Clone, Debug)]
pub struct BruteForceComplements {
    /// Number of distinct complement subgroups.
    pub subgroups: usize,
    /// Number of conjugacy classes under the full group.
    pub classes: usize,
    /// One complement per class, the first found in search order.
    pub representatives: Vec<MatrixGroup>,
}

/// All complements of `Q` in `Q:G`, found by trying every tuple
/// `(q_1 g_1, ..., q_k g_k)` with `q_i` in `Q` and keeping the generated
/// subgroups of order `|G|`. Every complement arises this way, because a
/// complement contains exactly one element of each coset `Q g_i`.
pub fn brute_force_complements(
    full: &MatrixGroup,
    section: &[FpMatrix],
    q_elements: &[FpMatrix],
    g_order: u128,
    bound: u128,
) -> Result<BruteForceComplements, GroupError> {
    let table = ElementTable::new(full, bound)?;
    let k = section.len();
    let qn = q_elements.len();
    let total = qn.checked_pow(k as u32).ok_or(GroupError::TooLarge {
        order: u128::MAX,
        bound,
    })?;
    if total as u128 > bound * 100 {
        return Err(GroupError::TooLarge {
            order: total as u128,
            bound: bound * 100,
        });
    }
    let coset_elems: Vec<Vec<u32>> = section
        .iter()
        .map(|g| {
            q_elements
                .iter()
                .map(|q| table.index_of(&(q * g)).expect("element of the full group"))
                .collect()
        })
        .collect();
    let mut subgroups: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut list: Vec<Vec<u32>> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let gens: Vec<u32> = (0..k)
            .map(|i| {
                let j = c % qn;
                c /= qn;
                coset_elems[i][j]
            })
            .collect();
        // skip tuples already inside a known complement
        if list
            .iter()
            .any(|s| gens.iter().all(|g| s.binary_search(g).is_ok()))
        {
            continue;
        }
        let Some(sub) = table.bounded_closure(&gens, g_order as usize) else {
            continue;
        };
        if sub.len() as u128 == g_order && !subgroups.contains_key(&sub) {
            subgroups.insert(sub.clone(), list.len());
            list.push(sub);
        }
    }
    // classes by conjugation under the full group's generators
    let gen_idx: Vec<u32> = full
        .generators()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..list.len() {
        for &x in &gen_idx {
            let mut img: Vec<u32> = list[i].iter().map(|&e| table.conjugate(e, x)).collect();
            img.sort_unstable();
            let j = subgroups[&img];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..list.len()).filter(|&i| find(&mut parent, i) == i).collect();
    let representatives = roots
        .iter()
        .map(|&r| {
            let gens: Vec<FpMatrix> = table
                .generators_of(&list[r])
                .iter()
                .map(|&e| table.element(e).clone())
                .collect();
            MatrixGroup::new(full.p(), full.dim(), gens).expect("elements of the full group")
        })
        .collect();
    Ok(BruteForceComplements {
        subgroups: list.len(),
        classes: roots.len(),
        representatives,
    })
}

