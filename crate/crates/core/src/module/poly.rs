//! Dense univariate polynomials over `F_p`, coefficients lowest degree first.

use crate::gf::{inv_mod, FpMatrix};

pub(crate) type Poly = Vec<u8>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub(crate) fn sub(a: &Poly, b: &Poly, p: u8) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u8; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = *a.get(i).unwrap_or(&0) as u16;
        let y = *b.get(i).unwrap_or(&0) as u16;
        *o = ((x + p as u16 - y) % p as u16) as u8;
    }
    trim(out)
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u8) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u32 * y as u32) % p as u32;
        }
    }
    trim(out.into_iter().map(|v| v as u8).collect())
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divmod(a: &Poly, b: &Poly, p: u8) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p) as u32;
    let mut r: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    if a.len() <= db {
        return (Vec::new(), trim(a.clone()));
    }
    let mut q = vec![0u8; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lead_inv % p as u32;
        q[k] = c as u8;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + (p as u32 - c) * y as u32) % p as u32;
        }
    }
    r.truncate(db);
    (trim(q), trim(r.into_iter().map(|v| v as u8).collect()))
}

pub(crate) fn rem(a: &Poly, b: &Poly, p: u8) -> Poly {
    divmod(a, b, p).1
}

pub(crate) fn monic(a: &Poly, p: u8) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv_mod(l, p) as u32;
            a.iter().map(|&x| (x as u32 * li % p as u32) as u8).collect()
        }
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &Poly, b: &Poly, p: u8) -> Poly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `base^e mod m`.
pub(crate) fn powmod(base: &Poly, mut e: u64, m: &Poly, p: u8) -> Poly {
    let mut acc: Poly = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Irreducible factors `f` of `a` that occur in the distinct-degree
/// splitting as the only factor of their degree. Factors sharing a degree
/// with another factor are not returned. Multiplicities are ignored.
pub(crate) fn isolated_irreducible_factors(a: &Poly, p: u8) -> Vec<Poly> {
    let mut h = monic(&trim(a.clone()), p);
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut k = 1;
    while degree(&h).unwrap_or(0) >= 1 {
        if 2 * k > degree(&h).unwrap() {
            // every remaining factor has degree at least k > deg(h) / 2, so
            // h is itself irreducible
            out.push(h.clone());
            break;
        }
        let mut xp = x.clone();
        for _ in 0..k {
            xp = powmod(&xp, p as u64, &h, p);
        }
        let g = gcd(&sub(&xp, &x, p), &h, p);
        let dg = degree(&g).unwrap();
        if dg > 0 {
            if dg == k {
                out.push(g.clone());
            }
            loop {
                let c = gcd(&h, &g, p);
                if degree(&c).unwrap() == 0 {
                    break;
                }
                h = divmod(&h, &c, p).0;
            }
        }
        k += 1;
    }
    out.sort_by_key(|f| f.len());
    out
}

/// `f(A)` by Horner's rule.
pub(crate) fn eval_matrix(f: &Poly, a: &FpMatrix) -> FpMatrix {
    let n = a.rows();
    let p = a.p();
    let mut acc = FpMatrix::zero(p, n, n);
    for &c in f.iter().rev() {
        acc = &acc * a;
        if c != 0 {
            acc = acc
                .try_add(&FpMatrix::identity(p, n).scale(c))
                .expect("same shape");
        }
    }
    acc
}

/// Characteristic polynomial `det(xI - A)` via reduction to upper
/// Hessenberg form.
pub(crate) fn char_poly(a: &FpMatrix) -> Poly {
    let n = a.rows();
    let p = a.p();
    let pu = p as u32;
    let mut h: Vec<Vec<u32>> = (0..n)
        .map(|r| (0..n).map(|c| a.get(r, c) as u32).collect())
        .collect();
    for j in 0..n.saturating_sub(2) {
        let piv = (j + 1..n).find(|&i| h[i][j] != 0);
        let Some(i) = piv else { continue };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j] as u8, p) as u32;
        for r in j + 2..n {
            let t = h[r][j] * inv % pu;
            if t == 0 {
                continue;
            }
            for c in 0..n {
                let v = h[j + 1][c];
                h[r][c] = (h[r][c] + (pu - t) * v) % pu;
            }
            for row in h.iter_mut() {
                let v = row[r];
                row[j + 1] = (row[j + 1] + t * v) % pu;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let lin: Poly = vec![((pu - h[m][m]) % pu) as u8, 1];
        let mut pm = mul(&lin, &polys[m], p);
        let mut prod: u32 = 1;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % pu;
            let coef = h[i][m] * prod % pu;
            if coef == 0 {
                continue;
            }
            let term: Poly = polys[i]
                .iter()
                .map(|&x| (x as u32 * coef % pu) as u8)
                .collect();
            pm = sub(&pm, &trim(term), p);
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        let a = FpMatrix::from_rows(3, &[&[1, 2, 0, 1], &[0, 1, 1, 2], &[2, 0, 0, 1], &[1, 1, 1, 0]]);
        let f = char_poly(&a);
        assert_eq!(f.len(), 5);
        assert_eq!(f[4], 1);
        assert!(eval_matrix(&f, &a).is_zero());
    }

    #[test]
    fn companion_matrix_char_poly() {
        // companion of x^3 + x + 1 over F_2
        let c = FpMatrix::from_rows(2, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(char_poly(&c), vec![1, 1, 0, 1]);
    }

    #[test]
    fn factors_of_small_products() {
        // (x+1)^2 (x^2+x+1) (x^3+x+1) over F_2
        let f = mul(
            &mul(&vec![1, 1], &vec![1, 1], 2),
            &mul(&vec![1, 1, 1], &vec![1, 1, 0, 1], 2),
            2,
        );
        let fs = isolated_irreducible_factors(&f, 2);
        assert_eq!(fs, vec![vec![1, 1], vec![1, 1, 1], vec![1, 1, 0, 1]]);
        // x (x+1) share degree 1 and are both withheld
        let g = mul(&vec![0, 1], &vec![1, 1], 2);
        assert!(isolated_irreducible_factors(&g, 2).is_empty());
    }

    #[test]
    fn division_identity() {
        let a: Poly = vec![2, 0, 1, 2, 1];
        let b: Poly = vec![1, 2, 1];
        let (q, r) = divmod(&a, &b, 3);
        let back = sub(&mul(&q, &b, 3), &sub(&vec![], &r, 3), 3);
        assert_eq!(back, a);
    }
}
