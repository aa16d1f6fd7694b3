//! Exact linear algebra over prime fields.
//!
//! Scalars are residues stored as `u8`, so any prime below 256 works. Matrices
//! are dense and row-major. Vectors are column vectors: a matrix `g` acts on a
//! vector `x` as `g * x`.
//!
//! A vector in `F_p^m` has a canonical integer encoding
//! `sum(entries[i] * p^i)` (little-endian), which for `p = 2` is a bitmask.
//! Orbit and membership code works on these encodings.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("residue {value} out of range for p = {p}")]
    ResidueOutOfRange { value: u32, p: u8 },
    #[error("matrix is singular")]
    Singular,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<u8, GfError> {
    if p < 256 && is_prime(p) {
        Ok(p as u8)
    } else {
        Err(GfError::NotPrime(p))
    }
}

/// Multiplicative inverse of a nonzero residue.
#[inline]
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    let (mut t, mut new_t) = (0i32, 1i32);
    let (mut r, mut new_r) = (p as i32, a as i32);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i32) as u8
}

#[inline]
pub(crate) fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// A single element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u8,
    p: u8,
}

impl FpScalar {
    pub fn new(value: u32, p: u32) -> Result<Self, GfError> {
        let p = check_prime(p)?;
        Ok(FpScalar {
            value: (value % p as u32) as u8,
            p,
        })
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }
}

/// A column vector over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u8,
    entries: Vec<u8>,
}

impl FpVector {
    pub fn new(p: u8, entries: Vec<u8>) -> Result<Self, GfError> {
        check_prime(p as u32)?;
        if let Some(&bad) = entries.iter().find(|&&e| e >= p) {
            return Err(GfError::ResidueOutOfRange {
                value: bad as u32,
                p,
            });
        }
        Ok(FpVector { p, entries })
    }

    /// Reduces arbitrary integers mod `p`.
    pub fn from_ints(p: u8, values: &[i64]) -> Self {
        let entries = values
            .iter()
            .map(|v| v.rem_euclid(p as i64) as u8)
            .collect();
        FpVector { p, entries }
    }

    pub(crate) fn from_raw(p: u8, entries: Vec<u8>) -> Self {
        FpVector { p, entries }
    }

    pub fn zero(p: u8, len: usize) -> Self {
        FpVector {
            p,
            entries: vec![0; len],
        }
    }

    pub fn unit(p: u8, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[i] = 1;
        v
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Little-endian base-`p` encoding.
    pub fn encode(&self) -> u64 {
        encode_entries(self.p, &self.entries)
    }

    pub fn decode(p: u8, len: usize, code: u64) -> Self {
        let mut entries = vec![0u8; len];
        decode_into(p, code, &mut entries);
        FpVector { p, entries }
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.p, other.p);
        assert_eq!(self.len(), other.len());
        let p = self.p as u16;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        FpVector { p: self.p, entries }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let p = self.p as u16;
        let entries = self
            .entries
            .iter()
            .map(|&a| ((a as u16 * c as u16) % p) as u8)
            .collect();
        FpVector { p: self.p, entries }
    }

    pub fn concat(parts: &[FpVector]) -> FpVector {
        let p = parts.first().map(|v| v.p).unwrap_or(2);
        let entries = parts.iter().flat_map(|v| v.entries.iter().copied()).collect();
        FpVector { p, entries }
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn encode_entries(p: u8, entries: &[u8]) -> u64 {
    if p == 2 {
        entries
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &e)| acc | ((e as u64) << i))
    } else {
        entries
            .iter()
            .rev()
            .fold(0u64, |acc, &e| acc * p as u64 + e as u64)
    }
}

#[inline]
pub(crate) fn decode_into(p: u8, mut code: u64, out: &mut [u8]) {
    if p == 2 {
        for (i, e) in out.iter_mut().enumerate() {
            *e = ((code >> i) & 1) as u8;
        }
    } else {
        for e in out.iter_mut() {
            *e = (code % p as u64) as u8;
            code /= p as u64;
        }
    }
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn new(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, GfError> {
        check_prime(p as u32)?;
        if data.len() != rows * cols {
            return Err(GfError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&e| e >= p) {
            return Err(GfError::ResidueOutOfRange {
                value: bad as u32,
                p,
            });
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: u8, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|v| v.rem_euclid(p as i64) as u8));
        }
        FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    pub(crate) fn from_raw(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u8, rows: usize, columns: &[FpVector]) -> Self {
        let mut m = Self::zero(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.data[i * columns.len() + j] = col.entries[i];
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(p: u8, cols: usize, rows: &[FpVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(&r.entries);
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> FpVector {
        FpVector {
            p: self.p,
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector {
            p: self.p,
            entries: (0..self.rows).map(|r| self.get(r, c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn same_field(&self, other: &FpMatrix) -> Result<(), GfError> {
        if self.p != other.p {
            Err(GfError::ModulusMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &FpMatrix) -> Result<FpMatrix, GfError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(GfError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &FpMatrix) -> FpMatrix {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let p = self.p as u32;
        let mut acc = vec![0u32; m];
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let arow = &self.data[i * k..(i + 1) * k];
            for (l, &a) in arow.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a as u32 * b as u32;
                }
            }
            data.extend(acc.iter().map(|&x| (x % p) as u8));
        }
        FpMatrix {
            p: self.p,
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn try_add(&self, other: &FpMatrix) -> Result<FpMatrix, GfError> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(GfError::DimensionMismatch("matrix sum".into()));
        }
        let p = self.p as u16;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        Ok(FpMatrix::from_raw(self.p, self.rows, self.cols, data))
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let p = self.p as u16;
        let data = self
            .data
            .iter()
            .map(|&a| ((a as u16 * c as u16) % p) as u8)
            .collect();
        FpMatrix::from_raw(self.p, self.rows, self.cols, data)
    }

    pub fn try_sub(&self, other: &FpMatrix) -> Result<FpMatrix, GfError> {
        self.try_add(&other.scale(self.p - 1))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &FpVector) -> FpVector {
        assert_eq!(self.cols, x.len());
        let p = self.p as u32;
        let entries = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                (row.iter()
                    .zip(&x.entries)
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .sum::<u32>()
                    % p) as u8
            })
            .collect();
        FpVector {
            p: self.p,
            entries,
        }
    }

    /// Image of an encoded column vector.
    pub fn apply_code(&self, code: u64) -> u64 {
        let mut buf = [0u8; 64];
        let x = &mut buf[..self.cols];
        decode_into(self.p, code, x);
        if self.p == 2 {
            let mut out = 0u64;
            for r in 0..self.rows {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let bit = row.iter().zip(x.iter()).fold(0u8, |a, (&m, &v)| a ^ (m & v));
                out |= (bit as u64) << r;
            }
            out
        } else {
            let p = self.p as u32;
            let mut out = 0u64;
            for r in (0..self.rows).rev() {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let s = row
                    .iter()
                    .zip(x.iter())
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .sum::<u32>()
                    % p;
                out = out * p as u64 + s as u64;
            }
            out
        }
    }

    /// Reduced row echelon form with leftmost pivots; returns the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(self.p, self.rows, self.cols, &mut m.data);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let w = 2 * n;
        let mut aug = vec![0u8; n * w];
        for r in 0..n {
            aug[r * w..r * w + n].copy_from_slice(&self.data[r * n..(r + 1) * n]);
            aug[r * w + n + r] = 1;
        }
        let pivots = rref_in_place(self.p, n, w, &mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            data.extend_from_slice(&aug[r * w + n..(r + 1) * w]);
        }
        Some(FpMatrix::from_raw(self.p, n, n, data))
    }

    pub fn inverse_transpose(&self) -> Result<FpMatrix, GfError> {
        self.inverse().map(|m| m.transpose()).ok_or(GfError::Singular)
    }

    /// Basis of the right null space `{x : A x = 0}`, itself in reduced
    /// echelon form (as rows) so the output is canonical.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(r.get(row, free), p);
            }
            basis.push(FpVector { p, entries: v });
        }
        echelonize_vectors(p, self.cols, basis)
    }

    /// Some `x` with `A x = b`, free variables set to zero; `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &FpVector) -> Option<FpVector> {
        assert_eq!(b.len(), self.rows);
        let w = self.cols + 1;
        let mut aug = vec![0u8; self.rows * w];
        for r in 0..self.rows {
            aug[r * w..r * w + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            aug[r * w + self.cols] = b.entries[r];
        }
        let pivots = rref_in_place(self.p, self.rows, w, &mut aug);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[row * w + self.cols];
        }
        Some(FpVector {
            p: self.p,
            entries: x,
        })
    }

    /// Kronecker product. Row index `(i, k)` of the result is
    /// `i * other.rows + k`, column index `(j, l)` is `j * other.cols + l`,
    /// so `(A ⊗ B)(x ⊗ y) = (A x) ⊗ (B y)` with `(x ⊗ y)[i*len(y)+k] = x[i] y[k]`.
    pub fn kronecker(&self, other: &FpMatrix) -> Result<FpMatrix, GfError> {
        self.same_field(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let p = self.p as u16;
        let mut data = vec![0u8; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u16;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let r = i * other.rows + k;
                        let c = j * other.cols + l;
                        data[r * cols + c] = ((a * other.get(k, l) as u16) % p) as u8;
                    }
                }
            }
        }
        Ok(FpMatrix::from_raw(self.p, rows, cols, data))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul_unchecked(self);
        }
        None
    }

    /// Dimension of the fixed space `{x : g x = x}`.
    pub fn fixed_space_dim(&self) -> usize {
        let n = self.rows;
        let mut d = self.clone();
        for i in 0..n {
            let v = d.get(i, i);
            d.data[i * n + i] = (v + self.p - 1) % self.p;
        }
        n - d.rank()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn block_diagonal(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
        let n = a.rows + b.rows;
        let mut m = FpMatrix::zero(a.p, n, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(p: u8, cols: usize, blocks: &[FpMatrix]) -> FpMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            assert_eq!(b.p, p, "vstack modulus mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FpMatrix::from_raw(p, rows, cols, data)
    }

    /// Row-major flattening as a vector.
    pub fn to_vector(&self) -> FpVector {
        FpVector {
            p: self.p,
            entries: self.data.clone(),
        }
    }

    pub fn from_vector(v: &FpVector, rows: usize, cols: usize) -> FpMatrix {
        assert_eq!(v.len(), rows * cols);
        FpMatrix::from_raw(v.p, rows, cols, v.entries.clone())
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;

    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_mul(rhs).expect("incompatible matrices")
    }
}

pub fn mat_mul(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix, GfError> {
    a.try_mul(b)
}

pub fn mat_inverse(a: &FpMatrix) -> Option<FpMatrix> {
    a.inverse()
}

pub fn kernel_basis(a: &FpMatrix) -> Vec<FpVector> {
    a.kernel_basis()
}

pub fn solve_linear(a: &FpMatrix, b: &FpVector) -> Option<FpVector> {
    a.solve(b)
}

pub fn kronecker(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix, GfError> {
    a.kronecker(b)
}

pub fn inverse_transpose(a: &FpMatrix) -> Result<FpMatrix, GfError> {
    a.inverse_transpose()
}

/// In-place reduced row echelon form of a `rows x cols` row-major buffer.
/// Pivots are taken leftmost-first; rows are swapped only when the current
/// row has a zero in the pivot column.
pub(crate) fn rref_in_place(p: u8, rows: usize, cols: usize, a: &mut [u8]) -> Vec<usize> {
    let pw = p as u16;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if src != r {
            for j in 0..cols {
                a.swap(src * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p) as u16;
        if inv != 1 {
            for j in c..cols {
                a[r * cols + j] = ((a[r * cols + j] as u16 * inv) % pw) as u8;
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = (pw - f as u16) % pw;
            for j in c..cols {
                let v = a[r * cols + j];
                if v != 0 {
                    a[i * cols + j] = ((a[i * cols + j] as u16 + f * v as u16) % pw) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced echelon basis of the span of `vectors` (zero rows dropped).
pub fn echelonize_vectors(p: u8, len: usize, vectors: Vec<FpVector>) -> Vec<FpVector> {
    if vectors.is_empty() {
        return vectors;
    }
    let rows = vectors.len();
    let mut data = Vec::with_capacity(rows * len);
    for v in &vectors {
        data.extend_from_slice(&v.entries);
    }
    let pivots = rref_in_place(p, rows, len, &mut data);
    (0..pivots.len())
        .map(|r| FpVector {
            p,
            entries: data[r * len..(r + 1) * len].to_vec(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, p: u8, r: usize, c: usize) -> FpMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix::new(p, r, c, data).unwrap()
    }

    fn random_invertible(rng: &mut ChaCha8Rng, p: u8, n: usize) -> FpMatrix {
        loop {
            let m = random_matrix(rng, p, n, n);
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    fn naive_mul(a: &FpMatrix, b: &FpMatrix) -> Vec<u8> {
        let mut out = vec![0u8; a.rows() * b.cols()];
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0u64;
                for k in 0..a.cols() {
                    s += a.get(i, k) as u64 * b.get(k, j) as u64;
                }
                out[i * b.cols() + j] = (s % a.p() as u64) as u8;
            }
        }
        out
    }

    #[test]
    fn identity_products() {
        let i3 = FpMatrix::identity(5, 3);
        assert_eq!(mat_mul(&i3, &i3).unwrap(), i3);
        let t = FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(&t * &t, FpMatrix::identity(2, 2));
    }

    #[test]
    fn product_matches_naive_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 3, 8, 8);
            let b = random_matrix(&mut rng, 3, 8, 8);
            assert_eq!((&a * &b).data(), naive_mul(&a, &b).as_slice());
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let a = FpMatrix::identity(2, 2);
        let b = FpMatrix::identity(3, 2);
        assert!(matches!(a.try_mul(&b), Err(GfError::ModulusMismatch(2, 3))));
        let c = FpMatrix::zero(2, 3, 3);
        assert!(matches!(a.try_mul(&c), Err(GfError::DimensionMismatch(_))));
        assert!(FpMatrix::new(4, 1, 1, vec![0]).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(mat_inverse(&FpMatrix::identity(3, 4)), Some(FpMatrix::identity(3, 4)));
        let s = FpMatrix::from_rows(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.inverse(), Some(s.clone()));
        assert_eq!(FpMatrix::zero(2, 3, 3).inverse(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_invertible(&mut rng, 3, 6);
            let ai = a.inverse().unwrap();
            assert!((&a * &ai).is_identity());
            assert!((&ai * &a).is_identity());
        }
    }

    #[test]
    fn kernels() {
        assert!(FpMatrix::identity(2, 4).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zero(2, 3, 3).kernel_basis().len(), 3);
        let a = FpMatrix::from_rows(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.kernel_basis(), vec![FpVector::new(2, vec![1, 1]).unwrap()]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = random_matrix(&mut rng, 3, 4, 7);
            let ker = a.kernel_basis();
            assert_eq!(a.rank() + ker.len(), 7);
            for v in &ker {
                assert!(a.mul_vec(v).is_zero());
            }
        }
    }

    #[test]
    fn linear_solve() {
        let b = FpVector::new(5, vec![1, 4, 2]).unwrap();
        assert_eq!(FpMatrix::identity(5, 3).solve(&b), Some(b.clone()));
        let a = FpMatrix::from_rows(2, &[&[1], &[1]]);
        assert_eq!(a.solve(&FpVector::new(2, vec![0, 1]).unwrap()), None);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = random_matrix(&mut rng, 3, 6, 4);
            let x0 = FpVector::new(3, (0..4).map(|_| rng.gen_range(0..3)).collect()).unwrap();
            let b = a.mul_vec(&x0);
            let x = a.solve(&b).expect("consistent by construction");
            assert!(a.mul_vec(&x).sub(&b).is_zero());
        }
    }

    #[test]
    fn kronecker_properties() {
        let i2 = FpMatrix::identity(2, 2);
        let i3 = FpMatrix::identity(2, 3);
        assert_eq!(kronecker(&i2, &i3).unwrap(), FpMatrix::identity(2, 6));

        let a = FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]);
        let b = FpMatrix::from_rows(2, &[&[0, 1], &[1, 1]]);
        let ab = a.kronecker(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let ei = FpVector::unit(2, 2, i);
                let fj = FpVector::unit(2, 2, j);
                let pure = tensor_vec(&ei, &fj);
                assert_eq!(ab.mul_vec(&pure), tensor_vec(&a.mul_vec(&ei), &b.mul_vec(&fj)));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 3, 3, 3);
            let b = random_matrix(&mut rng, 3, 3, 3);
            let c = random_matrix(&mut rng, 3, 2, 2);
            assert_eq!(a.kronecker(&b).unwrap().rank(), a.rank() * b.rank());
            let left = a.kronecker(&b).unwrap().kronecker(&c).unwrap();
            let right = a.kronecker(&b.kronecker(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    fn tensor_vec(x: &FpVector, y: &FpVector) -> FpVector {
        let p = x.p() as u16;
        let mut e = Vec::new();
        for &a in x.entries() {
            for &b in y.entries() {
                e.push(((a as u16 * b as u16) % p) as u8);
            }
        }
        FpVector::new(x.p(), e).unwrap()
    }

    #[test]
    fn inverse_transpose_cases() {
        assert_eq!(
            inverse_transpose(&FpMatrix::identity(3, 3)).unwrap(),
            FpMatrix::identity(3, 3)
        );
        let a = FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            a.inverse_transpose().unwrap(),
            FpMatrix::from_rows(2, &[&[1, 0], &[1, 1]])
        );
        assert_eq!(FpMatrix::zero(2, 2, 2).inverse_transpose(), Err(GfError::Singular));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = random_invertible(&mut rng, 3, 4);
            let b = random_invertible(&mut rng, 3, 4);
            let it = |m: &FpMatrix| m.inverse_transpose().unwrap();
            assert_eq!(it(&it(&a)), a);
            assert_eq!(it(&(&a * &b)), &it(&a) * &it(&b));
        }
    }

    #[test]
    fn encoding_roundtrip_and_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for &p in &[2u8, 3, 5] {
            let g = random_invertible(&mut rng, p, 5);
            for code in 0..(p as u64).pow(5) {
                let v = FpVector::decode(p, 5, code);
                assert_eq!(v.encode(), code);
                assert_eq!(g.apply_code(code), g.mul_vec(&v).encode());
            }
        }
        let v = FpVector::new(3, vec![2, 0, 1]).unwrap();
        assert_eq!(v.encode(), 2 + 9);
    }

    #[test]
    fn rref_is_deterministic_leftmost() {
        let a = FpMatrix::from_rows(3, &[&[0, 2, 1], &[1, 1, 0], &[1, 2, 2]]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.row(0).entries(), &[1, 0, 1]);
        assert_eq!(r.row(1).entries(), &[0, 1, 2]);
    }
}
