//! Dense exact linear algebra over a prime field GF(p).
//!
//! Vectors are rows. A matrix `m` acts on a row vector `v` as `v * m`, which
//! matches the right-module convention used everywhere else in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_PRIME: u64 = 32003;

/// Returns true when `p` is prime (trial division; characteristics are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(p, r, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; `a` must be nonzero mod p.
pub fn inv(p: u64, a: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow(p, a, p - 2)
}

/// Maps a signed integer into GF(p).
pub fn from_i64(p: u64, v: i64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Symmetric representative in (-p/2, p/2], used for display only.
pub fn to_signed(p: u64, a: u64) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            let row: Vec<i64> = self.row(r).iter().map(|&a| to_signed(self.p, a)).collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from row-major entries already reduced mod p.
    pub fn from_vec(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        debug_assert!(data.iter().all(|&a| a < p));
        Matrix { p, rows, cols, data }
    }

    /// Builds a matrix from signed integer rows; all rows must share a length.
    pub fn from_i64_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| from_i64(p, v)));
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }
    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u64) {
        let i = r * self.cols + c;
        self.data[i] = add(self.p, self.data[i], v % self.p);
    }
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }
    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let p = self.p;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = (*o + a * b) % p;
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(p, a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "difference shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(p, a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let p = self.p;
        let c = c % p;
        Matrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul(p, a, c)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            out.row_mut(r).copy_from_slice(&self.row(r0 + r)[c0..c0 + cols]);
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row-echelon form with pivot columns.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let s = inv(p, m.get(r, c));
            for x in m.row_mut(r)[c..].iter_mut() {
                *x = mul(p, *x, s);
            }
            let pivot_row: Vec<u64> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                let row = &mut m.row_mut(i)[c..];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub(p, *x, mul(p, f, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Rows form a basis of the right null space `{v : self * v^T = 0}`.
    ///
    /// The basis is in reduced form: basis vector `k` has a one in free
    /// column `free[k]` and zeros in every other free column.
    pub fn kernel_basis(&self) -> Matrix {
        self.kernel_with_free().0
    }

    /// Kernel basis together with the free columns that index it.
    pub fn kernel_with_free(&self) -> (Matrix, Vec<usize>) {
        let red = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(p, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, 1);
            for (r, &pc) in red.pivots.iter().enumerate() {
                let v = red.matrix.get(r, f);
                if v != 0 {
                    k.set(i, pc, neg(p, v));
                }
            }
        }
        (k, free)
    }

    /// Left null space: rows `v` with `v * self = 0`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel_basis()
    }

    /// Basis of the row space (nonzero rows of the rref).
    pub fn image_basis(&self) -> Matrix {
        let red = self.rref();
        let r = red.rank();
        red.matrix.block(0, 0, r, self.cols)
    }

    /// Solves `self * x = b` for a column vector `x`.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let p = self.p;
        let mut aug = Matrix::zeros(p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = b[r] % p;
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in red.pivots.iter().enumerate() {
            x[c] = red.matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `x * self = b` for a row vector `x`.
    pub fn solve_left(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        self.transpose().solve(b)
    }

    /// Solves `X * self = B` row by row; `None` if some row is inconsistent.
    pub fn solve_left_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.cols != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: b.cols });
        }
        // Reduce [self^T | b^T] once and read every solution off it.
        let p = self.p;
        let at = self.transpose();
        let bt = b.transpose();
        let red = at.hstack(&bt).rref();
        let n = self.rows;
        if red.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(p, b.rows, n);
        for (r, &c) in red.pivots.iter().enumerate() {
            for j in 0..b.rows {
                x.set(j, c, red.matrix.get(r, n + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(self.p, 0, 0));
        }
        let red = self.hstack(&Matrix::identity(self.p, n)).rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// A subspace basis with cheap coordinate extraction.
///
/// Rows of `basis` are independent; `coords` solves against them.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub basis: Matrix,
    // rref of the basis and the change of basis from rref rows back to basis rows
    reduced: Matrix,
    pivots: Vec<usize>,
    to_basis: Matrix,
}

impl Subspace {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: Matrix) -> Self {
        let p = basis.prime();
        let n = basis.rows();
        let red = basis.hstack(&Matrix::identity(p, n)).rref();
        let rank = red.pivots.iter().filter(|&&c| c < basis.cols()).count();
        assert_eq!(rank, n, "Subspace::new requires independent rows");
        let reduced = red.matrix.block(0, 0, n, basis.cols());
        // reduced = E * basis, so basis coordinates of v are (rref coords) * E
        let to_basis = red.matrix.block(0, basis.cols(), n, n);
        Subspace { pivots: red.pivots[..n].to_vec(), basis, reduced, to_basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.basis.prime();
        let rc: Vec<u64> = self.pivots.iter().map(|&c| v[c]).collect();
        let recon = self.reduced.apply(&rc);
        if recon != v {
            return None;
        }
        Some(self.to_basis.apply(&rc).into_iter().map(|a| a % p).collect())
    }
}
