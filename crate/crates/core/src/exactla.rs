//! Dense exact linear algebra over prime fields.
//!
//! Everything above this module reduces to kernels, images and linear
//! systems over `F_p`, so the routines here are deliberately plain: dense
//! row-major storage, schoolbook elimination, and a fixed pivoting rule
//! (first nonzero entry top to bottom, normalized to 1) so that results are
//! bit-for-bit reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
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

/// A dense `rows x cols` matrix over a prime field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`FieldMatrix::from_rows`], but with an explicit column count so
    /// that empty row lists still produce the right shape.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(field: PrimeField, rows: &[R], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.p;
            }
        }
        m
    }

    pub fn column_vector(field: PrimeField, v: &[u64]) -> Self {
        Self::from_columns(field, v.len(), &[v.to_vec()])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
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
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p, other.field.p));
        }
        Ok(())
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn try_mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        // Entries are < 2^31, so a few products can be accumulated before
        // reduction without overflowing u64.
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b;
                }
                pending += 1;
                if pending == 3 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (c, x) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = x % p;
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    fn zip_with(&self, other: &FieldMatrix, op: impl Fn(u64, u64) -> u64) -> FieldMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: u64) -> FieldMatrix {
        let f = self.field;
        let s = s % f.p;
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn neg(&self) -> FieldMatrix {
        let f = self.field;
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(other.row(r));
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stacks many matrices vertically; all must share a column count.
    pub fn vstack_all(field: PrimeField, cols: usize, parts: &[FieldMatrix]) -> FieldMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        FieldMatrix { field, rows, cols, data }
    }

    pub fn hstack_all(field: PrimeField, rows: usize, parts: &[FieldMatrix]) -> FieldMatrix {
        parts
            .iter()
            .fold(FieldMatrix::zeros(field, rows, 0), |acc, p| acc.hstack(p))
    }

    /// Block diagonal matrix with the given blocks.
    pub fn block_diag(field: PrimeField, blocks: &[FieldMatrix]) -> FieldMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FieldMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FieldMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> FieldMatrix {
        let mut m = Self::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> FieldMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FieldMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == rows {
                break;
            }
            let Some(found) = (prow..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if found != prow {
                for k in 0..cols {
                    self.data.swap(found * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]);
            for k in c..cols {
                let v = &mut self.data[prow * cols + k];
                *v = f.mul(*v, inv);
            }
            let (before, rest) = self.data.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let factor = row[c];
                if factor != 0 {
                    let nf = f.neg(factor);
                    for k in c..cols {
                        row[k] = (row[k] + nf * pivot_row[k]) % f.p;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space `{v : self * v = 0}`.
    ///
    /// One basis vector per free column, with a 1 in that column and the
    /// negated pivot-row entries elsewhere.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if v != 0 {
                    k.data[pc * free.len() + j] = f.neg(v);
                }
            }
        }
        k
    }

    /// Solves `self * x = b`, returning `None` if some column of `b` is not
    /// in the column space.
    pub fn solve(&self, b: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        let n = self.cols;
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, n + j);
            }
        }
        Ok(Some(x))
    }

    pub fn try_kron(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_field(other)?;
        let f = self.field;
        let mut m = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = f.mul(a, other.get(k, l));
                        m.data[(i * other.rows + k) * m.cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Kronecker product; panics on field mismatch.
    pub fn kron(&self, other: &FieldMatrix) -> FieldMatrix {
        self.try_kron(other).expect("kronecker product")
    }

    /// Column-major vectorization, so that `vec(A X B) = (B^T kron A) vec(X)`.
    pub fn vectorize(&self) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                v.push(self.get(r, c));
            }
        }
        v
    }

    pub fn unvectorize(field: PrimeField, rows: usize, cols: usize, v: &[u64]) -> FieldMatrix {
        assert_eq!(v.len(), rows * cols);
        let mut m = Self::zeros(field, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.data[r * cols + c] = v[c * rows + r];
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Self::identity(self.field, self.rows)).ok().flatten()
    }

    pub fn pow(&self, mut e: u64) -> FieldMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Canonical echelonized basis (as columns) of the column span of `m`.
///
/// Two matrices with the same column span produce identical output.
pub fn column_span(m: &FieldMatrix) -> FieldMatrix {
    let (r, pivots) = m.transpose().rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
}

/// Basis of the intersection of the column spans of `a` and `b`.
pub fn intersect_spans(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    assert_eq!(a.rows(), b.rows());
    let a = column_span(a);
    let b = column_span(b);
    let k = a.hstack(&b.neg()).kernel_basis();
    let coeff = k.block(0, 0, a.cols(), k.cols());
    column_span(&a.mul(&coeff))
}

/// Standard basis vectors completing the column span of `sub` to the whole
/// space, chosen at the non-pivot coordinates of its echelon form.
pub fn complement_coordinates(sub: &FieldMatrix) -> Vec<usize> {
    let (_, pivots) = sub.transpose().rref();
    let mut taken = vec![false; sub.rows()];
    for p in pivots {
        taken[p] = true;
    }
    (0..sub.rows()).filter(|&i| !taken[i]).collect()
}

/// True iff every column of `v` lies in the column span of `span`.
pub fn in_span(span: &FieldMatrix, v: &FieldMatrix) -> bool {
    span.solve(v).expect("in_span shape").is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(PrimeField::MAX_PRIME).is_ok());
    }

    #[test]
    fn rref_identity_and_zero() {
        let i = FieldMatrix::identity(f(2), 3);
        assert_eq!(i.rref(), (i.clone(), vec![0, 1, 2]));
        let z = FieldMatrix::zeros(f(3), 2, 4);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let m = FieldMatrix::from_rows(f(5), &[[1, 2], [2, 4]]);
        let (r, piv) = m.rref();
        assert_eq!(r, FieldMatrix::from_rows(f(5), &[[1, 2], [0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FieldMatrix::identity(f(7), 4).kernel_basis().cols(), 0);
        let z = FieldMatrix::zeros(f(3), 2, 3);
        assert_eq!(z.kernel_basis(), FieldMatrix::identity(f(3), 3));
        let m = FieldMatrix::from_rows(f(2), &[[1, 1]]);
        assert_eq!(m.kernel_basis(), FieldMatrix::from_rows(f(2), &[[1], [1]]));
    }

    #[test]
    fn solve_examples() {
        let b = FieldMatrix::from_rows(f(7), &[[3, 1], [4, 0]]);
        let i = FieldMatrix::identity(f(7), 2);
        assert_eq!(i.solve(&b).unwrap(), Some(b.clone()));
        let m = FieldMatrix::from_rows(f(2), &[[1], [0]]);
        let rhs = FieldMatrix::from_rows(f(2), &[[0], [1]]);
        assert_eq!(m.solve(&rhs).unwrap(), None);
        let m = FieldMatrix::from_rows(f(5), &[[2]]);
        let rhs = FieldMatrix::from_rows(f(5), &[[1]]);
        assert_eq!(m.solve(&rhs).unwrap(), Some(FieldMatrix::from_rows(f(5), &[[3]])));
        let bad = FieldMatrix::zeros(f(5), 3, 1);
        assert!(matches!(m.solve(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_examples() {
        let k = FieldMatrix::identity(f(3), 2).kron(&FieldMatrix::identity(f(3), 3));
        assert_eq!(k, FieldMatrix::identity(f(3), 6));
        let z = FieldMatrix::zeros(f(3), 2, 2).kron(&FieldMatrix::from_rows(f(3), &[[1, 2, 0]]));
        assert!(z.is_zero());
        assert_eq!((z.rows(), z.cols()), (2, 6));
        let a = FieldMatrix::from_rows(f(2), &[[1, 1]]);
        let b = FieldMatrix::from_rows(f(2), &[[1], [1]]);
        assert_eq!(a.kron(&b), FieldMatrix::from_rows(f(2), &[[1, 1], [1, 1]]));
        assert!(matches!(
            a.try_kron(&FieldMatrix::identity(f(3), 1)),
            Err(Error::FieldMismatch(2, 3))
        ));
    }

    #[test]
    fn vectorize_matches_kron_identity() {
        let fp = f(5);
        let a = FieldMatrix::from_rows(fp, &[[1, 2], [3, 4], [0, 1]]);
        let x = FieldMatrix::from_rows(fp, &[[2, 0, 1], [1, 1, 4]]);
        let b = FieldMatrix::from_rows(fp, &[[1, 4], [0, 2], [3, 3]]);
        let lhs = a.mul(&x).mul(&b).vectorize();
        let rhs = b.transpose().kron(&a).mul_vec(&x.vectorize());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn intersection_and_complement() {
        let fp = f(2);
        let a = FieldMatrix::from_rows(fp, &[[1, 0], [0, 1], [0, 0]]);
        let b = FieldMatrix::from_rows(fp, &[[0, 0], [1, 0], [0, 1]]);
        let i = intersect_spans(&a, &b);
        assert_eq!(i, FieldMatrix::from_rows(fp, &[[0], [1], [0]]));
        assert_eq!(complement_coordinates(&a), vec![2]);
    }
}
