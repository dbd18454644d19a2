//! Dense linear algebra over a prime field.
//!
//! Every hom-space, factorization ideal and subspace comparison in the crate
//! bottoms out here. Matrices act on column vectors; a basis of a subspace is
//! always stored as the columns of a [`Mat`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// The prime characteristic of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldPrime(u32);

impl FieldPrime {
    /// Largest accepted characteristic. Products of two residues stay well
    /// inside `u64`.
    pub const MAX: u32 = 65_521;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldPrime(p))
    }

    pub const fn two() -> Self {
        FieldPrime(2)
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    /// Number of vectors in `F_p^dim`, or `None` once it passes `cap`.
    pub fn count_vectors(self, dim: usize, cap: u64) -> Option<u64> {
        let mut n: u64 = 1;
        for _ in 0..dim {
            n = n.checked_mul(self.0 as u64)?;
            if n > cap {
                return None;
            }
        }
        Some(n)
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Enumerates all coefficient vectors of `F_p^dim` in lexicographic order
/// (last coordinate fastest). The zero vector comes first.
#[derive(Clone, Debug)]
pub struct VectorEnumerator {
    p: u32,
    cur: Vec<u32>,
    done: bool,
}

impl VectorEnumerator {
    pub fn new(field: FieldPrime, dim: usize) -> Self {
        VectorEnumerator {
            p: field.p(),
            cur: vec![0; dim],
            done: false,
        }
    }
}

impl Iterator for VectorEnumerator {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.p {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

/// Dense row-major matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldPrime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Mat {
    pub fn zeros(field: FieldPrime, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldPrime, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    pub fn from_rows(field: FieldPrime, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = field.reduce(v);
            }
        }
        m
    }

    /// Takes ownership of row-major data; entries are reduced mod p.
    pub fn from_vec(field: FieldPrime, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        let p = field.p();
        let data = data.into_iter().map(|v| v % p).collect();
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn column_vector(field: FieldPrime, v: &[u32]) -> Self {
        Mat::from_vec(field, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: FieldPrime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % field.p();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> FieldPrime {
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
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.data[i * m.cols + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            m.data[k * self.cols..(k + 1) * self.cols]
                .copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Mat::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = ((*o as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for (j, &x) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        self.zip_with(rhs, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        self.zip_with(rhs, |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        let c = c % f.p();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn zip_with(&self, rhs: &Mat, op: impl Fn(FieldPrime, u32, u32) -> u32) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "elementwise shape mismatch"
        );
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| op(f, a, b))
            .collect();
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation; every block must have `rows` rows.
    pub fn hstack(field: FieldPrime, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    m.data[i * cols + off + j] = b.get(i, j);
                }
            }
            off += b.cols;
        }
        m
    }

    /// Vertical concatenation; every block must have `cols` columns.
    pub fn vstack(field: FieldPrime, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: FieldPrime, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        m
    }

    /// Reduced row echelon form together with the strictly increasing list of
    /// pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in col..m.cols {
                let v = m.get(row, j);
                m.data[row * m.cols + j] = f.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(row, j)));
                    m.data[r * m.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space, one per free column of the
    /// echelon form, in increasing free-column order.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + idx] = 1 % f.p();
            for (pr, &pc) in pivots.iter().enumerate() {
                k.data[pc * free.len() + idx] = f.neg(r.get(pr, fc));
            }
        }
        debug_assert_eq!(pivots.len() + free.len(), self.cols);
        k
    }

    /// Solves `self * x = b`. Free variables are set to zero; `Ok(None)` means
    /// the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch {
                op: "solve",
                expected: self.rows,
                found: b.rows,
            });
        }
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(pr, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.clone());
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Mat::identity(self.field, self.rows)).ok().flatten()
    }

    /// Some `R` with `self * R = 1`; exists iff `self` has full row rank.
    pub fn right_inverse(&self) -> Option<Mat> {
        self.solve(&Mat::identity(self.field, self.rows))
            .ok()
            .flatten()
    }

    /// Some `L` with `L * self = 1`; exists iff `self` has full column rank.
    pub fn left_inverse(&self) -> Option<Mat> {
        self.transpose().right_inverse().map(|m| m.transpose())
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Matrix `Q` of full row rank whose kernel is the column space of `self`.
    /// `Q` represents the projection onto the quotient space.
    pub fn cokernel_projection(&self) -> Mat {
        self.transpose().kernel_basis().transpose()
    }
}

/// Basis of the span of all input columns.
pub fn subspace_sum(field: FieldPrime, ambient: usize, bases: &[Mat]) -> Result<Mat> {
    for b in bases {
        if b.rows() != ambient {
            return Err(Error::DimensionMismatch {
                op: "subspace_sum",
                expected: ambient,
                found: b.rows(),
            });
        }
    }
    let refs: Vec<&Mat> = bases.iter().collect();
    Ok(Mat::hstack(field, ambient, &refs).column_space())
}

/// Whether `v` lies in the column span of `basis`.
pub fn subspace_contains(basis: &Mat, v: &[u32]) -> Result<bool> {
    if basis.rows() != v.len() {
        return Err(Error::DimensionMismatch {
            op: "subspace_contains",
            expected: basis.rows(),
            found: v.len(),
        });
    }
    let b = Mat::column_vector(basis.field(), v);
    Ok(basis.solve(&b)?.is_some())
}

/// Whether the column span of `a` is contained in that of `b`.
pub fn span_included(a: &Mat, b: &Mat) -> bool {
    assert_eq!(a.rows(), b.rows(), "ambient dimension mismatch");
    if a.cols() == 0 {
        return true;
    }
    let rb = b.rank();
    let both = Mat::hstack(a.field(), a.rows(), &[a, b]);
    both.rank() == rb
}

/// Whether two column spans coincide.
pub fn span_equal(a: &Mat, b: &Mat) -> bool {
    span_included(a, b) && span_included(b, a)
}

/// Basis (as columns) of `{ x : a x ∈ span(target) }`.
pub fn preimage(a: &Mat, target: &Mat) -> Mat {
    assert_eq!(a.rows(), target.rows(), "preimage ambient mismatch");
    let n = a.cols();
    let joined = Mat::hstack(a.field(), a.rows(), &[a, target]);
    let k = joined.kernel_basis();
    let top = k.block(0, 0, n, k.cols());
    top.column_space()
}

/// Reduction of coordinate vectors modulo a subspace, with a deterministic
/// transversal: coordinates at non-pivot positions of the subspace's echelon
/// form parametrize the quotient.
#[derive(Clone, Debug)]
pub struct QuotientReducer {
    field: FieldPrime,
    ambient: usize,
    echelon: Mat,
    pivots: Vec<usize>,
    transversal: Vec<usize>,
}

impl QuotientReducer {
    /// `sub` holds a spanning set of the subspace as columns.
    pub fn new(field: FieldPrime, ambient: usize, sub: &Mat) -> Self {
        assert_eq!(sub.rows(), ambient, "subspace ambient mismatch");
        let (r, pivots) = sub.transpose().rref();
        let echelon = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        let transversal = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        QuotientReducer {
            field,
            ambient,
            echelon,
            pivots,
            transversal,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.transversal.len()
    }

    /// Ambient positions whose unit vectors form the coset transversal.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Basis of the subspace in echelon form, as columns.
    pub fn sub_basis(&self) -> Mat {
        self.echelon.transpose()
    }

    /// Coordinates of the coset of `v` with respect to the transversal.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "reduce ambient mismatch");
        let f = self.field;
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                let e = self.echelon.get(r, j);
                if e != 0 {
                    *wj = f.sub(*wj, f.mul(c, e));
                }
            }
        }
        self.transversal.iter().map(|&t| w[t]).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Ambient vector of the transversal representative of a coset.
    pub fn lift(&self, coset: &[u32]) -> Vec<u32> {
        assert_eq!(coset.len(), self.transversal.len());
        let mut v = vec![0; self.ambient];
        for (&t, &c) in self.transversal.iter().zip(coset) {
            v[t] = c;
        }
        v
    }
}
