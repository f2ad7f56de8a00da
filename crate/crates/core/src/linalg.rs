//! Exact dense linear algebra over a prime field.
//!
//! Everything in this crate is a dimension count, so a prime field is enough:
//! no object in scope needs an algebraic closure. Elimination is
//! deterministic (leftmost pivot column, topmost candidate row), which keeps
//! every derived basis reproducible.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 32003;

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    /// Representative in `(-p/2, p/2]`, used for display and serialization.
    pub fn to_signed(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
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

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(
            !a.is_multiple_of(self.p),
            "inverse of zero in GF({})",
            self.p
        );
        self.pow(a, self.p - 2)
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: i64) -> u64 {
        if e.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Dense row-major matrix over a [`PrimeField`]. Zero rows or columns are
/// allowed and stand for maps out of or into the zero space.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix[{}x{} mod {}]",
            self.rows, self.cols, self.field.p
        )?;
        for i in 0..self.rows {
            let row: Vec<i64> = (0..self.cols)
                .map(|j| self.field.to_signed(self.get(i, j)))
                .collect();
            write!(f, "\n  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = field.reduce(f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from integer rows, reducing modulo `p`. `cols` is
    /// needed to describe the shape when `rows` is empty.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j]))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.field.to_signed(self.get(i, j)))
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "matrices over different fields");
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x = f.add(*x, *y);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x = f.mul(*x, c));
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]) as i64
        })
    }

    /// Horizontal concatenation. All parts must have `rows` rows.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.data[i * cols + off + j] = m.get(i, j);
                }
            }
            off += m.cols;
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (r0, c0) = a.shape();
        Matrix::from_fn(a.field, r0 + c.rows, c0 + b.cols, |i, j| {
            let v = match (i < r0, j < c0) {
                (true, true) => a.get(i, j),
                (true, false) => b.get(i, j - c0),
                (false, true) => c.get(i - r0, j),
                (false, false) => d.get(i - r0, j - c0),
            };
            v as i64
        })
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in 0..m.cols {
                let idx = row * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.mul(factor, m.get(row, j));
                    let idx = i * m.cols + j;
                    m.data[idx] = f.sub(m.data[idx], v);
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

    /// Indices of a maximal independent set of columns (the pivot columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Basis of the null space, as the columns of a `cols × (cols - rank)`
    /// matrix. One basis vector per free column, with a 1 in that slot.
    pub fn kernel(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(prow, fc)));
            }
        }
        out
    }

    /// A solution `x` of `self · x = rhs` (free variables set to zero), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(prow, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&id)
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        (0..k).fold(Matrix::identity(self.field, self.rows), |acc, _| {
            acc.mul(self)
        })
    }
}

/// Rank of `m`.
pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Kernel basis of `m` as columns.
pub fn solve_kernel(m: &Matrix) -> Matrix {
    m.kernel()
}

/// Homology dimension at the middle of `· --d_in--> M --d_out--> ·`.
pub fn homology_dim(d_in: &Matrix, d_out: &Matrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::ShapeMismatch(format!(
            "incoming map lands in dimension {}, outgoing map starts in dimension {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositeNotZero);
    }
    Ok(d_out.cols() - d_out.rank() - d_in.rank())
}
