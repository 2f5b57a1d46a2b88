//! Dense exact linear algebra over an arbitrary exact field scalar.
//!
//! Everything here is deterministic and allocation-happy rather than clever:
//! the matrices arising from adjoint actions stay below ~170 columns, so
//! fraction-free elimination with arbitrary-precision rationals is entirely
//! adequate. No floating point is used anywhere.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// An exact scalar: a field with by-value arithmetic. `BigRational` is the
/// intended instance; any exact field type with these ops works.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not nilpotent: no power up to the dimension ({0}) vanishes")]
    NotNilpotent(usize),
    #[error("matrix I - s is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Jordan type of a nilpotent matrix: weakly decreasing block sizes summing
/// to the ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType {
    parts: Vec<usize>,
}

impl JordanType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Rank sequence `rank(m^k)` reconstructed from the block sizes.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let max = self.parts.first().copied().unwrap_or(0);
        (0..=max)
            .map(|k| self.parts.iter().map(|&p| p.saturating_sub(k)).sum())
            .collect()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut mult = 0;
            while i < self.parts.len() && self.parts[i] == p {
                mult += 1;
                i += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{mult}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + other[(r, c)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - other[(r, c)].clone()
        })
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() * s.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out: Matrix<S> = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = out[(r, c)].clone() + a.clone() * b.clone();
                    out[(r, c)] = t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = acc + self[(r, c)].clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    /// Trace of `self · other` without forming the product.
    pub fn trace_mul(&self, other: &Self) -> S {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut t = S::zero();
        for r in 0..self.rows {
            for k in 0..self.cols {
                if !self[(r, k)].is_zero() && !other[(k, r)].is_zero() {
                    t = t + self[(r, k)].clone() * other[(k, r)].clone();
                }
            }
        }
        t
    }

    pub fn pow(&self, mut k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Row-major flattening, used to treat matrices as vectors of length `rows·cols`.
    pub fn flatten(&self) -> Vec<S> {
        self.data.clone()
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = S::one();
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row >= rows {
                break;
            }
            // find a pivot in this column
            let mut sel = None;
            for r in pivot_row..rows {
                if !m[r * cols + col].is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            m.swap(sel * cols + 0, pivot_row * cols + 0);
            for c in 1..cols {
                m.swap(sel * cols + c, pivot_row * cols + c);
            }
            let pivot = m[pivot_row * cols + col].clone();
            for r in (pivot_row + 1)..rows {
                for c in (col + 1)..cols {
                    let val = m[r * cols + c].clone() * pivot.clone()
                        - m[r * cols + col].clone() * m[pivot_row * cols + c].clone();
                    m[r * cols + c] = val / prev.clone();
                }
                m[r * cols + col] = S::zero();
            }
            prev = pivot;
            pivot_row += 1;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow >= m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(sel, prow);
            let inv = m[(prow, col)].clone();
            for c in col..m.cols {
                let v = m[(prow, c)].clone() / inv.clone();
                m[(prow, c)] = v;
            }
            for r in 0..m.rows {
                if r != prow && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = m[(r, c)].clone() - factor.clone() * m[(prow, c)].clone();
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![S::zero(); self.cols];
            v[fc] = S::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref[(prow, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self·x = b` if it exists.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow >= aug.rows {
                break;
            }
            let Some(sel) = (prow..aug.rows).find(|&r| !aug[(r, col)].is_zero()) else {
                continue;
            };
            aug.swap_rows(sel, prow);
            let inv = aug[(prow, col)].clone();
            for c in col..=self.cols {
                let v = aug[(prow, c)].clone() / inv.clone();
                aug[(prow, c)] = v;
            }
            for r in 0..aug.rows {
                if r != prow && !aug[(r, col)].is_zero() {
                    let factor = aug[(r, col)].clone();
                    for c in col..=self.cols {
                        let v = aug[(r, c)].clone() - factor.clone() * aug[(prow, c)].clone();
                        aug[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        // inconsistent if a zero row has nonzero rhs
        for r in prow..aug.rows {
            if !aug[(r, self.cols)].is_zero() {
                return None;
            }
        }
        let mut x = vec![S::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(prow, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse, if the matrix is invertible.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| rref[(r, n + c)].clone()))
    }

    /// Is some power of the matrix zero? Uses repeated squaring up to the
    /// ambient dimension as a cheap certificate.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return true;
        }
        let mut p = self.clone();
        let mut k = 1usize;
        while k < n {
            if p.is_zero() {
                return true;
            }
            p = p.mul(&p);
            k *= 2;
        }
        p.is_zero()
    }

    /// Jordan type of a nilpotent matrix, from the rank sequence of its powers.
    pub fn jordan_type_nilpotent(&self) -> Result<JordanType, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        if !self.is_nilpotent() {
            return Err(LinalgError::NotNilpotent(n));
        }
        // ranks[k] = rank(self^k); stops once the power vanishes
        let mut ranks = vec![n];
        let mut p = Matrix::identity(n);
        loop {
            p = p.mul(self);
            if p.is_zero() {
                ranks.push(0);
                break;
            }
            ranks.push(p.rank());
        }
        let kmax = ranks.len() - 1;
        let mut parts = Vec::new();
        for j in 1..=kmax {
            let above = if j + 1 <= kmax { ranks[j + 1] } else { 0 };
            let mult = (ranks[j - 1] + above).saturating_sub(2 * ranks[j]);
            for _ in 0..mult {
                parts.push(j);
            }
        }
        let jt = JordanType::new(parts);
        debug_assert_eq!(jt.total(), n);
        Ok(jt)
    }

    /// Cayley transform `(I + s)(I − s)^{-1}` of a form-skew matrix; the
    /// result preserves the form exactly.
    pub fn cayley_orthogonal(s: &Self, form: &Self) -> Result<Self, LinalgError> {
        assert!(s.is_square() && form.is_square());
        debug_assert!(
            s.transpose().mul(form).add(&form.mul(s)).is_zero(),
            "input is not skew with respect to the form"
        );
        let id = Matrix::identity(s.rows);
        let minus = id.sub(s);
        let inv = minus.inverse().ok_or(LinalgError::Singular)?;
        Ok(id.add(s).mul(&inv))
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

/// Incremental span membership and coordinate solver.
///
/// Holds the echelonized generating set together with the expression of each
/// echelon row in the original generators, so membership queries and
/// coordinatization run in `O(generators · length)` per call.
#[derive(Clone, Debug)]
pub struct SpanSolver<S> {
    /// echelon rows, each with its pivot position
    echelon: Vec<(usize, Vec<S>, Vec<S>)>,
    generators: usize,
}

impl<S: Scalar> SpanSolver<S> {
    pub fn new(generators: &[Vec<S>]) -> Self {
        let length = generators.first().map_or(0, Vec::len);
        let n = generators.len();
        let mut solver = SpanSolver {
            echelon: Vec::new(),
            generators: n,
        };
        for (i, g) in generators.iter().enumerate() {
            assert_eq!(g.len(), length, "generator length mismatch");
            let mut combo = vec![S::zero(); n];
            combo[i] = S::one();
            solver.insert(g.clone(), combo);
        }
        solver
    }

    fn reduce(&self, mut v: Vec<S>, mut combo: Vec<S>) -> (Vec<S>, Vec<S>) {
        for (pivot, row, row_combo) in &self.echelon {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row.iter()) {
                if !b.is_zero() {
                    *a = a.clone() - factor.clone() * b.clone();
                }
            }
            for (a, b) in combo.iter_mut().zip(row_combo.iter()) {
                if !b.is_zero() {
                    *a = a.clone() - factor.clone() * b.clone();
                }
            }
        }
        (v, combo)
    }

    fn insert(&mut self, v: Vec<S>, combo: Vec<S>) -> bool {
        let (v, combo) = self.reduce(v, combo);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].clone();
        let v: Vec<S> = v.into_iter().map(|x| x / inv.clone()).collect();
        let combo: Vec<S> = combo.into_iter().map(|x| x / inv.clone()).collect();
        self.echelon.push((pivot, v, combo));
        true
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let (rem, _) = self.reduce(v.to_vec(), vec![S::zero(); self.generators]);
        rem.iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` over the generators, if `v` lies in their span.
    /// Requires the generators to be linearly independent.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(
            self.rank(),
            self.generators,
            "coordinates need independent generators"
        );
        let (rem, combo) = self.reduce(v.to_vec(), vec![S::zero(); self.generators]);
        if rem.iter().all(Zero::is_zero) {
            Some(combo.into_iter().map(|c| -c).collect())
        } else {
            None
        }
    }
}
