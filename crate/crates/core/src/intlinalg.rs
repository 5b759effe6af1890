//! Exact integer matrices: Smith normal form with transformation matrices
//! and integer linear system solving.
//!
//! The reduction is generic over [`IntScalar`]; every arithmetic step is
//! checked, so a fixed-width scalar reports [`Overflow`] instead of
//! wrapping. The public entry points on [`IntMatrix`] run the reduction in
//! `i64` first and fall back to arbitrary precision when an intermediate
//! value does not fit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Integer scalar usable by the exact reduction.
pub trait IntScalar:
    Clone + fmt::Debug + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul
{
}

impl<T> IntScalar for T where
    T: Clone + fmt::Debug + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul
{
}

/// An intermediate value left the range of the scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow during exact matrix reduction")]
pub struct Overflow;

/// Dense row-major matrix over an integer scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: IntScalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length must equal rows * cols");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: nrows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn as_slice(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Submatrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = add_mul(&out.data[idx], a, b)?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_mul_vec(&self, v: &[R]) -> Result<Vec<R>, Overflow> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = add_mul(&acc, a, x)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("arbitrary precision arithmetic cannot overflow")
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.checked_mul_vec(v).expect("arbitrary precision arithmetic cannot overflow")
    }

    fn to_i64(&self) -> Option<Matrix<i64>> {
        let data = self.data.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

/// Arbitrary precision integer matrix.
pub type IntMatrix = Matrix<BigInt>;

fn add_mul<R: IntScalar>(acc: &R, a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_mul(b).and_then(|p| acc.checked_add(&p)).ok_or(Overflow)
}

fn sub_mul<R: IntScalar>(acc: &R, q: &R, b: &R) -> Result<R, Overflow> {
    q.checked_mul(b).and_then(|p| acc.checked_sub(&p)).ok_or(Overflow)
}

fn checked_neg<R: IntScalar>(x: &R) -> Result<R, Overflow> {
    R::zero().checked_sub(x).ok_or(Overflow)
}

/// `U · A · V = S` with `U`, `V` unimodular and `S` in Smith normal form.
///
/// The inverses of both transforms are tracked alongside, so bases of
/// images and kernels can be read off without a separate inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<R> {
    pub u: Matrix<R>,
    pub s: Matrix<R>,
    pub v: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v_inv: Matrix<R>,
    rank: usize,
}

impl<R: IntScalar> SmithDecomposition<R> {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn invariant_factors(&self) -> Vec<R> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Solves `A x = b` for the decomposed `A`, if an integer solution exists.
    ///
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[R]) -> Result<Option<Vec<R>>, Overflow> {
        let c = self.u.checked_mul_vec(b)?;
        let mut y = vec![R::zero(); self.s.cols()];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let (q, r) = ci.div_rem(self.s.get(i, i));
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
        self.v.checked_mul_vec(&y).map(Some)
    }
}

impl SmithDecomposition<i64> {
    fn widen(self) -> SmithDecomposition<BigInt> {
        let w = |m: Matrix<i64>| m.map(|&x| BigInt::from(x));
        SmithDecomposition {
            u: w(self.u),
            s: w(self.s),
            v: w(self.v),
            u_inv: w(self.u_inv),
            v_inv: w(self.v_inv),
            rank: self.rank,
        }
    }
}

struct Reducer<R> {
    a: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: IntScalar> Reducer<R> {
    fn new(a: Matrix<R>) -> Self {
        let (m, n) = (a.rows, a.cols);
        Reducer {
            a,
            u: Matrix::identity(m),
            u_inv: Matrix::identity(m),
            v: Matrix::identity(n),
            v_inv: Matrix::identity(n),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_rows(&mut self.a, i, j);
        swap_rows(&mut self.u, i, j);
        swap_cols(&mut self.u_inv, i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        swap_cols(&mut self.v, i, j);
        swap_rows(&mut self.v_inv, i, j);
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &R) -> Result<(), Overflow> {
        row_sub_mul(&mut self.a, dst, src, q)?;
        row_sub_mul(&mut self.u, dst, src, q)?;
        // inverse: col[src] += q * col[dst]
        col_sub_mul(&mut self.u_inv, src, dst, &checked_neg(q)?)
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &R) -> Result<(), Overflow> {
        col_sub_mul(&mut self.a, dst, src, q)?;
        col_sub_mul(&mut self.v, dst, src, q)?;
        row_sub_mul(&mut self.v_inv, src, dst, &checked_neg(q)?)
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        negate_row(&mut self.a, i)?;
        negate_row(&mut self.u, i)?;
        negate_col(&mut self.u_inv, i)
    }

    /// Smallest nonzero absolute value in the trailing block, ties by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(R, usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((ax, i, j));
                    if unit {
                        return best.map(|(_, i, j)| (i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(mut self) -> Result<SmithDecomposition<R>, Overflow> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut rank = 0;
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return self.finish(rank);
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&p);
                    self.row_axpy(i, t, &q)?;
                    clean &= self.a.get(i, t).is_zero();
                }
                for j in t + 1..n {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&p);
                    self.col_axpy(j, t, &q)?;
                    clean &= self.a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a.get(i, j).is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.row_axpy(t, i, &checked_neg(&R::one())?)?,
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t)?;
            }
            rank = t + 1;
        }
        self.finish(rank)
    }

    fn finish(self, rank: usize) -> Result<SmithDecomposition<R>, Overflow> {
        Ok(SmithDecomposition {
            u: self.u,
            s: self.a,
            v: self.v,
            u_inv: self.u_inv,
            v_inv: self.v_inv,
            rank,
        })
    }
}

fn swap_rows<R>(m: &mut Matrix<R>, i: usize, j: usize) {
    for k in 0..m.cols {
        m.data.swap(i * m.cols + k, j * m.cols + k);
    }
}

fn swap_cols<R>(m: &mut Matrix<R>, i: usize, j: usize) {
    for k in 0..m.rows {
        m.data.swap(k * m.cols + i, k * m.cols + j);
    }
}

fn row_sub_mul<R: IntScalar>(m: &mut Matrix<R>, dst: usize, src: usize, q: &R) -> Result<(), Overflow> {
    if q.is_zero() {
        return Ok(());
    }
    for k in 0..m.cols {
        let s = &m.data[src * m.cols + k];
        if s.is_zero() {
            continue;
        }
        let v = sub_mul(&m.data[dst * m.cols + k], q, s)?;
        m.data[dst * m.cols + k] = v;
    }
    Ok(())
}

fn col_sub_mul<R: IntScalar>(m: &mut Matrix<R>, dst: usize, src: usize, q: &R) -> Result<(), Overflow> {
    if q.is_zero() {
        return Ok(());
    }
    for k in 0..m.rows {
        let s = &m.data[k * m.cols + src];
        if s.is_zero() {
            continue;
        }
        let v = sub_mul(&m.data[k * m.cols + dst], q, s)?;
        m.data[k * m.cols + dst] = v;
    }
    Ok(())
}

fn negate_row<R: IntScalar>(m: &mut Matrix<R>, i: usize) -> Result<(), Overflow> {
    for k in 0..m.cols {
        let idx = i * m.cols + k;
        m.data[idx] = checked_neg(&m.data[idx])?;
    }
    Ok(())
}

fn negate_col<R: IntScalar>(m: &mut Matrix<R>, j: usize) -> Result<(), Overflow> {
    for k in 0..m.rows {
        let idx = k * m.cols + j;
        m.data[idx] = checked_neg(&m.data[idx])?;
    }
    Ok(())
}

/// Smith normal form over any checked integer scalar.
pub fn smith_normal_form_in<R: IntScalar>(a: &Matrix<R>) -> Result<SmithDecomposition<R>, Overflow> {
    Reducer::new(a.clone()).run()
}

/// Smith normal form of an arbitrary precision matrix.
///
/// Runs in `i64` when the input fits and repeats the reduction in
/// arbitrary precision if any intermediate overflows. Both paths pivot
/// identically, so the result does not depend on which one finished.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition<BigInt> {
    if let Some(small) = a.to_i64() {
        if let Ok(d) = smith_normal_form_in(&small) {
            return d.widen();
        }
    }
    smith_normal_form_in(a).expect("arbitrary precision arithmetic cannot overflow")
}

/// Some integer `x` with `A x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal the row count");
    let x = smith_normal_form(a)
        .solve(b)
        .expect("arbitrary precision arithmetic cannot overflow")?;
    assert_eq!(a.mul_vec(&x), b, "integer solve produced a non-solution");
    Some(x)
}

/// Absolute determinant of a square matrix, from its Smith form.
pub fn abs_determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let d = smith_normal_form(a);
    if d.rank() < a.rows() {
        return BigInt::zero();
    }
    d.invariant_factors().iter().fold(BigInt::one(), |acc, x| acc * x)
}
