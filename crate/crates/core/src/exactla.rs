//! Dense exact linear algebra.
//!
//! Rank and determinant of rational matrices go through fraction-free
//! (Bareiss) elimination on an integer lift of the rows. Kernels and solves use
//! Gauss-Jordan elimination that pivots only on units, which makes the same
//! code valid over first-order jets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Coeff, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<C: Coeff = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<C: Coeff> {
    pub reduced: Matrix<C>,
    /// `pivots[k]` is the pivot column of row `k`.
    pub pivots: Vec<usize>,
}

impl<C: Coeff> Echelon<C> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one vector per free column, in column order, with a 1 in
    /// that free column and 0 in every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<C>> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![C::zero(); cols];
                v[free] = C::one();
                for (k, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced.get(k, free).clone();
                }
                v
            })
            .collect()
    }
}

impl<C: Coeff> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<C>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn diagonal(entries: &[C]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack {} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(C::zero(), |acc, k| acc + self.get(r, k).clone() * other.get(k, c).clone())
        }))
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination. Pivot: the first unit at or below the current
    /// row, scanning columns left to right.
    ///
    /// Over a field this never fails. Over jets it fails with
    /// [`Error::RankJump`] if a nonzero non-unit survives below the pivots.
    pub fn try_rref(&self) -> Result<Echelon<C>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some((p, inv)) = (r..a.rows).find_map(|i| a.get(i, col).inverse().map(|v| (i, v))) else {
                continue;
            };
            a.swap_rows(p, r);
            for c in col..a.cols {
                let v = a.get(r, c).clone() * inv.clone();
                a.set(r, c, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for c in col..a.cols {
                    let v = a.get(i, c).clone() - factor.clone() * a.get(r, c).clone();
                    a.set(i, c, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        if (r..a.rows).any(|i| a.row(i).iter().any(|v| !v.is_zero())) {
            return Err(Error::RankJump);
        }
        Ok(Echelon { reduced: a, pivots })
    }

    pub fn try_kernel_basis(&self) -> Result<Vec<Vec<C>>> {
        Ok(self.try_rref()?.kernel_basis())
    }

    /// One solution of `self * v = b`, free variables set to zero.
    pub fn try_solve(&self, b: &[C]) -> Result<Vec<C>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { b[r].clone() }
        });
        let ech = aug.try_rref()?;
        if ech.pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut v = vec![C::zero(); self.cols];
        for (k, &p) in ech.pivots.iter().enumerate() {
            v[p] = ech.reduced.get(k, self.cols).clone();
        }
        Ok(v)
    }

    pub fn try_inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                C::one()
            } else {
                C::zero()
            }
        });
        let ech = aug.try_rref()?;
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::NoSolution);
        }
        Ok(Matrix::from_fn(n, n, |r, c| ech.reduced.get(r, n + c).clone()))
    }
}

impl Matrix<Scalar> {
    /// Integer rows obtained by clearing each row's denominators.
    /// Returns the rows and the per-row scale factors.
    fn integer_lift(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let lcm = self.row(r).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            rows.push(self.row(r).iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
            scales.push(lcm);
        }
        (rows, scales)
    }

    /// Exact rank by Bareiss elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_lift();
        bareiss(&mut a, self.cols).rank
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let (mut a, scales) = self.integer_lift();
        let out = bareiss(&mut a, n);
        if out.rank < n {
            return Ok(Scalar::zero());
        }
        let mut d = a[n - 1][n - 1].clone();
        if out.odd_swaps {
            d = -d;
        }
        let scale: BigInt = scales.into_iter().product();
        Ok(Scalar::new(d, scale))
    }

    /// Rank by plain Gauss-Jordan over the rationals; kept as a second route
    /// for cross-checking [`Matrix::rank`].
    pub fn rank_by_fractions(&self) -> usize {
        self.rref().rank()
    }

    pub fn rref(&self) -> Echelon<Scalar> {
        self.try_rref().expect("elimination over a field cannot leave a residual")
    }

    /// Right kernel, echelon-normalized (see [`Echelon::kernel_basis`]).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().kernel_basis()
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.try_solve(b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.try_inverse()
    }
}

struct BareissOutcome {
    rank: usize,
    odd_swaps: bool,
}

/// Fraction-free row echelon reduction in place. Every division is exact.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> BareissOutcome {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in col + 1..cols {
                let num = &pivot_row[col] * &row[j] - &row[col] * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    BareissOutcome { rank: r, odd_swaps }
}

/// `value + deriv * eps` with `eps^2 = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetScalar {
    pub value: Scalar,
    pub deriv: Scalar,
}

impl JetScalar {
    pub fn new(value: Scalar, deriv: Scalar) -> Self {
        JetScalar { value, deriv }
    }

    pub fn constant(value: Scalar) -> Self {
        JetScalar { value, deriv: Scalar::zero() }
    }

    pub fn epsilon() -> Self {
        JetScalar { value: Scalar::zero(), deriv: Scalar::one() }
    }

    /// Division; fails when the divisor has zero value part.
    pub fn checked_div(&self, other: &JetScalar) -> Option<JetScalar> {
        other.inverse().map(|inv| self.clone() * inv)
    }
}

impl fmt::Debug for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}e", self.value, self.deriv)
    }
}

impl Add for JetScalar {
    type Output = JetScalar;
    fn add(self, o: JetScalar) -> JetScalar {
        JetScalar { value: self.value + o.value, deriv: self.deriv + o.deriv }
    }
}

impl Sub for JetScalar {
    type Output = JetScalar;
    fn sub(self, o: JetScalar) -> JetScalar {
        JetScalar { value: self.value - o.value, deriv: self.deriv - o.deriv }
    }
}

impl Mul for JetScalar {
    type Output = JetScalar;
    fn mul(self, o: JetScalar) -> JetScalar {
        let deriv = &self.value * &o.deriv + &self.deriv * &o.value;
        JetScalar { value: self.value * o.value, deriv }
    }
}

impl Neg for JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        JetScalar { value: -self.value, deriv: -self.deriv }
    }
}

impl Zero for JetScalar {
    fn zero() -> Self {
        JetScalar::constant(Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }
}

impl One for JetScalar {
    fn one() -> Self {
        JetScalar::constant(Scalar::one())
    }
}

impl Coeff for JetScalar {
    fn from_scalar(s: Scalar) -> Self {
        JetScalar::constant(s)
    }

    fn inverse(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        let inv = self.value.recip();
        let deriv = -(&self.deriv * &inv * &inv);
        Some(JetScalar { value: inv, deriv })
    }

    fn value(&self) -> Scalar {
        self.value.clone()
    }
}

/// Rank of the first-order (epsilon) part of a jet matrix.
pub fn jet_rank_matrix(m: &Matrix<JetScalar>) -> usize {
    m.map(|j| j.deriv.clone()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{frac, int};

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Scalar>::zeros(3, 5).rank(), 0);
        assert_eq!(Matrix::<Scalar>::identity(4).rank(), 4);
        assert_eq!(m(vec![vec![0, 1, 0]]).rank(), 1);
        assert_eq!(m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Scalar>::identity(3).kernel_basis().is_empty());
        let k = m(vec![vec![0, 1, 0]]).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), frac(1, 2), int(-7)];
        assert_eq!(Matrix::identity(3).solve(&b).unwrap(), b);
        assert_eq!(m(vec![vec![1, 1]]).solve(&[int(2)]).unwrap(), vec![int(2), int(0)]);
        assert_eq!(m(vec![vec![1, 1], vec![1, 1]]).solve(&[int(1), int(2)]), Err(Error::NoSolution));
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::diagonal(&[int(2), int(3)]).det().unwrap(), int(6));
        // Sylvester matrix of (x1^2, x2^2) is the 4x4 identity
        assert_eq!(Matrix::<Scalar>::identity(4).det().unwrap(), int(1));
        assert_eq!(m(vec![vec![0, 1], vec![1, 0]]).det().unwrap(), int(-1));
        let r = Matrix::from_rows(vec![vec![frac(1, 2), int(1)], vec![int(3), frac(2, 3)]]).unwrap();
        assert_eq!(r.det().unwrap(), frac(1, 3) - int(3));
        assert!(matches!(Matrix::<Scalar>::zeros(2, 3).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_err());
    }

    #[test]
    fn jet_arithmetic() {
        let a = JetScalar::new(int(2), int(3));
        let b = JetScalar::new(int(5), int(-1));
        let p = a.clone() * b.clone();
        assert_eq!(p, JetScalar::new(int(10), int(13)));
        let q = p.checked_div(&b).unwrap();
        assert_eq!(q, a);
        assert!(a.checked_div(&JetScalar::epsilon()).is_none());
    }

    #[test]
    fn jet_elimination_rejects_rank_jump() {
        // [[eps]] has value-rank 0 but is not zero
        let mat = Matrix::from_rows(vec![vec![JetScalar::epsilon()]]).unwrap();
        assert_eq!(mat.try_rref().unwrap_err(), Error::RankJump);
    }

    #[test]
    fn jet_rank_of_derivative_block() {
        let e = JetScalar::epsilon;
        let one = || JetScalar::constant(int(1));
        let mat = Matrix::from_rows(vec![vec![one(), e()], vec![one(), e()]]).unwrap();
        assert_eq!(jet_rank_matrix(&mat), 1);
    }
}
