//! Exact rational scalars, monomials and homogeneous forms.
//!
//! Every matrix built elsewhere in the crate indexes its rows and columns by
//! [`monomial_basis`], so the order defined here is load-bearing: graded
//! lexicographic with `x1 > x2 > ... > xn`, largest monomial first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Matrix;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Coefficient ring for forms and matrices.
///
/// Implemented by [`Scalar`] (a field) and by
/// [`JetScalar`](crate::exactla::JetScalar) (first-order jets, a local ring).
/// Elimination pivots only on units, so generic code works for both.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_scalar(s: Scalar) -> Self;
    /// Multiplicative inverse, or `None` when `self` is not a unit.
    fn inverse(&self) -> Option<Self>;
    /// The ordinary (non-infinitesimal) part.
    fn value(&self) -> Scalar;
}

impl Coeff for Scalar {
    fn from_scalar(s: Scalar) -> Self {
        s
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn value(&self) -> Scalar {
        self.clone()
    }
}

/// Which polynomial ring a form lives in: `C[x1..xn]` (operators) or `C[y1..yn]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::X => 'x',
            Side::Y => 'y',
        }
    }

    pub fn dual(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Exponent vector.
///
/// `Ord` sorts by degree, and within a degree puts the grlex-larger monomial
/// first, so ascending iteration matches the position in [`monomial_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable with 0-based index `i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// `alpha! = alpha_1! * ... * alpha_n!`
    pub fn factorial(&self) -> BigInt {
        self.exps.iter().map(|&e| factorial(e)).product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `j` in `n` variables.
pub fn basis_len(n: usize, j: u32) -> usize {
    if n == 0 {
        return usize::from(j == 0);
    }
    binomial(j as u64 + n as u64 - 1, n as u64 - 1) as usize
}

/// All monomials of degree `j` in `n` variables, largest (grlex) first.
pub fn monomial_basis(n: usize, j: u32) -> Vec<Monomial> {
    fn fill(rest: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=rest).rev() {
            cur[slot] = e;
            fill(rest - e, slot + 1, cur, out);
        }
    }
    assert!(n >= 1, "monomial_basis needs at least one variable");
    let mut out = Vec::with_capacity(basis_len(n, j));
    fill(j, 0, &mut vec![0; n], &mut out);
    out
}

/// `N! / (alpha_1! ... alpha_n!)`
pub fn multinomial(total: u32, alpha: &[u32]) -> BigInt {
    assert_eq!(alpha.iter().sum::<u32>(), total, "multinomial: |alpha| != N");
    let denom: BigInt = alpha.iter().map(|&a| factorial(a)).product();
    factorial(total) / denom
}

/// Indexed view of [`monomial_basis`], used to move between sparse forms and
/// dense coefficient vectors.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: u32) -> Self {
        let monomials = monomial_basis(n, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { n, degree, monomials, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }
}

/// Homogeneous polynomial of a fixed degree in a fixed set of variables.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-wise equality.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedForm<C: Coeff = Scalar> {
    side: Side,
    n: usize,
    degree: u32,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> GradedForm<C> {
    pub fn zero(side: Side, n: usize, degree: u32) -> Self {
        GradedForm { side, n, degree, terms: BTreeMap::new() }
    }

    pub fn constant(side: Side, n: usize, c: C) -> Self {
        Self::term(side, c, Monomial::one(n))
    }

    pub fn term(side: Side, c: C, m: Monomial) -> Self {
        let mut f = GradedForm::zero(side, m.n(), m.degree());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// Variable `i` (0-based) as a linear form.
    pub fn var(side: Side, n: usize, i: usize) -> Self {
        Self::term(side, C::one(), Monomial::var(n, i))
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(side: Side, n: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut f = GradedForm::zero(side, n, degree);
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::VariableCountMismatch { expected: n, found: m.n() });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Coefficients listed against `basis`.
    pub fn from_dense(side: Side, basis: &MonomialBasis, coeffs: &[C]) -> Self {
        assert_eq!(basis.len(), coeffs.len());
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedForm { side, n: basis.n(), degree: basis.degree(), terms }
    }

    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<C> {
        assert_eq!(basis.degree(), self.degree, "basis degree does not match form");
        let mut out = vec![C::zero(); basis.len()];
        for (m, c) in &self.terms {
            out[basis.position(m).expect("monomial of declared degree")] = c.clone();
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Same coefficients, other variable set.
    pub fn relabel(&self, side: Side) -> Self {
        GradedForm { side, ..self.clone() }
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> GradedForm<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        GradedForm { side: self.side, n: self.n, degree: self.degree, terms }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        if self.n != other.n {
            return Err(Error::VariableCountMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        self.check_ring(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|a| a.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = GradedForm::zero(self.side, self.n, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        GradedForm { side: self.side, n: self.n, degree: self.degree + m.degree(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GradedForm::constant(self.side, self.n, C::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = GradedForm::zero(self.side, self.n, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c.clone() * C::from_scalar(int(e as i64)));
        }
        out
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.n);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// `f(C v)`: variable `i` is replaced by `sum_j C[i][j] * v_j`.
    ///
    /// This is a right action: `f.substitute(A).substitute(B) == f.substitute(A * B)`.
    pub fn substitute(&self, c: &Matrix<C>) -> Self {
        assert!(c.rows() == self.n && c.cols() == self.n, "substitution matrix must be n x n");
        let linear: Vec<GradedForm<C>> = (0..self.n)
            .map(|i| {
                let terms = (0..self.n).map(|j| (Monomial::var(self.n, j), c.get(i, j).clone()));
                GradedForm::from_terms(self.side, self.n, 1, terms).expect("linear form")
            })
            .collect();
        // powers[i][k] = linear[i]^k, built lazily
        let mut powers: Vec<Vec<GradedForm<C>>> = linear
            .iter()
            .map(|l| vec![GradedForm::constant(self.side, self.n, C::one()), l.clone()])
            .collect();
        let mut out = GradedForm::zero(self.side, self.n, self.degree);
        for (m, coef) in &self.terms {
            let mut t = GradedForm::constant(self.side, self.n, coef.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&linear[i]).expect("same ring");
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]).expect("same ring");
            }
            out = out.add(&t).expect("same space");
        }
        out
    }
}

impl fmt::Display for GradedForm<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render_form(self))
    }
}
