//! Resultants of `n` forms of equal degree `d` in `n` variables.
//!
//! Decisions elsewhere only ever need to know whether the resultant vanishes,
//! and that predicate is answered by the finite-colength test. Exact values
//! are available for cross-checking: the Sylvester determinant for `n = 2`
//! and Macaulay's quotient `det(M) / det(M')` in general.
//!
//! Normalization: both constructions give `Res(x_1^d, ..., x_n^d) = 1`.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{int, monomial_basis, GradedForm, Monomial, MonomialBasis, Scalar, Side};
use crate::quotalg::{is_finite_colength, FormTuple};

/// Coordinate changes tried when the Macaulay denominator vanishes.
pub const MACAULAY_RETRIES: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResultantMethod {
    FiniteColength,
    Sylvester,
    MacaulayQuotient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultantReport {
    pub nonvanishing: bool,
    #[serde(with = "opt_scalar")]
    pub value: Option<Scalar>,
    pub method: ResultantMethod,
    pub retries: u32,
}

mod opt_scalar {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::polyring::Scalar;

    pub fn serialize<S: Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Scalar>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|s| s.parse::<Scalar>().map_err(serde::de::Error::custom)).transpose()
    }
}

/// `Res(f) != 0`, decided by finite colength of `C[x]/(f)`.
pub fn resultant_nonvanishing(t: &FormTuple) -> bool {
    is_finite_colength(t)
}

pub fn nonvanishing_report(t: &FormTuple) -> ResultantReport {
    ResultantReport {
        nonvanishing: resultant_nonvanishing(t),
        value: None,
        method: ResultantMethod::FiniteColength,
        retries: 0,
    }
}

/// `2d x 2d` Sylvester matrix of two binary forms of degree `d`.
///
/// With `f = sum_k a_k x1^(d-k) x2^k`, row `i < d` holds `a_0..a_d` starting
/// at column `i`; rows `d..2d` hold the coefficients of `g` the same way.
pub fn sylvester_matrix(f: &GradedForm, g: &GradedForm) -> Result<Matrix> {
    for h in [f, g] {
        if h.side() != Side::X {
            return Err(Error::SideMismatch);
        }
        if h.n() != 2 {
            return Err(Error::VariableCountMismatch { expected: 2, found: h.n() });
        }
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: g.degree() });
    }
    let d = f.degree() as usize;
    let basis = MonomialBasis::new(2, f.degree());
    let (a, b) = (f.to_dense(&basis), g.to_dense(&basis));
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for k in 0..=d {
            m.set(i, i + k, a[k].clone());
            m.set(d + i, i + k, b[k].clone());
        }
    }
    Ok(m)
}

pub fn sylvester_resultant(f: &GradedForm, g: &GradedForm) -> Result<Scalar> {
    sylvester_matrix(f, g)?.det()
}

/// Macaulay's matrix `M` in degree `n(d-1)+1` and its extraneous minor `M'`.
///
/// A monomial goes to the smallest `i` with `x_i^d` dividing it, and its row
/// is `(m / x_i^d) * f_i`. Rows are listed in the same order as the columns.
/// `M'` keeps the rows and columns of monomials divisible by at least two of
/// the `x_i^d`.
pub fn macaulay_matrices(t: &FormTuple) -> (Matrix, Matrix) {
    let n = t.n();
    let d = t.d();
    let top = t.socle_degree() + 1;
    let cols = MonomialBasis::new(n, top);
    let powers: Vec<Monomial> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = d;
            Monomial::new(e)
        })
        .collect();
    let mut rows = Vec::with_capacity(cols.len());
    let mut non_reduced = Vec::new();
    for (k, m) in cols.iter().enumerate() {
        let dividing: Vec<usize> = (0..n).filter(|&i| powers[i].divides(m)).collect();
        let i = dividing[0];
        if dividing.len() > 1 {
            non_reduced.push(k);
        }
        let shift = powers[i].quotient_of(m).expect("divides");
        rows.push(t.forms()[i].mul_monomial(&shift).to_dense(&cols));
    }
    let big = Matrix::from_rows(rows).expect("square");
    let small = big.select(&non_reduced, &non_reduced);
    (big, small)
}

/// `det(M) / det(M')`, or `None` when `det(M') = 0`.
pub fn macaulay_quotient(t: &FormTuple) -> Option<Scalar> {
    let (big, small) = macaulay_matrices(t);
    let den = small.det().expect("square");
    if den.is_zero() {
        return None;
    }
    Some(big.det().expect("square") / den)
}

/// Unit lower times unit upper triangular, entries in `[-2, 2]`; determinant 1.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let lower = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => int(0),
    });
    let upper = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => int(0),
    });
    lower.mul(&upper).expect("square")
}

/// Exact Macaulay resultant.
///
/// When `det(M') = 0` the forms are replaced by `f_i(Cx)` for a random
/// unimodular `C` drawn from `rng`; such a change leaves the resultant fixed.
/// Gives up after [`MACAULAY_RETRIES`] attempts.
pub fn macaulay_resultant<R: Rng + ?Sized>(t: &FormTuple, rng: &mut R) -> Result<ResultantReport> {
    if t.n() < 2 {
        return Err(Error::Shape("macaulay_resultant needs n >= 2".into()));
    }
    let mut current = t.clone();
    for retries in 0..=MACAULAY_RETRIES {
        if let Some(value) = macaulay_quotient(&current) {
            return Ok(ResultantReport {
                nonvanishing: !value.is_zero(),
                value: Some(value),
                method: ResultantMethod::MacaulayQuotient,
                retries,
            });
        }
        let c = random_unimodular(t.n(), rng);
        current = FormTuple::new(t.forms().iter().map(|f| f.substitute(&c)).collect())?;
    }
    Err(Error::GenericityFailure { retries: MACAULAY_RETRIES })
}

pub fn sylvester_report(t: &FormTuple) -> Result<ResultantReport> {
    if t.n() != 2 {
        return Err(Error::VariableCountMismatch { expected: 2, found: t.n() });
    }
    let value = sylvester_resultant(&t.forms()[0], &t.forms()[1])?;
    Ok(ResultantReport {
        nonvanishing: !value.is_zero(),
        value: Some(value),
        method: ResultantMethod::Sylvester,
        retries: 0,
    })
}

/// All monomials of the Macaulay degree, for callers that want the column labels.
pub fn macaulay_columns(n: usize, d: u32) -> Vec<Monomial> {
    monomial_basis(n, n as u32 * (d - 1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tuple(forms: &[&str], n: usize, d: u32) -> FormTuple {
        FormTuple::new(forms.iter().map(|s| parse_form(s, Side::X, n, Some(d)).unwrap()).collect()).unwrap()
    }

    #[test]
    fn sylvester_examples() {
        let t = tuple(&["x1^2", "x2^2"], 2, 2);
        assert_eq!(sylvester_matrix(&t.forms()[0], &t.forms()[1]).unwrap(), Matrix::identity(4));
        assert_eq!(sylvester_report(&t).unwrap().value, Some(int(1)));
        let t = tuple(&["x1^2", "x1*x2"], 2, 2);
        assert_eq!(sylvester_report(&t).unwrap().value, Some(int(0)));
        let t = tuple(&["x1^2 + 2*x1*x2 + x2^2", "x1^2 - 2*x1*x2 + x2^2"], 2, 2);
        assert_eq!(sylvester_report(&t).unwrap().value, Some(int(16)));
    }

    #[test]
    fn nonvanishing_examples() {
        for d in 2..=4 {
            let n = 3;
            let forms: Vec<String> = (1..=n).map(|i| format!("x{i}^{d}")).collect();
            let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
            assert!(resultant_nonvanishing(&tuple(&refs, n, d)));
        }
        assert!(!resultant_nonvanishing(&tuple(&["x1^2", "x1*x2"], 2, 2)));
        // cuspidal cubic's degree-2 annihilator; common zero (1, 0, 0)
        assert!(!resultant_nonvanishing(&tuple(&["x1*x2", "x1*x3", "x3^2"], 3, 2)));
    }

    #[test]
    fn macaulay_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = tuple(&["x1^2", "x2^2"], 2, 2);
        assert_eq!(macaulay_resultant(&t, &mut rng).unwrap().value, Some(int(1)));
        let t = tuple(&["x1^2", "x2^2", "x3^2"], 3, 2);
        assert_eq!(macaulay_resultant(&t, &mut rng).unwrap().value, Some(int(1)));
        let t = tuple(&["x1*x2", "x1*x3", "x3^2"], 3, 2);
        let r = macaulay_resultant(&t, &mut rng).unwrap();
        assert_eq!(r.value, Some(int(0)));
        assert!(!r.nonvanishing);
    }

    #[test]
    fn macaulay_agrees_with_sylvester_for_binary() {
        let t = tuple(&["x1^3 - 2*x1*x2^2 + x2^3", "2*x1^3 + x1^2*x2 - 5*x2^3"], 2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mac = macaulay_resultant(&t, &mut rng).unwrap().value.unwrap();
        let syl = sylvester_resultant(&t.forms()[0], &t.forms()[1]).unwrap();
        assert_eq!(mac, syl);
    }

    #[test]
    fn macaulay_retries_when_denominator_vanishes() {
        // M' for n = 3, d = 2 is built from the x1^2 x2^2, x1^2 x3^2, x2^2 x3^2 rows;
        // the forms below have no x_i^2 terms at all, so M' = 0.
        let t = tuple(&["x1*x2 + x2*x3", "x1*x3 - x2*x3", "x1*x2 + 2*x1*x3"], 3, 2);
        assert!(macaulay_quotient(&t).is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = macaulay_resultant(&t, &mut rng).unwrap();
        assert!(r.retries >= 1);
        assert_eq!(r.nonvanishing, resultant_nonvanishing(&t));
    }

    #[test]
    fn unimodular_has_det_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..5 {
            assert_eq!(random_unimodular(n, &mut rng).det().unwrap(), int(1));
        }
    }
}
