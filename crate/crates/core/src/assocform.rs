//! The associated form `A(f)` of a tuple with nonvanishing resultant, and
//! `A(f) = A(grad f)` for a single form.
//!
//! With `phi` the socle functional (`phi(I_N) = 0`, `phi(jac) = 1`), expanding
//! `(y_1 x_1 + ... + y_n x_n)^N` in `M(f)` gives
//! `A(f) = sum_{|a| = N} multinomial(N, a) * phi(x^a) * y^a`.

use crate::error::{Error, Result};
use crate::exactla::{jet_rank_matrix, JetScalar, Matrix};
use crate::polyring::{multinomial, Coeff, GradedForm, Monomial, MonomialBasis, Scalar, Side};
use crate::quotalg::{grad, is_finite_colength, socle_functional, FormTuple};

#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedForm {
    /// Y-side form of degree `n(d-1)`.
    pub form: GradedForm,
    pub source: FormTuple,
}

/// Coefficients of `A(f)` over `monomial_basis(n, N)`, for any coefficient ring.
///
/// No colength check is made here; a rank drop surfaces as an elimination error.
pub fn associated_form_coeffs<C: Coeff>(t: &FormTuple<C>) -> Result<Vec<C>> {
    let basis = MonomialBasis::new(t.n(), t.socle_degree());
    let phi = socle_functional(t)?;
    Ok(basis
        .iter()
        .zip(phi)
        .map(|(m, p)| p * C::from_scalar(Scalar::from_integer(multinomial(t.socle_degree(), m.exponents()))))
        .collect())
}

pub fn associated_form_tuple(t: &FormTuple) -> Result<AssociatedForm> {
    if !is_finite_colength(t) {
        return Err(Error::NotFiniteColength);
    }
    let basis = MonomialBasis::new(t.n(), t.socle_degree());
    let coeffs = associated_form_coeffs(t)?;
    Ok(AssociatedForm { form: GradedForm::from_dense(Side::Y, &basis, &coeffs), source: t.clone() })
}

/// `A(f) = A(grad f)` for an x-side form of degree `d + 1 >= 2`.
pub fn associated_form(f: &GradedForm) -> Result<AssociatedForm> {
    associated_form_tuple(&grad(f)?)
}

/// Moving `f` along the tuple direction that adds `eps * x^m` to slot `slot`.
fn jet_tuple(t: &FormTuple, slot: usize, m: &Monomial) -> Result<FormTuple<JetScalar>> {
    let forms = t
        .forms()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let lifted = f.map_coeffs(|c| JetScalar::constant(c.clone()));
            if i == slot {
                lifted.add(&GradedForm::term(Side::X, JetScalar::epsilon(), m.clone()))
            } else {
                Ok(lifted)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    FormTuple::new(forms)
}

/// Columns of the differential of `A` at `f`, one per direction in
/// slot-major order with monomials in basis order within each slot.
pub fn differential_matrix(t: &FormTuple) -> Result<Matrix<JetScalar>> {
    if !is_finite_colength(t) {
        return Err(Error::NotFiniteColength);
    }
    let directions = MonomialBasis::new(t.n(), t.d());
    let mut columns = Vec::with_capacity(t.n() * directions.len());
    for slot in 0..t.n() {
        for m in directions.iter() {
            columns.push(associated_form_coeffs(&jet_tuple(t, slot, m)?)?);
        }
    }
    Ok(Matrix::from_columns(MonomialBasis::new(t.n(), t.socle_degree()).len(), &columns))
}

/// Rank of the differential of `A` at `f`; generically `Kn - n^2 + 1`.
pub fn differential_rank(t: &FormTuple) -> Result<usize> {
    Ok(jet_rank_matrix(&differential_matrix(t)?))
}

/// `Kn - n^2 + 1` with `K = dim C[x]_d`.
pub fn expected_dimension(n: usize, d: u32) -> usize {
    MonomialBasis::new(n, d).len() * n + 1 - n * n
}

/// `A(M f) = det(M)^(-1) A(f)`.
pub fn tuple_basis_covariance_check(t: &FormTuple, m: &Matrix) -> Result<bool> {
    let det = m.det()?;
    if det == Scalar::from_integer(0.into()) {
        return Err(Error::InvalidParameter("covariance check needs an invertible matrix".into()));
    }
    let base = associated_form_tuple(t)?.form;
    let moved = associated_form_tuple(&t.combine(m)?)?.form;
    Ok(moved == base.scale(&(Scalar::from_integer(1.into()) / det)))
}
