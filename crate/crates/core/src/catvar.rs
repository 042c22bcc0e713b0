//! Membership in the catalecticant loci `V`, `U`, `Gor(T)`, the resultant
//! locus `Z` and `U_Res = im(A)`, plus the inverse of `A` on its image.
//!
//! A form `F` of degree `N` in `n` variables determines `d` through
//! `N = n(d-1)`. `D(F)` is the `L x K` catalecticant with columns in degree `d`.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::apolar::{annihilator_piece, catalecticant, gorenstein_sequence};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{GradedForm, MonomialBasis, Scalar, Side};
use crate::quotalg::{expected_hilbert, FormTuple};
use crate::resultant::resultant_nonvanishing;
use crate::textio::FormJson;

/// `(n, d)` for a y-side form of degree `n(d-1)` with `d >= 2`.
pub fn form_shape(f: &GradedForm) -> Result<(usize, u32)> {
    if f.side() != Side::Y {
        return Err(Error::SideMismatch);
    }
    let n = f.n() as u32;
    let big_n = f.degree();
    if big_n < n || big_n % n != 0 {
        return Err(Error::Shape(format!("degree {big_n} is not n(d-1) with n = {n}, d >= 2")));
    }
    Ok((f.n(), big_n / n + 1))
}

/// `D(F)`, rows in degree `N - d`, columns in degree `d`.
pub fn d_matrix(f: &GradedForm) -> Result<Matrix> {
    let (_, d) = form_shape(f)?;
    Ok(catalecticant(f, d)?.matrix)
}

fn target_rank(n: usize, d: u32) -> usize {
    MonomialBasis::new(n, d).len() - n
}

pub fn in_v(f: &GradedForm) -> Result<bool> {
    let (n, d) = form_shape(f)?;
    Ok(d_matrix(f)?.rank() <= target_rank(n, d))
}

pub fn in_u(f: &GradedForm) -> Result<bool> {
    let (n, d) = form_shape(f)?;
    Ok(d_matrix(f)?.rank() == target_rank(n, d))
}

/// Gorenstein sequence of `F` equals `T`, the coefficients of `(1 + ... + x^(d-1))^n`.
pub fn in_gor_t(f: &GradedForm) -> Result<bool> {
    let (n, d) = form_shape(f)?;
    if f.is_zero() {
        return Ok(false);
    }
    Ok(gorenstein_sequence(f).map(|s| s == expected_hilbert(n, d)).unwrap_or(false))
}

/// A nonzero `(K-n)`-minor of `D(F)`, by row and column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartId {
    pub row_subset: Vec<usize>,
    pub col_subset: Vec<usize>,
}

impl ChartId {
    /// Columns of `D(F)` outside the chart, ascending; one per basis vector.
    pub fn free_columns(&self, k: usize) -> Vec<usize> {
        (0..k).filter(|c| !self.col_subset.contains(c)).collect()
    }
}

/// Every chart of `F`, rows then columns in lexicographic subset order.
///
/// Exhaustive: the number of minors grows quickly, so callers usually `take` a few.
pub fn all_charts(f: &GradedForm) -> Result<impl Iterator<Item = ChartId>> {
    let (n, d) = form_shape(f)?;
    let m = d_matrix(f)?;
    let r = target_rank(n, d);
    let (rows, cols) = (m.rows(), m.cols());
    Ok((0..rows).combinations(r).flat_map(move |rs| {
        let m = m.clone();
        (0..cols).combinations(r).filter_map(move |cs| {
            let minor = m.select(&rs, &cs).det().expect("square");
            (!minor.is_zero()).then(|| ChartId { row_subset: rs.clone(), col_subset: cs })
        })
    }))
}

/// The first chart of [`all_charts`], found without scanning minors.
///
/// A `(K-n)`-row subset carries a nonzero minor iff its rows are independent,
/// and the lexicographically first independent subset is the greedy one: the
/// pivot columns of `D^T`. Within those rows the same holds for columns.
pub fn first_chart(f: &GradedForm) -> Result<ChartId> {
    let (n, d) = form_shape(f)?;
    let m = d_matrix(f)?;
    let r = target_rank(n, d);
    let rows = m.transpose().rref().pivots;
    if rows.len() != r {
        return Err(Error::ChartNotFound);
    }
    let all_cols: Vec<usize> = (0..m.cols()).collect();
    let cols = m.select(&rows, &all_cols).rref().pivots;
    Ok(ChartId { row_subset: rows, col_subset: cols })
}

/// Kernel basis `r_1, ..., r_n` of `D(F)` normalized on a chart: `r_j` has a 1
/// in the `j`-th free column, 0 in the other free columns, and chart
/// coordinates `-A^{-1} B e_j`.
pub fn chart_basis_at(f: &GradedForm, chart: &ChartId) -> Result<FormTuple> {
    let (n, d) = form_shape(f)?;
    if !in_u(f)? {
        return Err(Error::ChartNotFound);
    }
    let m = d_matrix(f)?;
    let k = m.cols();
    let a = m.select(&chart.row_subset, &chart.col_subset);
    if a.det()?.is_zero() {
        return Err(Error::ChartNotFound);
    }
    let basis = MonomialBasis::new(n, d);
    let forms = chart
        .free_columns(k)
        .into_iter()
        .map(|j| {
            let rhs: Vec<Scalar> = chart.row_subset.iter().map(|&r| -m.get(r, j).clone()).collect();
            let sol = a.solve(&rhs)?;
            let mut v = vec![Scalar::zero(); k];
            v[j] = Scalar::from_integer(1.into());
            for (c, s) in chart.col_subset.iter().zip(sol) {
                v[*c] = s;
            }
            Ok(GradedForm::from_dense(Side::X, &basis, &v))
        })
        .collect::<Result<Vec<_>>>()?;
    FormTuple::new(forms)
}

/// Chart kernel basis on the first chart.
pub fn chart_kernel_basis(f: &GradedForm) -> Result<(ChartId, FormTuple)> {
    let chart = first_chart(f)?;
    let basis = chart_basis_at(f, &chart)?;
    Ok((chart, basis))
}

/// `R = 0` on the first chart. Defined on `U` only.
pub fn in_z(f: &GradedForm) -> Result<bool> {
    let (_, basis) = chart_kernel_basis(f)?;
    Ok(!resultant_nonvanishing(&basis))
}

/// `U_Res`, decided twice: as `U \ Z` from the chart basis, and from the
/// dimension of `F^⊥_d` plus the resultant of its echelon basis.
pub fn in_u_res(f: &GradedForm) -> Result<bool> {
    let (n, d) = form_shape(f)?;
    let by_chart = in_u(f)? && !in_z(f)?;
    let ann = annihilator_piece(f, d)?;
    let by_annihilator = ann.len() == n && resultant_nonvanishing(&FormTuple::new(ann)?);
    if by_chart != by_annihilator {
        return Err(Error::RouteMismatch(format!(
            "chart route says {by_chart}, annihilator route says {by_annihilator}"
        )));
    }
    Ok(by_chart)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(rename = "V")]
    pub v: bool,
    #[serde(rename = "U")]
    pub u: bool,
    #[serde(rename = "GorT")]
    pub gor_t: bool,
    #[serde(rename = "Z")]
    pub z: bool,
    #[serde(rename = "U_Res")]
    pub u_res: bool,
}

impl Verdicts {
    /// `U_Res ⊂ Gor(T) ⊂ U ⊂ V`, `Z ⊂ U`, and `U_Res = Gor(T) \ Z = U \ Z`.
    pub fn consistent(&self) -> bool {
        let implies = |a: bool, b: bool| !a || b;
        implies(self.u_res, self.gor_t)
            && implies(self.gor_t, self.u)
            && implies(self.u, self.v)
            && implies(self.z, self.u)
            && self.u_res == (self.gor_t && !self.z)
            && self.u_res == (self.u && !self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    #[serde(rename = "F")]
    pub form: FormJson,
    #[serde(rename = "rank_D")]
    pub rank_d: usize,
    pub kernel_dim: usize,
    pub gorenstein_seq: Option<Vec<usize>>,
    pub chart: Option<ChartId>,
    pub chart_resultant_nonzero: Option<bool>,
    pub verdicts: Verdicts,
}

/// Every membership decision for `F`, checked against the inclusions.
pub fn certify(f: &GradedForm) -> Result<MembershipCertificate> {
    let (n, d) = form_shape(f)?;
    let m = d_matrix(f)?;
    let rank_d = m.rank();
    let r = target_rank(n, d);
    let u = rank_d == r;
    let gorenstein_seq = if f.is_zero() { None } else { gorenstein_sequence(f).ok() };
    let gor_t = gorenstein_seq.as_ref().is_some_and(|s| *s == expected_hilbert(n, d));
    let (chart, chart_resultant_nonzero) = if u {
        let (chart, basis) = chart_kernel_basis(f)?;
        (Some(chart), Some(resultant_nonvanishing(&basis)))
    } else {
        (None, None)
    };
    let z = chart_resultant_nonzero == Some(false);
    let verdicts = Verdicts { v: rank_d <= r, u, gor_t, z, u_res: in_u_res(f)? };
    if !verdicts.consistent() {
        return Err(Error::RouteMismatch(format!("inconsistent verdicts {verdicts:?}")));
    }
    Ok(MembershipCertificate {
        form: FormJson::from(f),
        rank_d,
        kernel_dim: m.cols() - rank_d,
        gorenstein_seq,
        chart,
        chart_resultant_nonzero,
        verdicts,
    })
}

/// A tuple `f` with `A(f)` proportional to `F`, for `F` in `U_Res`.
pub fn recover_tuple(f: &GradedForm) -> Result<FormTuple> {
    if !in_u_res(f)? {
        return Err(Error::NotInImage);
    }
    Ok(chart_kernel_basis(f)?.1)
}

/// The nonzero `mu` with `G = mu F`, if any.
pub fn proportional(f: &GradedForm, g: &GradedForm) -> Option<Scalar> {
    if f.side() != g.side() || f.n() != g.n() || f.degree() != g.degree() {
        return None;
    }
    let (m, c) = f.terms().next()?;
    let mu = g.coeff(m) / c;
    if mu.is_zero() || *g != f.scale(&mu) {
        return None;
    }
    Some(mu)
}
