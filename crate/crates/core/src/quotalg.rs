//! Graded pieces of the complete intersection `M(f) = C[x]/(f_1, ..., f_n)`.
//!
//! All generators share the degree `d`, so each ideal piece `I_m` is just the
//! span of the products `x^b * f_i` with `|b| = m - d`. Everything here is
//! linear algebra on those spans; no Gröbner bases are involved.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{basis_len, monomial_basis, Coeff, GradedForm, MonomialBasis, Scalar, Side};

/// An `n`-tuple of x-side forms of common degree `d` in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTuple<C: Coeff = Scalar> {
    n: usize,
    d: u32,
    forms: Vec<GradedForm<C>>,
}

impl<C: Coeff> FormTuple<C> {
    pub fn new(forms: Vec<GradedForm<C>>) -> Result<Self> {
        let n = forms.len();
        let Some(first) = forms.first() else {
            return Err(Error::Shape("a form tuple needs at least one form".into()));
        };
        let d = first.degree();
        for f in &forms {
            if f.side() != Side::X {
                return Err(Error::SideMismatch);
            }
            if f.n() != n {
                return Err(Error::VariableCountMismatch { expected: n, found: f.n() });
            }
            if f.degree() != d {
                return Err(Error::DegreeMismatch { expected: d, found: f.degree() });
            }
        }
        Ok(FormTuple { n, d, forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[GradedForm<C>] {
        &self.forms
    }

    pub fn into_forms(self) -> Vec<GradedForm<C>> {
        self.forms
    }

    /// Degree `n(d-1)` of the socle of `M(f)`.
    pub fn socle_degree(&self) -> u32 {
        self.n as u32 * self.d.saturating_sub(1)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> FormTuple<D> {
        FormTuple { n: self.n, d: self.d, forms: self.forms.iter().map(|g| g.map_coeffs(&mut f)).collect() }
    }

    /// The tuple `M·f`, i.e. `g_i = sum_j M[i][j] f_j`.
    pub fn combine(&self, m: &Matrix<C>) -> Result<Self> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("need an {0}x{0} matrix", self.n)));
        }
        let forms = (0..self.n)
            .map(|i| {
                self.forms.iter().enumerate().try_fold(
                    GradedForm::zero(Side::X, self.n, self.d),
                    |acc, (j, f)| acc.add(&f.scale(m.get(i, j))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormTuple { n: self.n, d: self.d, forms })
    }

    /// Rows: the generators `x^b f_i` of `I_m` (slot-major, `b` in basis
    /// order); columns: `monomial_basis(n, m)`.
    pub fn generator_matrix(&self, m: u32) -> Matrix<C> {
        let cols = MonomialBasis::new(self.n, m);
        if m < self.d {
            return Matrix::zeros(0, cols.len());
        }
        let shifts = monomial_basis(self.n, m - self.d);
        let rows: Vec<Vec<C>> = self
            .forms
            .iter()
            .flat_map(|f| shifts.iter().map(move |b| f.mul_monomial(b)))
            .map(|g| g.to_dense(&cols))
            .collect();
        if rows.is_empty() {
            return Matrix::zeros(0, cols.len());
        }
        Matrix::from_rows(rows).expect("equal lengths")
    }
}

/// Gradient `(df/dx_1, ..., df/dx_n)` of a form of degree `d + 1 >= 2`.
pub fn grad<C: Coeff>(f: &GradedForm<C>) -> Result<FormTuple<C>> {
    if f.side() != Side::X {
        return Err(Error::SideMismatch);
    }
    if f.degree() < 2 {
        return Err(Error::Shape(format!("gradient needs degree >= 2, got {}", f.degree())));
    }
    FormTuple::new((0..f.n()).map(|i| f.partial(i)).collect())
}

/// `det(df_i/dx_j)`, a form of degree `n(d-1)` (possibly zero).
pub fn jacobian_det<C: Coeff>(t: &FormTuple<C>) -> GradedForm<C> {
    let n = t.n;
    let jac: Vec<Vec<GradedForm<C>>> = t.forms.iter().map(|f| (0..n).map(|j| f.partial(j)).collect()).collect();
    let mut out = GradedForm::zero(Side::X, n, t.socle_degree());
    let mut perm: Vec<usize> = (0..n).collect();
    // Leibniz expansion over all permutations (Heap's algorithm keeps the sign)
    let mut add_term = |perm: &[usize], sign: bool| {
        let mut prod = GradedForm::constant(Side::X, n, C::one());
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&jac[i][j]).expect("same ring");
            if prod.is_zero() {
                return;
            }
        }
        let prod = if sign { prod.neg() } else { prod };
        out = out.add(&prod).expect("same space");
    };
    heap_permutations(&mut perm, &mut add_term);
    out
}

fn heap_permutations(perm: &mut [usize], visit: &mut impl FnMut(&[usize], bool)) {
    let n = perm.len();
    let mut c = vec![0usize; n];
    let mut odd = false;
    visit(perm, odd);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            visit(perm, odd);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Echelon basis of `I_m`.
#[derive(Clone, Debug)]
pub struct IdealPiece {
    pub m: u32,
    pub basis: Vec<GradedForm>,
}

impl IdealPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn ideal_piece(t: &FormTuple, m: u32) -> IdealPiece {
    let cols = MonomialBasis::new(t.n, m);
    let ech = t.generator_matrix(m).rref();
    let basis = (0..ech.rank())
        .map(|k| GradedForm::from_dense(Side::X, &cols, ech.reduced.row(k)))
        .collect();
    IdealPiece { m, basis }
}

/// `t_m = dim C[x]_m - dim I_m` for `m = 0, ..., n(d-1) + 1`.
pub fn hilbert_function(t: &FormTuple) -> Vec<usize> {
    (0..=t.socle_degree() + 1)
        .map(|m| basis_len(t.n, m) - t.generator_matrix(m).rank())
        .collect()
}

/// Coefficients of `(1 + x + ... + x^(d-1))^n`, indices `0..=n(d-1)`.
pub fn expected_hilbert(n: usize, d: u32) -> Vec<usize> {
    let base = vec![1usize; d as usize];
    let mut acc = vec![1usize];
    for _ in 0..n {
        let mut next = vec![0usize; acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// `I_{n(d-1)+1}` fills all of `C[x]_{n(d-1)+1}`.
///
/// Past the socle degree the Hilbert function of a finite-length quotient is
/// zero, and conversely a nonzero piece there rules out finite length.
pub fn is_finite_colength(t: &FormTuple) -> bool {
    let m = t.socle_degree() + 1;
    t.generator_matrix(m).rank() == basis_len(t.n, m)
}

/// Linear functional `phi` on `C[x]_N` (as a dense vector over
/// `monomial_basis(n, N)`) with `phi(I_N) = 0` and `phi(jac) = 1`.
///
/// `phi(g)` is the coordinate of `g` along the socle generator `jac(f)`.
pub fn socle_functional<C: Coeff>(t: &FormTuple<C>) -> Result<Vec<C>> {
    let top = t.socle_degree();
    let basis = MonomialBasis::new(t.n, top);
    let kernel = t.generator_matrix(top).try_kernel_basis()?;
    let phi = match kernel.len() {
        0 => return Err(Error::SocleDegenerate),
        1 => kernel.into_iter().next().unwrap(),
        _ => return Err(Error::NotFiniteColength),
    };
    let jac = jacobian_det(t).to_dense(&basis);
    let pairing = phi.iter().zip(&jac).fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    let inv = pairing.inverse().ok_or(Error::SocleDegenerate)?;
    Ok(phi.into_iter().map(|v| v * inv.clone()).collect())
}

/// The unique `lambda` with `g ≡ lambda * jac(f) mod I_N`.
pub fn normal_coordinate_top(t: &FormTuple, g: &GradedForm) -> Result<Scalar> {
    if !is_finite_colength(t) {
        return Err(Error::NotFiniteColength);
    }
    let top = t.socle_degree();
    if g.degree() != top || g.side() != Side::X || g.n() != t.n {
        return Err(Error::DegreeMismatch { expected: top, found: g.degree() });
    }
    let phi = socle_functional(t)?;
    let basis = MonomialBasis::new(t.n, top);
    Ok(g.to_dense(&basis).iter().zip(&phi).map(|(a, b)| a * b).sum())
}
