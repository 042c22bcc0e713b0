//! Polar pairing, annihilator pieces and catalecticant matrices.
//!
//! The pairing is plain differentiation: `x^b ⋄ y^a = a!/(a-b)! * y^(a-b)`
//! when `b <= a`, and 0 otherwise. No factorial rescaling is applied, so the
//! Gram matrix of the perfect pairing in degree `j` is `diag(a!)`.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{GradedForm, Monomial, MonomialBasis, Scalar, Side};

/// `h ⋄ F` for an x-side operator `h` and a y-side form `F`.
pub fn polar_pair(h: &GradedForm, f: &GradedForm) -> Result<GradedForm> {
    if h.side() != Side::X || f.side() != Side::Y {
        return Err(Error::SideMismatch);
    }
    if h.n() != f.n() {
        return Err(Error::VariableCountMismatch { expected: f.n(), found: h.n() });
    }
    if h.degree() > f.degree() {
        return Err(Error::DegreeExcess { operator: h.degree(), form: f.degree() });
    }
    let mut terms = Vec::new();
    for (beta, hc) in h.terms() {
        for (alpha, fc) in f.terms() {
            if let Some(rest) = beta.quotient_of(alpha) {
                let weight = Scalar::new(alpha.factorial(), rest.factorial());
                terms.push((rest, hc * fc * weight));
            }
        }
    }
    GradedForm::from_terms(Side::Y, f.n(), f.degree() - h.degree(), terms)
}

/// Matrix of `h ↦ h ⋄ F` from `C[x]_i` to `C[y]_{N-i}`.
#[derive(Clone, Debug)]
pub struct CatalecticantMatrix {
    pub form: GradedForm,
    /// Column degree.
    pub i: u32,
    /// Rows indexed by `monomial_basis(n, N - i)`, columns by `monomial_basis(n, i)`.
    pub matrix: Matrix,
}

/// Builds the catalecticant of `f` with columns in degree `i`.
///
/// Entry `(r, c)` is the coefficient of `y^g` (row) in `x^b ⋄ F` (column),
/// which equals `F[b + g] * (b + g)! / g!`.
pub fn catalecticant(f: &GradedForm, i: u32) -> Result<CatalecticantMatrix> {
    if f.side() != Side::Y {
        return Err(Error::SideMismatch);
    }
    if i > f.degree() {
        return Err(Error::DegreeExcess { operator: i, form: f.degree() });
    }
    let cols = MonomialBasis::new(f.n(), i);
    let rows = MonomialBasis::new(f.n(), f.degree() - i);
    let mut matrix = Matrix::zeros(rows.len(), cols.len());
    for (alpha, coeff) in f.terms() {
        // every split alpha = b + g contributes one entry
        for (c, b) in cols.iter().enumerate() {
            if let Some(g) = b.quotient_of(alpha) {
                let r = rows.position(&g).expect("degree matches");
                matrix.set(r, c, coeff * Scalar::new(alpha.factorial(), g.factorial()));
            }
        }
    }
    Ok(CatalecticantMatrix { form: f.clone(), i, matrix })
}

/// Basis of `F^⊥ ∩ C[x]_j`, read off the kernel of the degree-`j` catalecticant.
pub fn annihilator_piece(f: &GradedForm, j: u32) -> Result<Vec<GradedForm>> {
    let cat = catalecticant(f, j)?;
    let basis = MonomialBasis::new(f.n(), j);
    Ok(cat
        .matrix
        .kernel_basis()
        .into_iter()
        .map(|v| GradedForm::from_dense(Side::X, &basis, &v))
        .collect())
}

/// Hilbert function `(t_0, ..., t_N)` of `C[x]/F^⊥`.
///
/// Symmetry `t_i = t_{N-i}` is checked rather than assumed.
pub fn gorenstein_sequence(f: &GradedForm) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let seq = (0..=f.degree())
        .map(|i| catalecticant(f, i).map(|c| c.matrix.rank()))
        .collect::<Result<Vec<_>>>()?;
    if seq.iter().ne(seq.iter().rev()) {
        return Err(Error::AsymmetricSequence(seq));
    }
    Ok(seq)
}

/// Coefficient vectors of `forms` (all in one graded piece) as matrix rows.
pub fn coefficient_rows(forms: &[GradedForm], basis: &MonomialBasis) -> Matrix {
    let rows: Vec<Vec<Scalar>> = forms.iter().map(|f| f.to_dense(basis)).collect();
    if rows.is_empty() {
        return Matrix::zeros(0, basis.len());
    }
    Matrix::from_rows(rows).expect("equal lengths")
}

/// Dimension of the span of forms sharing one graded piece.
pub fn span_dim(forms: &[GradedForm]) -> usize {
    match forms.first() {
        None => 0,
        Some(f) => coefficient_rows(forms, &MonomialBasis::new(f.n(), f.degree())).rank(),
    }
}

/// Span equality by double inclusion: both spans have the dimension of their union.
pub fn same_span(a: &[GradedForm], b: &[GradedForm]) -> bool {
    let da = span_dim(a);
    let db = span_dim(b);
    if da != db {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_dim(&all) == da
}

/// Whether `h` lies in the span of `forms`.
pub fn in_span(h: &GradedForm, forms: &[GradedForm]) -> bool {
    if h.is_zero() {
        return true;
    }
    let mut all = forms.to_vec();
    all.push(h.clone());
    span_dim(&all) == span_dim(forms)
}

/// Gram matrix of the pairing `C[x]_j × C[y]_j → C` in monomial bases.
pub fn pairing_matrix(n: usize, j: u32) -> Matrix {
    let basis = MonomialBasis::new(n, j);
    Matrix::from_fn(basis.len(), basis.len(), |r, c| {
        let h = GradedForm::term(Side::X, Scalar::from_integer(1.into()), basis.get(r).clone());
        let f = GradedForm::term(Side::Y, Scalar::from_integer(1.into()), basis.get(c).clone());
        let p = polar_pair(&h, &f).expect("equal degrees");
        p.coeff(&Monomial::one(n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, monomial_basis};
    use crate::textio::parse_form;

    fn y(s: &str, n: usize) -> GradedForm {
        parse_form(s, Side::Y, n, None).unwrap()
    }
    fn x(s: &str, n: usize) -> GradedForm {
        parse_form(s, Side::X, n, None).unwrap()
    }

    #[test]
    fn polar_pair_examples() {
        assert_eq!(polar_pair(&x("x1", 3), &y("y1^3", 3)).unwrap(), y("3*y1^2", 3));
        assert_eq!(polar_pair(&x("x1*x2", 3), &y("y1*y2*y3", 3)).unwrap(), y("y3", 3));
        let p = polar_pair(&x("x1^2*x2", 2), &y("y1^2*y2", 2)).unwrap();
        assert_eq!(p.coeff(&Monomial::one(2)), int(2));
        assert_eq!(p.degree(), 0);
        assert!(matches!(
            polar_pair(&x("x1^2", 2), &y("y1", 2)),
            Err(Error::DegreeExcess { operator: 2, form: 1 })
        ));
    }

    #[test]
    fn binary_quadratic_catalecticant() {
        // F = a y1^2 + b y1 y2 + c y2^2 with (a, b, c) = (5, 7, 11)
        let f = y("5*y1^2 + 7*y1*y2 + 11*y2^2", 2);
        let d = catalecticant(&f, 2).unwrap().matrix;
        assert_eq!(d.to_rows(), vec![vec![int(10), int(7), int(22)]]);
        let d = catalecticant(&y("y1*y2", 2), 2).unwrap().matrix;
        assert_eq!(d.to_rows(), vec![vec![int(0), int(1), int(0)]]);
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn catalecticant_shapes() {
        let f = y("y1^3 + y2^2*y3", 3);
        let d = catalecticant(&f, 2).unwrap().matrix;
        assert_eq!((d.rows(), d.cols()), (3, 6));
        let c0 = catalecticant(&f, 0).unwrap().matrix;
        assert_eq!((c0.rows(), c0.cols()), (10, 1));
        let basis = MonomialBasis::new(3, 3);
        assert_eq!(c0.column(0), f.to_dense(&basis));
    }

    #[test]
    fn catalecticant_matches_polar_pair() {
        let f = y("2*y1^4 - y1*y2^2*y3 + 3/5*y3^4 + y1^2*y2*y3", 3);
        for i in 0..=4 {
            let cat = catalecticant(&f, i).unwrap();
            let rows = MonomialBasis::new(3, 4 - i);
            for (c, b) in monomial_basis(3, i).into_iter().enumerate() {
                let h = GradedForm::term(Side::X, int(1), b);
                let direct = polar_pair(&h, &f).unwrap().to_dense(&rows);
                assert_eq!(cat.matrix.column(c), direct);
            }
        }
    }

    #[test]
    fn annihilator_of_power() {
        let k = annihilator_piece(&y("y1^3", 3), 2).unwrap();
        assert_eq!(k.len(), 5);
        let expect = ["x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"].map(|s| x(s, 3));
        assert!(same_span(&k, &expect));
    }

    #[test]
    fn gorenstein_sequences() {
        assert_eq!(gorenstein_sequence(&y("y1*y2*y3", 3)).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(gorenstein_sequence(&y("y1^3", 3)).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(gorenstein_sequence(&GradedForm::zero(Side::Y, 2, 2)), Err(Error::ZeroForm));
    }

    #[test]
    fn pairing_is_diagonal_factorials() {
        for n in 1..=3 {
            for j in 0..=6 {
                let g = pairing_matrix(n, j);
                let basis = MonomialBasis::new(n, j);
                for r in 0..basis.len() {
                    for c in 0..basis.len() {
                        let expect = if r == c { Scalar::from_integer(basis.get(r).factorial()) } else { int(0) };
                        assert_eq!(g.get(r, c), &expect);
                    }
                }
                assert_eq!(g.rank(), basis.len());
            }
        }
    }

    #[test]
    fn span_helpers() {
        let a = [x("x1^2", 2), x("x2^2", 2)];
        let b = [x("x1^2 + x2^2", 2), x("x1^2 - x2^2", 2)];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &[x("x1^2", 2)]));
        assert!(in_span(&x("3*x1^2 - x2^2", 2), &a));
        assert!(!in_span(&x("x1*x2", 2), &a));
    }
}
