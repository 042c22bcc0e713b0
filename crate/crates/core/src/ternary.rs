//! Ternary cubics (`n = 3`, `d = 2`): the Aronhold invariant `S`, the list of
//! canonical cubics, and the check that `im(A)` is exactly `{S != 0}`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::apolar::{annihilator_piece, same_span};
use crate::assocform::associated_form;
use crate::catvar::{in_u_res, proportional};
use crate::error::{Error, Result};
use crate::polyring::{frac, int, GradedForm, Monomial, Scalar, Side};
use crate::sample::Sampler;
use crate::textio::{parse_form, render_form};

/// Coefficients of
/// `a y1^3 + b y2^3 + c y3^3 + 3d y1^2y2 + 3e y1^2y3 + 3f y1y2^2 + 3g y2^2y3 + 3h y1y3^2 + 3i y2y3^2 + 6j y1y2y3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCubic {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub f: Scalar,
    pub g: Scalar,
    pub h: Scalar,
    pub i: Scalar,
    pub j: Scalar,
}

/// `(exponents, multiplier)` for each coefficient, in field order.
const LAYOUT: [([u32; 3], i64); 10] = [
    ([3, 0, 0], 1),
    ([0, 3, 0], 1),
    ([0, 0, 3], 1),
    ([2, 1, 0], 3),
    ([2, 0, 1], 3),
    ([1, 2, 0], 3),
    ([0, 2, 1], 3),
    ([1, 0, 2], 3),
    ([0, 1, 2], 3),
    ([1, 1, 1], 6),
];

impl TernaryCubic {
    pub fn from_form(form: &GradedForm) -> Result<Self> {
        if form.side() != Side::Y {
            return Err(Error::SideMismatch);
        }
        if form.n() != 3 {
            return Err(Error::VariableCountMismatch { expected: 3, found: form.n() });
        }
        if form.degree() != 3 {
            return Err(Error::DegreeMismatch { expected: 3, found: form.degree() });
        }
        let v: Vec<Scalar> =
            LAYOUT.iter().map(|(e, k)| form.coeff(&Monomial::new(e.to_vec())) / int(*k)).collect();
        let [a, b, c, d, e, f, g, h, i, j]: [Scalar; 10] = v.try_into().expect("ten coefficients");
        Ok(TernaryCubic { a, b, c, d, e, f, g, h, i, j })
    }

    pub fn to_form(&self) -> GradedForm {
        let v = [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.g, &self.h, &self.i, &self.j];
        GradedForm::from_terms(
            Side::Y,
            3,
            3,
            LAYOUT.iter().zip(v).map(|((e, k), x)| (Monomial::new(e.to_vec()), x * int(*k))),
        )
        .expect("cubic monomials")
    }
}

/// The Aronhold invariant, term for term.
pub fn aronhold_s(cubic: &TernaryCubic) -> Scalar {
    let TernaryCubic { a, b, c, d, e, f, g, h, i, j } = cubic;
    let two = int(2);
    let three = int(3);
    a * b * c * j - b * c * d * e - c * a * f * g - a * b * h * i
        - j * (a * g * i + b * h * e + c * d * f)
        + a * f * i * i
        + a * h * g * g
        + b * d * h * h
        + b * i * e * e
        + c * g * d * d
        + c * e * f * f
        - j * j * j * j
        + two * j * j * (f * h + i * d + e * g)
        - three * j * (d * g * h + e * f * i)
        - f * f * h * h
        - i * i * d * d
        - e * e * g * g
        + i * d * e * g
        + e * g * f * h
        + f * h * i * d
}

pub fn aronhold_s_form(form: &GradedForm) -> Result<Scalar> {
    Ok(aronhold_s(&TernaryCubic::from_form(form)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalCubic {
    /// `y1^3 + y2^3 + y3^3 + t y1 y2 y3`, `t^3 != -27`.
    C1(Scalar),
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
}

impl fmt::Display for CanonicalCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalCubic::C1(t) => write!(f, "c1({t})"),
            other => write!(f, "c{}", other.index()),
        }
    }
}

impl CanonicalCubic {
    pub fn index(&self) -> u8 {
        match self {
            CanonicalCubic::C1(_) => 1,
            CanonicalCubic::C2 => 2,
            CanonicalCubic::C3 => 3,
            CanonicalCubic::C4 => 4,
            CanonicalCubic::C5 => 5,
            CanonicalCubic::C6 => 6,
            CanonicalCubic::C7 => 7,
            CanonicalCubic::C8 => 8,
            CanonicalCubic::C9 => 9,
        }
    }
}

pub fn canonical_cubic(id: &CanonicalCubic) -> Result<GradedForm> {
    let text = match id {
        CanonicalCubic::C1(t) => {
            if t * t * t == int(-27) {
                return Err(Error::InvalidParameter(format!("c1 needs t^3 != -27, got t = {t}")));
            }
            let base = parse_form("y1^3 + y2^3 + y3^3", Side::Y, 3, Some(3))?;
            let mixed = GradedForm::term(Side::Y, t.clone(), Monomial::new(vec![1, 1, 1]));
            return base.add(&mixed);
        }
        CanonicalCubic::C2 => "y1^3 + y2^2*y3",
        CanonicalCubic::C3 => "y1^3 + y1^2*y3 + y2^2*y3",
        CanonicalCubic::C4 => "y1^2*y3 + y2*y3^2",
        CanonicalCubic::C5 => "y1^3 + y1*y2*y3",
        CanonicalCubic::C6 => "y1*y2*y3",
        CanonicalCubic::C7 => "y1^2*y2 + y1*y2^2",
        CanonicalCubic::C8 => "y1^2*y2",
        CanonicalCubic::C9 => "y1^3",
    };
    parse_form(text, Side::Y, 3, Some(3))
}

/// `c_{1,s}` written in the x-variables.
pub fn hesse_x(s: &Scalar) -> Result<GradedForm> {
    Ok(canonical_cubic(&CanonicalCubic::C1(s.clone()))?.relabel(Side::X))
}

/// `S(c) != 0`, cross-checked against `U_Res` membership.
pub fn in_image_ternary(c: &GradedForm) -> Result<bool> {
    let by_s = !aronhold_s_form(c)?.is_zero();
    let by_u_res = in_u_res(c)?;
    if by_s != by_u_res {
        return Err(Error::RouteMismatch(format!(
            "S != 0 is {by_s} but U_Res membership is {by_u_res} for {}",
            render_form(c)
        )));
    }
    Ok(by_s)
}

/// The degree-2 annihilator spans of the canonical cubics, as printed.
pub fn annihilator_tables() -> Vec<(CanonicalCubic, Vec<&'static str>)> {
    vec![
        (CanonicalCubic::C1(int(0)), vec!["x1*x2", "x1*x3", "x2*x3"]),
        (CanonicalCubic::C2, vec!["x1*x2", "x1*x3", "x3^2"]),
        (CanonicalCubic::C4, vec!["x1^2 - x2*x3", "x1*x2", "x2^2"]),
        (CanonicalCubic::C7, vec!["x1^2 + x2^2 - x1*x2", "x1*x3", "x2*x3", "x3^2"]),
        (CanonicalCubic::C8, vec!["x1*x3", "x2^2", "x2*x3", "x3^2"]),
        (CanonicalCubic::C9, vec!["x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]),
        (CanonicalCubic::C3, vec!["x1^2 - x2^2 - 3*x1*x3", "x1*x2", "x3^2"]),
        (CanonicalCubic::C5, vec!["x1^2 - 6*x2*x3", "x2^2", "x3^2"]),
    ]
}

/// The canonical cubics on which `S` is checked, with the expected `S = 0` verdict.
pub fn partition_cases() -> Vec<(CanonicalCubic, bool)> {
    vec![
        (CanonicalCubic::C1(int(0)), true),
        (CanonicalCubic::C1(int(1)), false),
        (CanonicalCubic::C1(int(2)), false),
        (CanonicalCubic::C1(frac(1, 2)), false),
        (CanonicalCubic::C1(int(6)), true),
        (CanonicalCubic::C2, true),
        (CanonicalCubic::C3, false),
        (CanonicalCubic::C4, true),
        (CanonicalCubic::C5, false),
        (CanonicalCubic::C6, false),
        (CanonicalCubic::C7, true),
        (CanonicalCubic::C8, true),
        (CanonicalCubic::C9, true),
    ]
}

/// `t/6 - (t/6)^4`.
pub fn hesse_s(t: &Scalar) -> Scalar {
    let j = t / int(6);
    &j - &j * &j * &j * &j
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub cubic: String,
    pub s: String,
    pub expected_zero: bool,
    pub in_image: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub cubic: String,
    pub expected: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HesseRow {
    pub source: String,
    pub target: String,
    pub mu: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryReport {
    pub partition: Vec<PartitionRow>,
    pub tables: Vec<TableRow>,
    pub hesse: Vec<HesseRow>,
    pub random_cases: usize,
    pub random_in_image: usize,
    pub invariance_cases: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

/// Checks the `S`-partition, the annihilator tables, the Hesse pencil
/// proportionalities, agreement of `S != 0` with `U_Res` on random cubics,
/// and `SL_3` invariance of `S`.
pub fn verify_ternary(seed: u64, height: i64, random_cases: usize, invariance_cases: usize) -> Result<TernaryReport> {
    let mut counterexample = None;
    let note = |c: &mut Option<String>, msg: String| {
        if c.is_none() {
            *c = Some(msg);
        }
    };

    let mut partition = Vec::new();
    for (id, expected_zero) in partition_cases() {
        let form = canonical_cubic(&id)?;
        let s = aronhold_s_form(&form)?;
        let exact = match &id {
            CanonicalCubic::C1(t) => s == hesse_s(t),
            CanonicalCubic::C6 => s == frac(-1, 1296),
            _ => true,
        };
        let in_image = in_image_ternary(&form)?;
        let pass = exact && s.is_zero() == expected_zero && in_image != expected_zero;
        if !pass {
            note(&mut counterexample, format!("partition: {id} has S = {s}"));
        }
        partition.push(PartitionRow { cubic: id.to_string(), s: s.to_string(), expected_zero, in_image, pass });
    }

    let mut tables = Vec::new();
    for (id, gens) in annihilator_tables() {
        let form = canonical_cubic(&id)?;
        let expected =
            gens.iter().map(|s| parse_form(s, Side::X, 3, Some(2))).collect::<Result<Vec<_>>>()?;
        let pass = same_span(&annihilator_piece(&form, 2)?, &expected);
        if !pass {
            note(&mut counterexample, format!("table: {id}"));
        }
        tables.push(TableRow { cubic: id.to_string(), expected: gens.iter().map(|s| s.to_string()).collect(), pass });
    }

    let mut hesse = Vec::new();
    let pairs = [
        (int(-18), CanonicalCubic::C1(int(1))),
        (int(-9), CanonicalCubic::C1(int(2))),
        (int(-6), CanonicalCubic::C1(int(3))),
        (int(0), CanonicalCubic::C6),
    ];
    for (s, target) in pairs {
        let a = associated_form(&hesse_x(&s)?)?.form;
        let mu = proportional(&canonical_cubic(&target)?, &a);
        let pass = mu.is_some();
        let source = CanonicalCubic::C1(s).to_string();
        if !pass {
            note(&mut counterexample, format!("hesse: A({source}) is not proportional to {target}"));
        }
        hesse.push(HesseRow { source, target: target.to_string(), mu: mu.map(|m| m.to_string()), pass });
    }

    let mut sampler = Sampler::new(seed, height);
    let mut random_in_image = 0;
    for _ in 0..random_cases {
        let c = sampler.form(Side::Y, 3, 3);
        match in_image_ternary(&c) {
            Ok(true) => random_in_image += 1,
            Ok(false) => {}
            Err(e) => note(&mut counterexample, format!("random: {e}")),
        }
    }

    for _ in 0..invariance_cases {
        let c = sampler.form(Side::Y, 3, 3);
        let m = sampler.unimodular(3);
        let moved = c.substitute(&m);
        if aronhold_s_form(&moved)? != aronhold_s_form(&c)? {
            note(&mut counterexample, format!("invariance: {} under {:?}", render_form(&c), m.to_rows()));
        }
    }

    let pass = counterexample.is_none();
    Ok(TernaryReport {
        partition,
        tables,
        hesse,
        random_cases,
        random_in_image,
        invariance_cases,
        counterexample,
        pass,
    })
}

/// `S(lambda c) = lambda^4 S(c)`.
pub fn homogeneity_holds(c: &GradedForm, lambda: &Scalar) -> Result<bool> {
    let scaled = aronhold_s_form(&c.scale(lambda))?;
    let l2 = lambda * lambda;
    Ok(scaled == aronhold_s_form(c)? * &l2 * &l2)
}
