//! Text and JSON formats for forms, tuples and matrices.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! form     := ["+"|"-"] term (("+"|"-") term)*
//! term     := rational ["*"] factor ("*"? factor)* | factor ("*"? factor)* | rational
//! factor   := ("x"|"y") index ["^" exponent]
//! rational := digits ["/" digits]
//! ```
//!
//! The printer always emits explicit `*`, terms in basis order, and
//! coefficients in lowest terms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{GradedForm, Monomial, Scalar, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {position}: {message}")]
pub struct ParseError {
    /// 0-based byte offset into the input.
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }
}

struct RawTerm {
    coeff: Scalar,
    exps: Vec<u32>,
}

fn parse_terms(text: &str, side: Side, n: usize) -> std::result::Result<Vec<RawTerm>, ParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let mut term = parse_term(&mut cur, side, n)?;
        if negative {
            term.coeff = -term.coeff;
        }
        terms.push(term);
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else {
            cur.skip_ws();
            if let Some(c) = cur.peek() {
                return Err(cur.err(format!("unexpected character '{c}'")));
            }
            return Ok(terms);
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>, side: Side, n: usize) -> std::result::Result<RawTerm, ParseError> {
    let mut coeff = Scalar::one();
    let mut exps = vec![0u32; n];
    let mut saw_anything = false;
    if let Some(num) = cur.digits() {
        let num: BigInt = num.parse().expect("ascii digits");
        let den = if cur.eat('/') {
            let d = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
            let d: BigInt = d.parse().expect("ascii digits");
            if d.is_zero() {
                return Err(cur.err("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Scalar::new(num, den);
        saw_anything = true;
        cur.eat('*');
    }
    loop {
        cur.skip_ws();
        let Some(c) = cur.peek() else { break };
        if c != 'x' && c != 'y' {
            if c == '*' && saw_anything {
                cur.pos += 1;
                continue;
            }
            break;
        }
        if c != side.letter() {
            return Err(cur.err(format!("variable '{c}' does not belong to the {}-side ring", side.letter())));
        }
        cur.pos += 1;
        let at = cur.pos;
        let idx: usize = cur
            .digits()
            .ok_or_else(|| cur.err("expected variable index"))?
            .parse()
            .map_err(|_| ParseError { position: at, message: "variable index too large".into() })?;
        if idx == 0 || idx > n {
            return Err(ParseError { position: at, message: format!("variable index {idx} outside 1..={n}") });
        }
        let mut e = 1u32;
        if cur.eat('^') {
            let at = cur.pos;
            e = cur
                .digits()
                .ok_or_else(|| cur.err("expected exponent"))?
                .parse()
                .map_err(|_| ParseError { position: at, message: "exponent too large".into() })?;
        }
        exps[idx - 1] += e;
        saw_anything = true;
    }
    if !saw_anything {
        return Err(cur.err("expected a coefficient or a variable"));
    }
    Ok(RawTerm { coeff, exps })
}

/// Parses a homogeneous form.
///
/// Terms with zero coefficient do not constrain the degree, so `"0"` parses
/// into the zero form of `expected_degree` (or degree 0 when none is given).
pub fn parse_form(text: &str, side: Side, n: usize, expected_degree: Option<u32>) -> Result<GradedForm> {
    let terms = parse_terms(text, side, n)?;
    let mut degree = expected_degree;
    for t in terms.iter().filter(|t| !t.coeff.is_zero()) {
        let deg = t.exps.iter().sum();
        match degree {
            None => degree = Some(deg),
            Some(d) if d != deg => {
                return Err(if expected_degree.is_some() {
                    Error::DegreeMismatch { expected: d, found: deg }
                } else {
                    Error::MixedDegree(d, deg)
                });
            }
            Some(_) => {}
        }
    }
    let degree = degree.unwrap_or(0);
    GradedForm::from_terms(
        side,
        n,
        degree,
        terms.into_iter().filter(|t| !t.coeff.is_zero()).map(|t| (Monomial::new(t.exps), t.coeff)),
    )
}

fn render_monomial(side: Side, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{}{}", side.letter(), i + 1)),
            _ => parts.push(format!("{}{}^{}", side.letter(), i + 1, e)),
        }
    }
    parts.join("*")
}

pub fn render_form(f: &GradedForm) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.degree() == 0 {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&render_monomial(f.side(), m));
        }
    }
    out
}

/// Forms separated by `;`.
pub fn parse_tuple(text: &str, side: Side, n: usize, degree: Option<u32>) -> Result<Vec<GradedForm>> {
    let mut offset = 0;
    let mut out = Vec::new();
    for piece in text.split(';') {
        let f = parse_form(piece, side, n, degree).map_err(|e| match e {
            Error::Parse(p) => Error::Parse(ParseError { position: p.position + offset, ..p }),
            other => other,
        })?;
        out.push(f);
        offset += piece.len() + 1;
    }
    Ok(out)
}

pub fn render_tuple(forms: &[GradedForm]) -> String {
    forms.iter().map(render_form).collect::<Vec<_>>().join("; ")
}

pub fn render_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push('[');
        out.push_str(&row.join(", "));
        out.push_str("]\n");
    }
    out
}

/// Non-empty lines of a fixture file with `#` comments stripped, paired with
/// their 1-based line numbers.
pub fn fixture_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((i + 1, body))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// JSON shape of a form. Integers travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub side: Side,
    pub n: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

impl From<&GradedForm> for FormJson {
    fn from(f: &GradedForm) -> Self {
        FormJson {
            side: f.side(),
            n: f.n(),
            degree: f.degree(),
            terms: f
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&FormJson> for GradedForm {
    type Error = Error;

    fn try_from(j: &FormJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let num: BigInt = t.num.parse().map_err(|_| Error::Json(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Json(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::Json("zero denominator".into()));
            }
            terms.push((Monomial::new(t.exp.clone()), Scalar::new(num, den)));
        }
        GradedForm::from_terms(j.side, j.n, j.degree, terms)
    }
}

pub fn form_to_json(f: &GradedForm) -> String {
    serde_json::to_string(&FormJson::from(f)).expect("plain data serializes")
}

pub fn form_from_json(text: &str) -> Result<GradedForm> {
    let j: FormJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    GradedForm::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{frac, int};

    #[test]
    fn parses_fermat_cubic() {
        let f = parse_form("y1^3 + y2^3 + y3^3", Side::Y, 3, Some(3)).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&Monomial::new(vec![0, 3, 0])), int(1));
    }

    #[test]
    fn parses_signed_products() {
        let f = parse_form("x1^2 - 6*x2*x3", Side::X, 3, Some(2)).unwrap();
        assert_eq!(f.coeff(&Monomial::new(vec![2, 0, 0])), int(1));
        assert_eq!(f.coeff(&Monomial::new(vec![0, 1, 1])), int(-6));
        // implicit multiplication and repeated variables
        let g = parse_form("-6x2 x3 + x1x1", Side::X, 3, None).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parses_zero() {
        let z = parse_form("0", Side::Y, 3, None).unwrap();
        assert!(z.is_zero());
        let z3 = parse_form("0", Side::Y, 3, Some(3)).unwrap();
        assert_eq!(z3.degree(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_form("x1 + x2^2", Side::X, 2, None), Err(Error::MixedDegree(1, 2))));
        assert!(matches!(
            parse_form("x1^2", Side::X, 2, Some(3)),
            Err(Error::DegreeMismatch { expected: 3, found: 2 })
        ));
        let Err(Error::Parse(p)) = parse_form("x1 + x3", Side::X, 2, None) else { panic!() };
        assert_eq!(p.position, 6);
        assert!(matches!(parse_form("y1", Side::X, 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_form("", Side::X, 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_form("x1 +", Side::X, 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_form("1/0*x1", Side::X, 2, None), Err(Error::Parse(_))));
        assert!(matches!(parse_form("x1 ) x2", Side::X, 2, None), Err(Error::Parse(_))));
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_form(&GradedForm::zero(Side::Y, 3, 3)), "0");
        let c4 = parse_form("y2*y3^2 + y1^2*y3", Side::Y, 3, None).unwrap();
        assert_eq!(render_form(&c4), "y1^2*y3 + y2*y3^2");
        let f = GradedForm::term(Side::Y, frac(1, 36), Monomial::new(vec![1, 1, 1]));
        assert_eq!(render_form(&f), "1/36*y1*y2*y3");
        let g = parse_form("-x2^2 + 4/6 x1 x2 - x1^2", Side::X, 2, None).unwrap();
        assert_eq!(render_form(&g), "-x1^2 + 2/3*x1*x2 - x2^2");
        let k = parse_form("-7/2", Side::X, 2, None).unwrap();
        assert_eq!(render_form(&k), "-7/2");
    }

    #[test]
    fn tuple_roundtrip() {
        let t = parse_tuple("x1^2; x2^2 - x1*x2", Side::X, 2, Some(2)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(render_tuple(&t), "x1^2; -x1*x2 + x2^2");
        let Err(Error::Parse(p)) = parse_tuple("x1^2; x5^2", Side::X, 2, Some(2)) else { panic!() };
        assert_eq!(p.position, 7);
    }

    #[test]
    fn json_roundtrip() {
        let f = parse_form("1/36*y1*y2*y3 - 123456789012345678901234567890*y1^3", Side::Y, 3, None).unwrap();
        let s = form_to_json(&f);
        assert!(s.contains("\"num\":\"-123456789012345678901234567890\""));
        assert!(s.contains("\"side\":\"Y\""));
        assert_eq!(form_from_json(&s).unwrap(), f);
        assert!(form_from_json("{\"side\":\"Y\",\"n\":2,\"degree\":1,\"terms\":[{\"exp\":[1,1],\"num\":\"1\",\"den\":\"1\"}]}").is_err());
    }

    #[test]
    fn fixture_comments() {
        let text = "# header\n y1^3 \n\n y2^3 # trailing\n";
        assert_eq!(fixture_lines(text), vec![(2, "y1^3"), (4, "y2^3")]);
    }
}
