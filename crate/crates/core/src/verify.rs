//! Seeded verification suites behind `assoform verify`.
//!
//! Every suite is deterministic in its configuration. A failed identity is
//! reported as the first counterexample rather than as an error; errors are
//! reserved for bad configurations.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::apolar::{annihilator_piece, gorenstein_sequence, same_span};
use crate::assocform::{associated_form_tuple, differential_rank, expected_dimension};
use crate::catvar::{all_charts, chart_basis_at, in_u, in_z, proportional, recover_tuple};
use crate::error::{Error, Result};
use crate::polyring::{int, GradedForm, Side};
use crate::quotalg::{expected_hilbert, FormTuple};
use crate::resultant::{macaulay_resultant, resultant_nonvanishing, sylvester_resultant};
use crate::sample::{Sampler, MAX_ATTEMPTS};
use crate::ternary::{canonical_cubic, verify_ternary, CanonicalCubic};
use crate::textio::{render_form, render_tuple};

pub const SCHEMA: &str = "assoform/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Ternary,
    Roundtrip,
    Dimension,
    Charts,
    Resultant,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Ternary, Suite::Roundtrip, Suite::Dimension, Suite::Charts, Suite::Resultant];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ternary => "ternary",
            Suite::Roundtrip => "roundtrip",
            Suite::Dimension => "dimension",
            Suite::Charts => "charts",
            Suite::Resultant => "resultant",
        }
    }

    /// The concrete suites this one stands for.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::CONCRETE)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub seed: u64,
    pub height: i64,
    pub cases: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub cases: usize,
    pub details: serde_json::Value,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        VerifyReport { schema: SCHEMA, seed, pass: suites.iter().all(|s| s.pass), suites }
    }
}

/// First failure wins; later ones are only counted.
#[derive(Default)]
struct Failures {
    first: Option<String>,
    count: usize,
}

impl Failures {
    fn record(&mut self, msg: impl FnOnce() -> String) {
        self.count += 1;
        if self.first.is_none() {
            self.first = Some(msg());
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.record(msg);
        }
    }
}

fn pairs(cfg: &VerifyConfig, default: &[(usize, u32)]) -> Result<Vec<(usize, u32)>> {
    match (cfg.n, cfg.d) {
        (None, None) => Ok(default.to_vec()),
        (Some(n), Some(d)) if n >= 2 && d >= 2 => Ok(vec![(n, d)]),
        (Some(_), Some(_)) => Err(Error::InvalidParameter("need n >= 2 and d >= 2".into())),
        _ => Err(Error::InvalidParameter("--n and --d go together".into())),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::All => Err(Error::InvalidParameter("expand 'all' before running".into())),
        Suite::Ternary => ternary_suite(cfg),
        Suite::Roundtrip => roundtrip_suite(cfg),
        Suite::Dimension => dimension_suite(cfg),
        Suite::Charts => charts_suite(cfg),
        Suite::Resultant => resultant_suite(cfg),
    }
}

pub fn verify(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suites = suite.expand().into_iter().map(|s| run_suite(s, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport::new(cfg.seed, suites))
}

fn ternary_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let random = cfg.cases.unwrap_or(200);
    let report = verify_ternary(cfg.seed, cfg.height, random, 50)?;
    let cases = report.partition.len() + report.tables.len() + report.hesse.len() + random + 50;
    Ok(SuiteReport {
        suite: Suite::Ternary,
        pass: report.pass,
        cases,
        counterexample: report.counterexample.clone(),
        details: serde_json::to_value(&report).expect("plain data"),
    })
}

/// One round trip: the inverse-system identities for `A(f)` and recovery of `f`.
pub fn roundtrip_case(t: &FormTuple) -> std::result::Result<(), String> {
    let a = associated_form_tuple(t).map_err(|e| e.to_string())?.form;
    let seq = gorenstein_sequence(&a).map_err(|e| e.to_string())?;
    if seq != expected_hilbert(t.n(), t.d()) {
        return Err(format!("Gorenstein sequence {seq:?}"));
    }
    let ann = annihilator_piece(&a, t.d()).map_err(|e| e.to_string())?;
    if !same_span(&ann, t.forms()) {
        return Err("annihilator span differs from the tuple span".into());
    }
    let back = recover_tuple(&a).map_err(|e| e.to_string())?;
    if !same_span(back.forms(), t.forms()) {
        return Err(format!("recovered tuple {} spans a different space", render_tuple(back.forms())));
    }
    let again = associated_form_tuple(&back).map_err(|e| e.to_string())?.form;
    if proportional(&a, &again).is_none() {
        return Err(format!("A(recovered) = {} is not proportional", render_form(&again)));
    }
    Ok(())
}

fn roundtrip_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let per_pair = cfg.cases.unwrap_or(100);
    let mut sampler = Sampler::new(cfg.seed, cfg.height);
    let mut fails = Failures::default();
    let mut details = Vec::new();
    let mut total = 0;
    for (n, d) in pairs(cfg, &[(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])? {
        for _ in 0..per_pair {
            let t = sampler.good_tuple(n, d)?;
            if let Err(msg) = roundtrip_case(&t) {
                fails.record(|| format!("n={n} d={d} f=({}): {msg}", render_tuple(t.forms())));
            }
        }
        total += per_pair;
        details.push(json!({ "n": n, "d": d, "cases": per_pair }));
    }
    Ok(SuiteReport {
        suite: Suite::Roundtrip,
        pass: fails.count == 0,
        cases: total,
        details: json!({ "pairs": details, "failures": fails.count }),
        counterexample: fails.first,
    })
}

fn dimension_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let points = cfg.cases.unwrap_or(1);
    let mut sampler = Sampler::new(cfg.seed, cfg.height);
    let mut fails = Failures::default();
    let mut details = Vec::new();
    for (n, d) in pairs(cfg, &[(2, 2), (2, 3), (3, 2), (3, 3)])? {
        let expected = expected_dimension(n, d);
        for _ in 0..points {
            let t = sampler.good_tuple(n, d)?;
            let rank = differential_rank(&t)?;
            fails.check(rank == expected, || {
                format!("n={n} d={d} f=({}): rank {rank}, expected {expected}", render_tuple(t.forms()))
            });
            details.push(json!({ "n": n, "d": d, "rank": rank, "expected": expected }));
        }
    }
    Ok(SuiteReport {
        suite: Suite::Dimension,
        pass: fails.count == 0,
        cases: details.len(),
        details: json!({ "points": details }),
        counterexample: fails.first,
    })
}

/// A ternary cubic in `U`: `GL_3` images of `c_{1,0}`, `c_2`, `c_4` (all in
/// `Z`) in turn with random cubics (generically outside `Z`).
pub fn u_cubic(sampler: &mut Sampler, k: usize) -> Result<GradedForm> {
    for _ in 0..MAX_ATTEMPTS {
        let f = match k % 4 {
            3 => sampler.form(Side::Y, 3, 3),
            r => {
                let id = [CanonicalCubic::C1(int(0)), CanonicalCubic::C2, CanonicalCubic::C4][r].clone();
                canonical_cubic(&id)?.substitute(&sampler.invertible_matrix(3)?)
            }
        };
        if in_u(&f)? {
            return Ok(f);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

fn charts_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let cases = cfg.cases.unwrap_or(50);
    let mut sampler = Sampler::new(cfg.seed, cfg.height);
    let mut fails = Failures::default();

    let mut z_members = 0;
    for k in 0..cases {
        let f = u_cubic(&mut sampler, k)?;
        let charts: Vec<_> = all_charts(&f)?.take(2).collect();
        if charts.len() < 2 {
            fails.record(|| format!("gluing: {} lies in a single chart", render_form(&f)));
            continue;
        }
        let verdicts = charts
            .iter()
            .map(|c| chart_basis_at(&f, c).map(|b| !resultant_nonvanishing(&b)))
            .collect::<Result<Vec<_>>>()?;
        z_members += usize::from(verdicts[0]);
        fails.check(verdicts[0] == verdicts[1], || {
            format!("gluing: charts {:?} and {:?} disagree on {}", charts[0], charts[1], render_form(&f))
        });
    }

    let mut z_invariance_members = 0;
    for k in 0..cases {
        let f = u_cubic(&mut sampler, k)?;
        let c = sampler.invertible_matrix(3)?;
        let moved = f.substitute(&c);
        let (before, after) = (in_z(&f)?, in_z(&moved)?);
        z_invariance_members += usize::from(before);
        fails.check(before == after, || format!("GL invariance of Z: {} under {:?}", render_form(&f), c.to_rows()));
    }

    for k in 0..cases {
        let f = sampler.form(Side::Y, 3, 3);
        let j = 1 + (k % 2) as u32;
        let c = sampler.invertible_matrix(3)?;
        let c_inv_t = c.inverse()?.transpose();
        let lhs = annihilator_piece(&f.substitute(&c), j)?;
        let rhs: Vec<GradedForm> = annihilator_piece(&f, j)?.iter().map(|h| h.substitute(&c_inv_t)).collect();
        fails.check(same_span(&lhs, &rhs), || {
            format!("annihilator transform: {} in degree {j} under {:?}", render_form(&f), c.to_rows())
        });
    }

    Ok(SuiteReport {
        suite: Suite::Charts,
        pass: fails.count == 0,
        cases: 3 * cases,
        details: json!({
            "gluing_cases": cases,
            "gluing_in_z": z_members,
            "invariance_cases": cases,
            "invariance_in_z": z_invariance_members,
            "transform_cases": cases,
            "failures": fails.count,
        }),
        counterexample: fails.first,
    })
}

fn resultant_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let binary = cfg.cases.unwrap_or(200);
    let ternary = cfg.cases.map_or(100, |c| c.div_ceil(2));
    let mut sampler = Sampler::new(cfg.seed, cfg.height);
    let mut fails = Failures::default();

    let mut binary_degenerate = 0;
    for k in 0..binary {
        let d = 2 + (k % 3) as u32;
        let t = if k % 5 == 4 {
            binary_degenerate += 1;
            sampler.degenerate_tuple(2, d)
        } else {
            sampler.tuple(2, d)
        };
        let syl = sylvester_resultant(&t.forms()[0], &t.forms()[1])?;
        fails.check(!syl.is_zero() == resultant_nonvanishing(&t), || {
            format!("Sylvester: ({}) gives {syl}", render_tuple(t.forms()))
        });
    }

    let mut ternary_degenerate = 0;
    let mut retries = 0;
    for k in 0..ternary {
        let t = if k % 4 == 3 {
            ternary_degenerate += 1;
            sampler.degenerate_tuple(3, 2)
        } else {
            sampler.tuple(3, 2)
        };
        match macaulay_resultant(&t, sampler.rng()) {
            Ok(r) => {
                retries += r.retries;
                fails.check(r.nonvanishing == resultant_nonvanishing(&t), || {
                    format!("Macaulay: ({}) gives {:?}", render_tuple(t.forms()), r.value)
                });
            }
            Err(e) => fails.record(|| format!("Macaulay: ({}): {e}", render_tuple(t.forms()))),
        }
    }

    Ok(SuiteReport {
        suite: Suite::Resultant,
        pass: fails.count == 0,
        cases: binary + ternary,
        details: json!({
            "binary_pairs": binary,
            "binary_degenerate": binary_degenerate,
            "ternary_triples": ternary,
            "ternary_degenerate": ternary_degenerate,
            "macaulay_retries": retries,
            "failures": fails.count,
        }),
        counterexample: fails.first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(cases: usize) -> VerifyConfig {
        VerifyConfig { n: None, d: None, seed: 3, height: 9, cases: Some(cases) }
    }

    #[test]
    fn suite_names() {
        for s in std::iter::once(Suite::All).chain(Suite::CONCRETE) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.expand().len(), 5);
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Roundtrip, Suite::Charts, Suite::Resultant] {
            let r = run_suite(s, &VerifyConfig { n: None, d: None, ..cfg(4) }).unwrap();
            assert!(r.pass, "{s}: {:?}", r.counterexample);
        }
        let r = run_suite(Suite::Dimension, &VerifyConfig { n: Some(2), d: Some(2), ..cfg(1) }).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["points"][0]["rank"], 3);
    }

    #[test]
    fn report_is_deterministic() {
        let c = VerifyConfig { n: Some(2), d: Some(3), ..cfg(5) };
        let a = serde_json::to_string(&verify(Suite::Roundtrip, &c).unwrap()).unwrap();
        let b = serde_json::to_string(&verify(Suite::Roundtrip, &c).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\":\"assoform/1\""));
    }

    #[test]
    fn bad_config() {
        let c = VerifyConfig { n: Some(2), d: None, ..cfg(1) };
        assert!(matches!(run_suite(Suite::Roundtrip, &c), Err(Error::InvalidParameter(_))));
    }
}
