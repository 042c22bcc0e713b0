//! Acceptance criteria 1 to 8. Prints one pass/fail line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use num_traits::Zero;

use assoform::apolar::{annihilator_piece, gorenstein_sequence, same_span};
use assoform::assocform::{associated_form, associated_form_tuple, differential_rank, expected_dimension};
use assoform::catvar::{all_charts, chart_basis_at, in_u_res, in_z, proportional, recover_tuple};
use assoform::polyring::{frac, int};
use assoform::quotalg::expected_hilbert;
use assoform::resultant::{macaulay_resultant, resultant_nonvanishing, sylvester_resultant};
use assoform::sample::Sampler;
use assoform::ternary::{aronhold_s_form, canonical_cubic, hesse_x, in_image_ternary, CanonicalCubic};
use assoform::textio::{parse_form, render_form, render_tuple};
use assoform::verify::u_cubic;
use assoform::{GradedForm, Scalar, Side};

const SEED: u64 = 20_240_601;
const HEIGHT: i64 = 9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cubic(id: CanonicalCubic) -> GradedForm {
    canonical_cubic(&id).expect("canonical cubic")
}

fn s_of(f: &GradedForm) -> Result<Scalar, String> {
    aronhold_s_form(f).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    use CanonicalCubic::*;
    let zero = [C1(int(0)), C1(int(6)), C2, C4, C7, C8, C9];
    let nonzero = [C1(int(1)), C1(int(2)), C3, C5, C6];
    for id in zero {
        let s = s_of(&cubic(id.clone()))?;
        ensure(s.is_zero(), || format!("S({id}) = {s}, expected 0"))?;
    }
    for id in nonzero {
        let s = s_of(&cubic(id.clone()))?;
        ensure(!s.is_zero(), || format!("S({id}) = 0"))?;
    }
    // t/6 - (t/6)^4 at t = 1, 2
    let frozen = [(int(1), frac(215, 1296)), (int(2), frac(26, 81))];
    for (t, want) in frozen {
        let s = s_of(&cubic(C1(t.clone())))?;
        let j = &t / int(6);
        ensure(s == want && s == &j - &j * &j * &j * &j, || format!("S(c1({t})) = {s}, expected {want}"))?;
    }
    let s6 = s_of(&cubic(C6))?;
    ensure(s6 == frac(-1, 1296), || format!("S(c6) = {s6}"))?;
    Ok("12 canonical cubics, S(c6) = -1/1296".into())
}

fn criterion_2() -> Outcome {
    use CanonicalCubic::*;
    let tables: [(CanonicalCubic, &[&str]); 8] = [
        (C1(int(0)), &["x1*x2", "x1*x3", "x2*x3"]),
        (C2, &["x1*x2", "x1*x3", "x3^2"]),
        (C4, &["x1^2 - x2*x3", "x1*x2", "x2^2"]),
        (C7, &["x1^2 - x1*x2 + x2^2", "x1*x3", "x2*x3", "x3^2"]),
        (C8, &["x1*x3", "x2^2", "x2*x3", "x3^2"]),
        (C9, &["x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]),
        (C3, &["x1^2 - 3*x1*x3 - x2^2", "x1*x2", "x3^2"]),
        (C5, &["x1^2 - 6*x2*x3", "x2^2", "x3^2"]),
    ];
    for (id, gens) in &tables {
        let expected: Vec<GradedForm> =
            gens.iter().map(|g| parse_form(g, Side::X, 3, Some(2)).expect("table entry")).collect();
        let ann = annihilator_piece(&cubic(id.clone()), 2).map_err(|e| e.to_string())?;
        ensure(same_span(&ann, &expected), || format!("annihilator of {id} is ({})", render_tuple(&ann)))?;
    }
    Ok(format!("{} tables", tables.len()))
}

fn criterion_3() -> Outcome {
    let mut scalars = Vec::new();
    for t in 1..=3i64 {
        let a = associated_form(&hesse_x(&frac(-18, t)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.form;
        let target = cubic(CanonicalCubic::C1(int(t)));
        let mu = proportional(&target, &a).ok_or_else(|| format!("A(c1(-18/{t})) = {}", render_form(&a)))?;
        ensure(!mu.is_zero(), || format!("zero scalar for t = {t}"))?;
        scalars.push(mu.to_string());
    }
    let a = associated_form(&hesse_x(&int(0)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.form;
    let mu = proportional(&cubic(CanonicalCubic::C6), &a).ok_or_else(|| format!("A(c1(0)) = {}", render_form(&a)))?;
    ensure(!mu.is_zero(), || "zero scalar for c6".into())?;
    scalars.push(mu.to_string());
    Ok(format!("scalars {}", scalars.join(", ")))
}

fn roundtrip_pair(n: usize, d: u32, cases: usize) -> Result<(), String> {
    let mut sampler = Sampler::new(SEED ^ ((n as u64) << 8 | d as u64), HEIGHT);
    let target = expected_hilbert(n, d);
    for _ in 0..cases {
        let t = sampler.good_tuple(n, d).map_err(|e| e.to_string())?;
        let ctx = || render_tuple(t.forms());
        let a = associated_form_tuple(&t).map_err(|e| format!("({}): {e}", ctx()))?.form;
        let seq = gorenstein_sequence(&a).map_err(|e| e.to_string())?;
        ensure(seq == target, || format!("({}): Gorenstein sequence {seq:?}", ctx()))?;
        let ann = annihilator_piece(&a, d).map_err(|e| e.to_string())?;
        ensure(same_span(&ann, t.forms()), || format!("({}): annihilator span differs", ctx()))?;
        let back = recover_tuple(&a).map_err(|e| format!("({}): {e}", ctx()))?;
        let again = associated_form_tuple(&back).map_err(|e| e.to_string())?.form;
        ensure(proportional(&a, &again).is_some(), || format!("({}): A(recovered) not proportional", ctx()))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let pairs = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];
    let results: Vec<Result<(), String>> = thread::scope(|s| {
        let handles: Vec<_> = pairs.iter().map(|&(n, d)| s.spawn(move || roundtrip_pair(n, d, 100))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panic".into()))).collect()
    });
    for ((n, d), r) in pairs.iter().zip(results) {
        r.map_err(|e| format!("n={n} d={d} {e}"))?;
    }
    Ok("100 tuples for each of 5 (n, d)".into())
}

fn criterion_5() -> Outcome {
    let frozen = [((2, 2), 3), ((2, 3), 5), ((3, 2), 10), ((3, 3), 22)];
    let ranks: Vec<Result<usize, String>> = thread::scope(|s| {
        let handles: Vec<_> = frozen
            .iter()
            .map(|&((n, d), _)| {
                s.spawn(move || {
                    let mut sampler = Sampler::new(SEED + n as u64 * 10 + d as u64, HEIGHT);
                    let t = sampler.good_tuple(n, d).map_err(|e| e.to_string())?;
                    differential_rank(&t).map_err(|e| e.to_string())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panic".into()))).collect()
    });
    let mut shown = Vec::new();
    for (((n, d), want), rank) in frozen.iter().zip(ranks) {
        let rank = rank?;
        ensure(rank == *want && rank == expected_dimension(*n, *d), || format!("n={n} d={d}: rank {rank}, expected {want}"))?;
        shown.push(rank.to_string());
    }
    Ok(format!("ranks {}", shown.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut sampler = Sampler::new(SEED + 6, HEIGHT);
    let mut degenerate = 0;
    let mut vanishing = 0;
    for k in 0..200 {
        let d = 2 + (k % 3) as u32;
        let t = if k % 5 == 4 {
            degenerate += 1;
            sampler.degenerate_tuple(2, d)
        } else {
            sampler.tuple(2, d)
        };
        let syl = sylvester_resultant(&t.forms()[0], &t.forms()[1]).map_err(|e| e.to_string())?;
        vanishing += usize::from(syl.is_zero());
        ensure(!syl.is_zero() == resultant_nonvanishing(&t), || format!("Sylvester ({}) = {syl}", render_tuple(t.forms())))?;
    }
    for k in 0..100 {
        let t = if k % 4 == 3 {
            degenerate += 1;
            sampler.degenerate_tuple(3, 2)
        } else {
            sampler.tuple(3, 2)
        };
        let r = macaulay_resultant(&t, sampler.rng()).map_err(|e| format!("({}): {e}", render_tuple(t.forms())))?;
        vanishing += usize::from(!r.nonvanishing);
        ensure(r.nonvanishing == resultant_nonvanishing(&t), || format!("Macaulay ({})", render_tuple(t.forms())))?;
    }
    ensure(degenerate >= 20 && vanishing >= 20, || format!("{degenerate} degenerate, {vanishing} vanishing"))?;
    Ok(format!("300 tuples, {vanishing} with vanishing resultant"))
}

fn criterion_7() -> Outcome {
    let mut sampler = Sampler::new(SEED + 7, HEIGHT);
    let mut in_z_count = 0;
    for k in 0..50 {
        let f = u_cubic(&mut sampler, k).map_err(|e| e.to_string())?;
        let charts: Vec<_> = all_charts(&f).map_err(|e| e.to_string())?.take(2).collect();
        ensure(charts.len() == 2, || format!("{} lies in one chart", render_form(&f)))?;
        let verdicts: Vec<bool> = charts
            .iter()
            .map(|c| chart_basis_at(&f, c).map(|b| !resultant_nonvanishing(&b)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(verdicts[0] == verdicts[1], || format!("charts disagree on {}", render_form(&f)))?;
        in_z_count += usize::from(verdicts[0]);
    }
    ensure(in_z_count > 0 && in_z_count < 50, || format!("{in_z_count} of 50 charted forms in Z"))?;
    for k in 0..50 {
        let f = u_cubic(&mut sampler, k).map_err(|e| e.to_string())?;
        let c = sampler.invertible_matrix(3).map_err(|e| e.to_string())?;
        let before = in_z(&f).map_err(|e| e.to_string())?;
        let after = in_z(&f.substitute(&c)).map_err(|e| e.to_string())?;
        ensure(before == after, || format!("Z not invariant at {}", render_form(&f)))?;
    }
    for k in 0..50 {
        let f = sampler.form(Side::Y, 3, 3);
        let j = 1 + (k % 2) as u32;
        let c = sampler.invertible_matrix(3).map_err(|e| e.to_string())?;
        let c_inv_t = c.inverse().map_err(|e| e.to_string())?.transpose();
        let lhs = annihilator_piece(&f.substitute(&c), j).map_err(|e| e.to_string())?;
        let rhs: Vec<GradedForm> =
            annihilator_piece(&f, j).map_err(|e| e.to_string())?.iter().map(|h| h.substitute(&c_inv_t)).collect();
        ensure(same_span(&lhs, &rhs), || format!("transform fails at {} in degree {j}", render_form(&f)))?;
    }
    Ok(format!("150 cases, {in_z_count} charted forms in Z"))
}

fn criterion_8() -> Outcome {
    use CanonicalCubic::*;
    let mut sampler = Sampler::new(SEED + 8, HEIGHT);
    let canon = [C1(int(0)), C1(int(1)), C1(int(2)), C1(int(6)), C2, C3, C4, C5, C6, C7, C8, C9];
    let mut forms: Vec<GradedForm> = canon.iter().cloned().map(cubic).collect();
    forms.extend((0..200).map(|_| sampler.form(Side::Y, 3, 3)));
    for id in [C1(int(0)), C2, C4, C7] {
        let c = sampler.invertible_matrix(3).map_err(|e| e.to_string())?;
        forms.push(cubic(id).substitute(&c));
    }
    let mut outside = 0;
    for f in &forms {
        let by_u_res = in_u_res(f).map_err(|e| e.to_string())?;
        let by_s = in_image_ternary(f).map_err(|e| e.to_string())?;
        ensure(by_s == by_u_res, || format!("routes disagree on {}", render_form(f)))?;
        outside += usize::from(!by_s);
    }
    Ok(format!("{} cubics, {outside} outside the image", forms.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("aronhold partition", criterion_1),
        ("annihilator tables", criterion_2),
        ("hesse pencil", criterion_3),
        ("inverse-system round trip", criterion_4),
        ("dimension formula", criterion_5),
        ("resultant consistency", criterion_6),
        ("chart coherence and GL invariance", criterion_7),
        ("ternary membership routes", criterion_8),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(info) => println!("criterion {} ({name}): pass [{info}; {secs:.2}s]", i + 1),
            Err(msg) => {
                all = false;
                println!("criterion {} ({name}): FAIL [{msg}; {secs:.2}s]", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
