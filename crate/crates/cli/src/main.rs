use std::io::{self, Read};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use assoform::assocform::{associated_form, associated_form_tuple, AssociatedForm};
use assoform::catvar::{certify, form_shape, recover_tuple, MembershipCertificate};
use assoform::quotalg::FormTuple;
use assoform::sample::DEFAULT_HEIGHT;
use assoform::ternary::{aronhold_s_form, in_image_ternary};
use assoform::textio::{fixture_lines, parse_form, render_form, render_tuple, FormJson};
use assoform::verify::{run_suite, Suite, VerifyConfig, VerifyReport, SCHEMA};
use assoform::{Error, GradedForm, Side};

#[derive(Parser, Debug)]
#[command(name = "assoform", version, about = "Associated forms, catalecticant loci and the Aronhold invariant, in exact arithmetic")]
struct Cli {
    /// Number of variables (inferred from the input when omitted).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Degree d of the tuple entries.
    #[arg(long, global = true)]
    d: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on the absolute value of random integer coefficients.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT)]
    height: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cases per suite (verify only).
    #[arg(long, global = true)]
    cases: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A(f) for a form of degree d+1, or the associated form of a tuple with --tuple.
    Assoc {
        /// Read the inputs as an n-tuple of degree-d forms.
        #[arg(long)]
        tuple: bool,
        /// Forms in x1..xn; read from stdin when absent.
        input: Vec<String>,
    },
    /// Membership certificate for a form in y1..yn of degree n(d-1).
    Member { input: Option<String> },
    /// Aronhold invariant of a ternary cubic in y1, y2, y3.
    Aronhold { input: Option<String> },
    /// A tuple whose associated form is proportional to F.
    Recover { input: Option<String> },
    /// Run seeded verification suites.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Ternary,
    Roundtrip,
    Dimension,
    Charts,
    Resultant,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Ternary => Suite::Ternary,
            SuiteArg::Roundtrip => Suite::Roundtrip,
            SuiteArg::Dimension => Suite::Dimension,
            SuiteArg::Charts => Suite::Charts,
            SuiteArg::Resultant => Suite::Resultant,
        }
    }
}

enum Failure {
    Verification,
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Domain(e @ Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Assoc { tuple, input } => assoc(cli, *tuple, input),
        Command::Member { input } => member(cli, input.as_deref()),
        Command::Aronhold { input } => aronhold(cli, input.as_deref()),
        Command::Recover { input } => recover(cli, input.as_deref()),
        Command::Verify { suite } => verify(cli, (*suite).into()),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(Failure::Io)?;
    Ok(text)
}

/// Inputs from the command line, or one per non-comment stdin line.
fn inputs(given: &[String]) -> Result<Vec<String>, Failure> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    let text = read_stdin()?;
    Ok(fixture_lines(&text).into_iter().flat_map(|(_, l)| l.split(';')).map(|s| s.trim().to_string()).collect())
}

fn single_input(given: Option<&str>) -> Result<String, Failure> {
    match given {
        Some(s) => Ok(s.to_string()),
        None => {
            let all = inputs(&[])?;
            match all.as_slice() {
                [one] => Ok(one.clone()),
                _ => Err(Error::InvalidParameter(format!("expected one form on stdin, got {}", all.len())).into()),
            }
        }
    }
}

/// Largest variable index mentioned in `text` for the given letter.
fn infer_n(texts: &[String], letter: char) -> usize {
    let mut best = 1;
    for text in texts {
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c == letter {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                best = best.max(digits.parse().unwrap_or(1));
            }
        }
    }
    best
}

fn parse_y_form(cli: &Cli, text: &str) -> Result<GradedForm, Failure> {
    let n = cli.n.unwrap_or_else(|| infer_n(&[text.to_string()], 'y'));
    let expected = cli.d.map(|d| n as u32 * d.saturating_sub(1));
    let f = parse_form(text, Side::Y, n, expected)?;
    form_shape(&f)?;
    Ok(f)
}

fn certificate_text(c: &MembershipCertificate) -> String {
    let v = &c.verdicts;
    let mut out = format!("rank_D: {}\nkernel_dim: {}\n", c.rank_d, c.kernel_dim);
    if let Some(seq) = &c.gorenstein_seq {
        let s: Vec<String> = seq.iter().map(ToString::to_string).collect();
        out += &format!("gorenstein_seq: {}\n", s.join(" "));
    }
    if let Some(ch) = &c.chart {
        out += &format!("chart: rows {:?} cols {:?}\n", ch.row_subset, ch.col_subset);
    }
    if let Some(r) = c.chart_resultant_nonzero {
        out += &format!("chart_resultant_nonzero: {r}\n");
    }
    out += &format!("V: {}\nU: {}\nGorT: {}\nZ: {}\nU_Res: {}\n", v.v, v.u, v.gor_t, v.z, v.u_res);
    out
}

fn emit(cli: &Cli, text: String, value: Value) {
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("plain data")),
    }
}

fn assoc(cli: &Cli, as_tuple: bool, given: &[String]) -> Result<(), Failure> {
    let texts = inputs(given)?;
    let n = cli.n.unwrap_or_else(|| if as_tuple { texts.len() } else { infer_n(&texts, 'x') });
    let a: AssociatedForm = if as_tuple {
        let forms = texts.iter().map(|s| parse_form(s, Side::X, n, cli.d)).collect::<Result<Vec<_>, _>>()?;
        let t = FormTuple::new(forms)?;
        if t.n() != n {
            return Err(Error::VariableCountMismatch { expected: n, found: t.n() }.into());
        }
        associated_form_tuple(&t)?
    } else {
        let [text] = texts.as_slice() else {
            return Err(Error::InvalidParameter("give one form, or use --tuple".into()).into());
        };
        associated_form(&parse_form(text, Side::X, n, cli.d.map(|d| d + 1))?)?
    };
    let cert = certify(&a.form)?;
    let rendered = render_form(&a.form);
    let text = format!("{rendered}\n{}", certificate_text(&cert));
    let value = json!({
        "schema": SCHEMA,
        "command": "assoc",
        "source": render_tuple(a.source.forms()),
        "form": rendered,
        "form_json": FormJson::from(&a.form),
        "certificate": cert,
    });
    emit(cli, text, value);
    Ok(())
}

fn member(cli: &Cli, given: Option<&str>) -> Result<(), Failure> {
    let f = parse_y_form(cli, &single_input(given)?)?;
    let cert = certify(&f)?;
    let text = format!("F: {}\n{}", render_form(&f), certificate_text(&cert));
    emit(cli, text, json!({ "schema": SCHEMA, "command": "member", "certificate": cert }));
    Ok(())
}

fn aronhold(cli: &Cli, given: Option<&str>) -> Result<(), Failure> {
    let text = single_input(given)?;
    let f = parse_form(&text, Side::Y, cli.n.unwrap_or(3), Some(3))?;
    let s = aronhold_s_form(&f)?;
    let in_image = in_image_ternary(&f)?;
    emit(
        cli,
        format!("{s}\nin_image: {in_image}\n"),
        json!({ "schema": SCHEMA, "command": "aronhold", "S": s.to_string(), "in_image": in_image }),
    );
    Ok(())
}

fn recover(cli: &Cli, given: Option<&str>) -> Result<(), Failure> {
    let f = parse_y_form(cli, &single_input(given)?)?;
    let t = recover_tuple(&f)?;
    let forms: Vec<String> = t.forms().iter().map(render_form).collect();
    emit(
        cli,
        forms.iter().map(|s| format!("{s}\n")).collect(),
        json!({ "schema": SCHEMA, "command": "recover", "tuple": forms }),
    );
    Ok(())
}

fn verify(cli: &Cli, suite: Suite) -> Result<(), Failure> {
    let cfg = VerifyConfig { n: cli.n, d: cli.d, seed: cli.seed, height: cli.height, cases: cli.cases };
    let mut reports = Vec::new();
    for s in suite.expand() {
        let start = Instant::now();
        let report = run_suite(s, &cfg)?;
        eprintln!("{s}: {:.2}s", start.elapsed().as_secs_f64());
        reports.push(report);
    }
    let report = VerifyReport::new(cfg.seed, reports);
    let mut text = String::new();
    for s in &report.suites {
        text += &format!("{}: {} ({} cases)\n", s.suite, if s.pass { "pass" } else { "FAIL" }, s.cases);
        if let Some(points) = s.details.get("points").and_then(Value::as_array) {
            for p in points {
                text += &format!("  n={} d={} differential rank {} (expected {})\n", p["n"], p["d"], p["rank"], p["expected"]);
            }
        }
        if let Some(c) = &s.counterexample {
            text += &format!("  counterexample: {c}\n");
        }
    }
    text += if report.pass { "pass\n" } else { "FAIL\n" };
    emit(cli, text, serde_json::to_value(&report).expect("plain data"));
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
