//! Command-line front end for the `sixfold` library.
//!
//! Exit codes: 0 ok, 2 singularity, 3 mismatch or nonzero residual,
//! 64 malformed or unreadable spec, 65 usage error.

pub mod spec;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sixfold::closedform::{self, well_defined_before};
use sixfold::number::Rational;
use sixfold::oracle::{self, SingularityCause};
use sixfold::sampling;
use sixfold::specialcases::SpecialCase;
use sixfold::symmetry::{self, Characteristic};
use sixfold::Error;

pub use spec::{Kind, ProblemSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_SINGULAR: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_PARSE: u8 = 64;
pub const EXIT_USAGE: u8 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "sixfold",
    version,
    about = "Exact solver for x_{n+1} = x_{n-5}x_{n-3}/(x_{n-1}(a_n + b_n x_{n-5}x_{n-3}))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Problem spec (JSON).
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Write the parsed spec back out in canonical form and stop.
    #[arg(long)]
    emit_spec: bool,
    /// Output file; stdout if omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    General,
    Auto,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate the recurrence directly and write x_{-5}..x_N as CSV.
    Iterate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of steps; defaults to the horizon in the input file.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Evaluate the closed form over an inclusive index range as CSV.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        /// Inclusive range of indices m, e.g. `-5..20`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Option<(i64, i64)>,
        #[arg(long, value_enum, default_value = "general")]
        engine: Engine,
    },
    /// Compare the direct iteration, the closed form and (when one applies)
    /// the special-case formula; writes a JSON report.
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: Option<u64>,
        /// Perturb the closed-form engine to check that mismatches are caught.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Run the symmetry verification suite on seeded random samples.
    VerifySymmetry {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Replace the characteristics with Q(n, u) = u, which is not a symmetry.
        #[arg(long, hide = true)]
        counterfeit: bool,
    },
    /// Write a random spec with no singularity up to the horizon.
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 55)]
        n: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("range start: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Iterate { spec, n } => {
            with_spec(&spec, stdout, |p, out| cmd_iterate(p, n, out, stderr))
        }
        Command::Solve {
            spec,
            range,
            engine,
        } => with_spec(&spec, stdout, |p, out| {
            cmd_solve(p, range, engine, out, stderr)
        }),
        Command::Compare { spec, n, corrupt } => {
            with_spec(&spec, stdout, |p, out| cmd_compare(p, n, corrupt, out))
        }
        Command::VerifySymmetry {
            samples,
            seed,
            out,
            counterfeit,
        } => {
            let mut buf = String::new();
            let code = cmd_verify_symmetry(samples, seed, counterfeit, &mut buf)?;
            emit(out.as_deref(), &buf, stdout)?;
            Ok(code)
        }
        Command::Sample { seed, n, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = sampling::random_regular_instance(&mut rng, n);
            let spec =
                ProblemSpec::from_instance(&inst, n).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            emit(out.as_deref(), &spec.to_json(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn with_spec(
    args: &SpecArgs,
    stdout: &mut dyn Write,
    f: impl FnOnce(&ProblemSpec, &mut String) -> CmdResult,
) -> CmdResult {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.spec.display())))?;
    let spec = ProblemSpec::parse(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.spec.display())))?;
    let mut buf = String::new();
    let code = if args.emit_spec {
        buf.push_str(&spec.to_json());
        EXIT_OK
    } else {
        f(&spec, &mut buf)?
    };
    emit(args.out.as_deref(), &buf, stdout)?;
    Ok(code)
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write output: {e}")))
}

/// Float rendering for the CSV: plain decimals for moderate magnitudes,
/// scientific notation otherwise.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_header(out: &mut String) {
    out.push_str("m,exact,float\n");
}

fn csv_row(out: &mut String, m: i64, x: &Rational) {
    let _ = writeln!(out, "{m},{x},{}", format_float(x.to_f64()));
}

fn horizon_error(e: Error) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

pub fn cmd_iterate(
    spec: &ProblemSpec,
    n: Option<u64>,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CmdResult {
    let n = n.unwrap_or(spec.horizon);
    let orbit = oracle::iterate(&spec.initial, &spec.sequence(), n).map_err(horizon_error)?;
    csv_header(out);
    for (k, x) in orbit.terms().iter().enumerate() {
        csv_row(out, k as i64 - 5, x);
    }
    match orbit.halt() {
        None => Ok(EXIT_OK),
        Some(h) => {
            let _ = writeln!(
                stderr,
                "singularity at step {}: {}",
                h.step,
                cause_name(h.cause)
            );
            Ok(EXIT_SINGULAR)
        }
    }
}

fn cause_name(c: SingularityCause) -> &'static str {
    match c {
        SingularityCause::ZeroPredecessor => "zero_predecessor",
        SingularityCause::ZeroDenominatorFactor => "zero_denominator_factor",
    }
}

fn cmd_solve(
    spec: &ProblemSpec,
    range: Option<(i64, i64)>,
    engine: Engine,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CmdResult {
    let (lo, hi) = range.unwrap_or((-5, spec.horizon as i64));
    if lo < -5 {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("range starts below -5: {lo}"),
        ));
    }
    let coeffs = spec.sequence();
    let special = match engine {
        Engine::General => None,
        Engine::Auto => Some(SpecialCase::detect(&coeffs).map_err(|e| {
            Failure::new(
                EXIT_USAGE,
                format!("no dedicated formula for this spec: {e}"),
            )
        })?),
    };
    csv_header(out);
    for m in lo..=hi {
        let value = match &special {
            Some(case) => case.term(m, &spec.initial),
            None => closedform::term(m, &spec.initial, &coeffs),
        };
        match value {
            Ok(x) => csv_row(out, m, &x),
            Err(Error::SingularClosedForm { j, s, v_index }) => {
                let _ = writeln!(
                    stderr,
                    "singular at m = {m}: well-definedness condition (j={j}, s={s}) fails, V_{v_index} = 0"
                );
                return Ok(EXIT_SINGULAR);
            }
            Err(e) => return Err(horizon_error(e)),
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Row {
    m: i64,
    oracle: String,
    closed_form: Option<String>,
    special: Option<String>,
    #[serde(rename = "match")]
    matched: bool,
}

#[derive(Serialize)]
struct Singularity {
    step: u64,
    cause: &'static str,
}

#[derive(Serialize)]
struct ViolationOut {
    j: u8,
    s: u64,
    v_index: u64,
    step: u64,
}

#[derive(Serialize)]
struct Summary {
    rows: usize,
    special_case: Option<&'static str>,
    first_mismatch: Option<i64>,
    singularity: Option<Singularity>,
    violations: Vec<ViolationOut>,
    guard_agrees: bool,
}

#[derive(Serialize)]
struct ComparisonReport {
    rows: Vec<Row>,
    summary: Summary,
}

fn render(r: sixfold::Result<Rational>) -> Option<String> {
    r.ok().map(|x| x.to_string())
}

pub fn cmd_compare(
    spec: &ProblemSpec,
    n: Option<u64>,
    corrupt: bool,
    out: &mut String,
) -> CmdResult {
    let n = n.unwrap_or(spec.horizon);
    let coeffs = spec.sequence();
    let ic = &spec.initial;
    let orbit = oracle::iterate(ic, &coeffs, n).map_err(horizon_error)?;
    let special = SpecialCase::detect(&coeffs).ok();
    let mut rows = Vec::with_capacity(orbit.terms().len());
    for (k, x) in orbit.terms().iter().enumerate() {
        let m = k as i64 - 5;
        let mut closed = closedform::term(m, ic, &coeffs);
        if corrupt && k + 1 == orbit.terms().len() {
            closed = closed.map(|v| v + Rational::one());
        }
        let sp = special.as_ref().map(|c| c.term(m, ic));
        let matched = closed.as_ref().is_ok_and(|v| v == x)
            && sp.as_ref().is_none_or(|s| s.as_ref().is_ok_and(|v| v == x));
        rows.push(Row {
            m,
            oracle: x.to_string(),
            closed_form: render(closed),
            special: sp.and_then(render),
            matched,
        });
    }
    let report = well_defined_before(ic, &coeffs, n).map_err(horizon_error)?;
    let halt = orbit.halt();
    let guard_agrees = report.first().map(|v| v.step()) == halt.map(|h| h.step);
    let summary = Summary {
        rows: rows.len(),
        special_case: special.as_ref().map(SpecialCase::name),
        first_mismatch: rows.iter().find(|r| !r.matched).map(|r| r.m),
        singularity: halt.map(|h| Singularity {
            step: h.step,
            cause: cause_name(h.cause),
        }),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationOut {
                j: v.j,
                s: v.s,
                v_index: v.v_index(),
                step: v.step(),
            })
            .collect(),
        guard_agrees,
    };
    let ok = summary.first_mismatch.is_none() && guard_agrees;
    let json = serde_json::to_string_pretty(&ComparisonReport { rows, summary })
        .expect("plain data serializes");
    out.push_str(&json);
    out.push('\n');
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn cmd_verify_symmetry(
    samples: usize,
    seed: u64,
    counterfeit: bool,
    out: &mut String,
) -> CmdResult {
    if samples == 0 {
        return Err(Failure::new(EXIT_USAGE, "--samples must be at least 1"));
    }
    let genuine = [("Q1", Characteristic::Q1), ("Q2", Characteristic::Q2)];
    let fake = [("Q(n,u)=u", Characteristic::Custom(symmetry::unscaled))];
    let chars: &[_] = if counterfeit { &fake } else { &genuine };
    let report = symmetry::run_symmetry_suite(samples, seed, chars);
    let _ = write!(out, "{report}");
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}
