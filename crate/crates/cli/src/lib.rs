//! `vk`: evaluate expressions in the virtual K-theory of P(1,n) and run the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure (or a `line` query that is
//! not a line element), 2 usage, parse or evaluation error.

pub mod eval;
pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use virtual_k::line_elements::{is_line_element, Membership};
use virtual_k::par::Execution;
use virtual_k::verify::{run_verify, Suite, VerifyOptions, VerifyRun};

use eval::{Context, EvalError, LocalBasis, Value};
use expr::{Expr, Func, Kind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "vk", version, about = "Exact virtual K-theory of the weighted projective line P(1,n)")]
pub struct Cli {
    /// The weight n (at least 2).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: Option<u32>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Auto,
    Loc,
    U,
}

impl From<BasisArg> for LocalBasis {
    fn from(b: BasisArg) -> LocalBasis {
        match b {
            BasisArg::Auto => LocalBasis::Auto,
            BasisArg::Loc => LocalBasis::Loc,
            BasisArg::U => LocalBasis::U,
        }
    }
}

#[derive(Args, Debug)]
pub struct BasisOpt {
    /// Output basis for localized results.
    #[arg(long, value_enum, default_value_t = BasisArg::Auto)]
    pub basis: BasisArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        basis: BasisOpt,
    },
    /// Multiply two expressions in their common basis.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        basis: BasisOpt,
    },
    /// Apply the virtual Adams operation psi^k.
    Adams {
        #[arg(long, short)]
        k: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        basis: BasisOpt,
    },
    /// Map a sector-basis expression into the localization.
    Localize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        basis: BasisOpt,
    },
    /// Map a localized expression back to the sector basis.
    Delocalize { expr: String },
    /// Decide whether a localized expression is a virtual line element.
    Line {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Largest k for the power-law test; defaults to 2n.
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n_min: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n_max: Option<u32>,
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest Adams index checked; defaults to 2n.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: Option<u32>,
        /// Record wall-clock time per report.
        #[arg(long)]
        timing: bool,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
    },
}

/// What a command produced, before formatting.
enum Outcome {
    Text(String),
    /// Already serialized, so struct field order is kept.
    Json(String),
}

struct Finished {
    output: Outcome,
    code: u8,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Usage(String),
}

/// Parses `args` (including the program name), runs the command and prints the result.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    execute(&cli, &mut stdout, &mut stderr)
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn execute(cli: &Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> u8 {
    let finished = match dispatch(cli) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match finished.output {
        Outcome::Text(s) => s,
        Outcome::Json(s) => s + "\n",
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    finished.code
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output types serialize")
}

fn need_n(cli: &Cli) -> Result<Context, CliError> {
    let n = cli.n.ok_or_else(|| CliError::Usage("this command needs --n".into()))?;
    Ok(Context::new(n)?)
}

fn show(cli: &Cli, ctx: &Context, expr: &Expr, v: &Value, basis: LocalBasis) -> Finished {
    let r = ctx.render(v, Some(expr), basis);
    let output = if cli.json {
        Outcome::Json(to_json(&r.to_json()))
    } else {
        Outcome::Text(format!("{r}\n"))
    };
    Finished { output, code: EXIT_OK }
}

/// Parses `input` and wraps it as `f(input)`, checking the argument kind first.
fn wrap(ctx: &Context, input: &str, f: Func) -> Result<Expr, CliError> {
    let (e, kind) = expr::parse(input, ctx.n()).map_err(EvalError::from)?;
    match (f, kind) {
        (Func::Gamma, Kind::Local) => Err(CliError::Usage("localize expects a sector-basis expression".into())),
        (Func::GammaInv, Kind::Sector) => Err(CliError::Usage("delocalize expects a localized expression".into())),
        _ => Ok(Expr::Call(f, Box::new(e))),
    }
}

fn dispatch(cli: &Cli) -> Result<Finished, CliError> {
    match &cli.command {
        Command::Eval { expr, basis } => {
            let ctx = need_n(cli)?;
            let (e, v) = ctx.parse_eval(expr)?;
            Ok(show(cli, &ctx, &e, &v, basis.basis.into()))
        }
        Command::Mul { a, b, basis } => {
            let ctx = need_n(cli)?;
            let ea = expr::parse(a, ctx.n()).map_err(EvalError::from)?;
            let eb = expr::parse(b, ctx.n()).map_err(EvalError::from)?;
            // Reparse the product so basis mixing is reported like any other expression.
            let joined = format!("({}) * ({})", ea.0, eb.0);
            let (e, v) = ctx.parse_eval(&joined)?;
            Ok(show(cli, &ctx, &e, &v, basis.basis.into()))
        }
        Command::Adams { k, expr, basis } => {
            let ctx = need_n(cli)?;
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let e = wrap(&ctx, expr, Func::Psi(*k))?;
            let v = ctx.eval(&e).map_err(CliError::from)?;
            Ok(show(cli, &ctx, &e, &v, basis.basis.into()))
        }
        Command::Localize { expr, basis } => {
            let ctx = need_n(cli)?;
            let e = wrap(&ctx, expr, Func::Gamma)?;
            let v = ctx.eval(&e)?;
            Ok(show(cli, &ctx, &e, &v, basis.basis.into()))
        }
        Command::Delocalize { expr } => {
            let ctx = need_n(cli)?;
            let e = wrap(&ctx, expr, Func::GammaInv)?;
            let v = ctx.eval(&e)?;
            Ok(show(cli, &ctx, &e, &v, LocalBasis::Auto))
        }
        Command::Line { expr, k_max } => {
            let ctx = need_n(cli)?;
            let (e, kind) = expr::parse(expr, ctx.n()).map_err(EvalError::from)?;
            let v = ctx.eval(&e)?;
            let local = match (kind, v) {
                (Kind::Sector, Value::Sector(k)) => ctx.loc.gamma(&k),
                (_, Value::Local(l)) => l,
                (_, Value::Scalar(c)) => virtual_k::localization::LocClass::one(ctx.n()).scale(&c),
                (_, Value::Sector(k)) => ctx.loc.gamma(&k),
            };
            let k_max = k_max.unwrap_or(2 * ctx.n()).max(2);
            let m = is_line_element(&ctx.loc, &ctx.loc.to_u_basis(&local), k_max);
            Ok(line_outcome(cli, &m, k_max))
        }
        Command::Verify { n_min, n_max, suite, k_max, timing, sequential } => {
            let suites = Suite::parse_list(suite).map_err(CliError::Usage)?;
            let (lo, hi) = match (cli.n, n_min, n_max) {
                (Some(n), None, None) => (n, n),
                (Some(_), _, _) => return Err(CliError::Usage("use either --n or --n-min/--n-max".into())),
                (None, lo, hi) => (lo.unwrap_or(2), hi.unwrap_or(lo.unwrap_or(2).max(4))),
            };
            if lo > hi {
                return Err(CliError::Usage(format!("--n-min {lo} exceeds --n-max {hi}")));
            }
            let opts = VerifyOptions {
                n_min: lo,
                n_max: hi,
                suites,
                k_max: *k_max,
                execution: if *sequential { Execution::Sequential } else { Execution::Parallel },
                timing: *timing,
                ..VerifyOptions::default()
            };
            let run = run_verify(&opts).map_err(EvalError::from)?;
            let code = if run.passed() { EXIT_OK } else { EXIT_FAILED };
            let output = if cli.json {
                Outcome::Json(to_json(&run))
            } else {
                Outcome::Text(verify_text(&run))
            };
            Ok(Finished { output, code })
        }
    }
}

fn line_outcome(cli: &Cli, m: &Membership, k_max: u32) -> Finished {
    let (is_line, text) = match m {
        Membership::Line(l) => (true, format!("line element {l}")),
        Membership::NotInvertible => (false, "not a line element: not invertible".to_string()),
        Membership::PowerLawFails(k) => (false, format!("not a line element: psi^{k}(a) != a^{k}")),
        Membership::NoParameters => {
            (false, format!("not a line element: power law holds for k <= {k_max} but no parameters (f; beta) fit"))
        }
    };
    let output = if cli.json {
        let params = match m {
            Membership::Line(l) => serde_json::json!({
                "f": l.f(),
                "beta": l.beta().iter().map(|b| b.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            _ => serde_json::Value::Null,
        };
        Outcome::Json(to_json(&serde_json::json!({ "line": is_line, "detail": text, "params": params })))
    } else {
        Outcome::Text(text + "\n")
    };
    Finished { output, code: if is_line { EXIT_OK } else { EXIT_FAILED } }
}

fn verify_text(run: &VerifyRun) -> String {
    let mut s = String::new();
    for r in &run.reports {
        let failed = r.failures().count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        let _ = write!(s, "n={} {:<14} {status} {} checks", r.n, r.suite.name(), r.checks.len());
        if failed > 0 {
            let _ = write!(s, ", {failed} failed");
        }
        if let Some(ms) = r.timing_ms {
            let _ = write!(s, " ({ms:.1} ms)");
        }
        s.push('\n');
        for c in r.failures() {
            let _ = writeln!(s, "  FAIL {}: {} != {}", c.id, c.lhs, c.rhs);
        }
    }
    let verdict = if run.passed() { "all checks passed" } else { "verification FAILED" };
    let _ = writeln!(s, "{verdict} ({} checks)", run.check_count());
    s
}
