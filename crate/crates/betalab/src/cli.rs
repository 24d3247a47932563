//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or domain
//! errors, 3 non-convergence.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use betalab_core::limits::{self, LimitResult};
use betalab_core::quadrature::{self, QuadratureResult};
use betalab_core::series::{self, Progress, SeriesControl, SeriesResult, SumConvention};
use betalab_core::special;
use betalab_core::verify::{self, Overrides};
use betalab_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::number::g17;
use crate::report::{render_report, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "betalab", version, about = "Special-function lab: evaluate, sum, integrate, extrapolate and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function.
    Eval(EvalArgs),
    /// Sum one of the built-in series and show its convergence.
    Series(SeriesArgs),
    /// Integrate one of the built-in integrals over (0, 1).
    Integrate(IntegrateArgs),
    /// Extrapolate one of the built-in v → 0 limits.
    Limit(LimitArgs),
    /// Run the identity verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Lgamma,
    Gamma,
    Beta,
    Digamma,
    Trigamma,
    Polygamma,
    HurwitzZeta,
    Zeta,
    Rising,
    Falling,
    CentralBinom,
    Harmonic,
    OddHarmonic,
    GammaHalf,
    BetaHalf,
    EulerGamma,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: Function,
    /// First argument (x, u, s, or n for integer functions).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Second argument (v for beta, a for hurwitz-zeta, n for rising and
    /// falling, the order m for polygamma).
    #[arg(long, allow_negative_numbers = true)]
    pub x2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Beta,
    BetaLimit,
    Digamma,
    Log2,
    Norlund,
    Trigamma,
    TrigammaHalf,
    Zeta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Literal,
    Corrected,
}

impl From<Convention> for SumConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Literal => SumConvention::Literal,
            Convention::Corrected => SumConvention::Corrected,
        }
    }
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    pub kind: SeriesKind,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// The a of the Nörlund series.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// The x of the Nörlund series.
    #[arg(long, allow_negative_numbers = true)]
    pub xarg: Option<f64>,
    #[arg(long, default_value_t = series::DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
    #[arg(long, default_value_t = series::DEFAULT_TOL)]
    pub tol: f64,
    /// Print a table row every K terms (default: a tenth of --max-terms).
    #[arg(long)]
    pub every: Option<u64>,
    #[arg(long, value_enum, default_value_t = Convention::Corrected)]
    pub convention: Convention,
    #[arg(long)]
    pub no_tail_correction: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegralKind {
    Beta,
    LogKernel,
    Digamma,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    pub kind: IntegralKind,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    #[arg(long, default_value_t = quadrature::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    GammaPole,
    GammaDerivative,
    BetaPole,
    ScaledBeta,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    pub kind: LimitKind,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    /// Largest extrapolation node (default 0.5 for gamma, 0.25 for beta).
    #[arg(long)]
    pub h0: Option<f64>,
    #[arg(long, default_value_t = limits::DEFAULT_DEPTH)]
    pub depth: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated identity ids to run (default: all).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = series::DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
    /// Replace every identity's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub no_tail_correction: bool,
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::NotConverged { .. }) => EXIT_NOT_CONVERGED,
            Failure::Io(_) => EXIT_FAILURES,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn required(value: Option<f64>, flag: &str, what: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{what} requires --{flag}")))
}

fn integer(value: f64, flag: &str) -> Result<u32, Failure> {
    if value.fract() == 0.0 && (0.0..=u32::MAX as f64).contains(&value) {
        Ok(value as u32)
    } else {
        Err(Failure::Usage(format!("--{flag} must be a non-negative integer, got {value}")))
    }
}

/// Parses `argv` (program name first) and runs it. Usage errors from the
/// parser are printed to `err` and mapped to their exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            code
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match cli.command {
        Command::Eval(args) => eval(&args, out),
        Command::Series(args) => run_series(&args, out),
        Command::Integrate(args) => integrate(&args, out),
        Command::Limit(args) => limit(&args, out),
        Command::Verify(args) => run_verify(&args, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            failure.exit_code()
        }
    }
}

fn eval(args: &EvalArgs, out: &mut dyn Write) -> Outcome {
    let name = args.function.to_possible_value().expect("no skipped variants");
    let name = name.get_name();
    let x = || required(args.x, "x", name);
    let x2 = || required(args.x2, "x2", name);
    let value = match args.function {
        Function::Lgamma => special::lgamma(x()?)?,
        Function::Gamma => special::gamma(x()?)?,
        Function::Beta => special::beta(x()?, x2()?)?,
        Function::Digamma => special::digamma(x()?)?,
        Function::Trigamma => special::trigamma(x()?)?,
        Function::Polygamma => special::polygamma(integer(x2()?, "x2")?, x()?)?,
        Function::HurwitzZeta => special::hurwitz_zeta(x()?, x2()?)?,
        Function::Zeta => special::riemann_zeta(x()?)?,
        Function::Rising => special::rising(x()?, integer(x2()?, "x2")?)?,
        Function::Falling => special::falling(x()?, integer(x2()?, "x2")?)?,
        Function::CentralBinom => special::central_binom(integer(x()?, "x")?),
        Function::Harmonic => special::harmonic(integer(x()?, "x")?.into()),
        Function::OddHarmonic => special::odd_harmonic(integer(x()?, "x")?.into()),
        Function::GammaHalf => special::gamma_half(integer(x()?, "x")?)?,
        Function::BetaHalf => special::beta_half(integer(x()?, "x")?)?,
        Function::EulerGamma => special::euler_gamma(),
    };
    writeln!(out, "{}", g17(value))?;
    Ok(EXIT_OK)
}

fn run_series(args: &SeriesArgs, out: &mut dyn Write) -> Outcome {
    let ctrl = SeriesControl::default()
        .with_max_terms(args.max_terms)
        .with_tol(args.tol)
        .with_tail_correction(!args.no_tail_correction);
    ctrl.validate()?;
    let every = match args.every {
        Some(0) => return Err(Failure::Usage("--every must be positive".into())),
        Some(k) => k,
        None => (args.max_terms / 10).max(1),
    };

    // Row tails reuse the two-point fit through a_{n/2} and a_n, so the
    // terms seen so far are kept.
    let mut terms: Vec<f64> = Vec::new();
    let mut rows: Vec<String> = Vec::new();
    let observe = |p: &Progress| {
        terms.push(p.term);
        if p.n % every == 0 {
            let half = p.n / 2;
            let tail = if half == 0 {
                f64::INFINITY
            } else {
                series::power_law_tail(terms[half as usize - 1], half, p.term, p.n).unwrap_or(f64::INFINITY)
            };
            rows.push(format!(
                "{:>10}  {:>24}  {:>24}  {:>24}",
                p.n,
                g17(p.term),
                g17(p.partial_sum),
                g17(tail)
            ));
        }
    };

    let u = || required(args.u, "u", "this series");
    let convention = SumConvention::from(args.convention);
    let result = match args.kind {
        SeriesKind::Beta => series::beta_series_with(u()?, required(args.v, "v", "beta")?, &ctrl, observe)?,
        SeriesKind::BetaLimit => series::beta_limit_series_with(u()?, &ctrl, observe)?,
        SeriesKind::Digamma => series::digamma_series_with(u()?, &ctrl, observe)?,
        SeriesKind::Log2 => series::log2_series_with(&ctrl, observe)?,
        SeriesKind::Norlund => series::norlund_diff_with(
            required(args.xarg, "xarg", "norlund")?,
            required(args.a, "a", "norlund")?,
            &ctrl,
            observe,
        )?,
        SeriesKind::Trigamma => series::trigamma_series_with(u()?, &ctrl, observe)?,
        SeriesKind::TrigammaHalf => series::trigamma_half_series_with(convention, &ctrl, observe)?,
        SeriesKind::Zeta2 => series::zeta2_series_with(convention, &ctrl, observe)?,
    };

    writeln!(out, "{:>10}  {:>24}  {:>24}  {:>24}", "n", "term", "partial_sum", "tail_estimate")?;
    for row in &rows {
        writeln!(out, "{row}")?;
    }
    write_series_summary(&result, out)?;
    Ok(if result.is_unconverged(&ctrl) {
        EXIT_NOT_CONVERGED
    } else {
        EXIT_OK
    })
}

fn write_series_summary(r: &SeriesResult, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "value: {}", g17(r.value))?;
    writeln!(out, "raw_partial_sum: {}", g17(r.raw_partial_sum))?;
    writeln!(out, "tail_estimate: {}", g17(r.tail_estimate))?;
    writeln!(out, "terms_used: {}", r.terms_used)?;
    writeln!(out, "termination: {}", r.termination.as_str())?;
    writeln!(out, "reductions: {}", r.reductions)
}

fn integrate(args: &IntegrateArgs, out: &mut dyn Write) -> Outcome {
    let u = required(args.u, "u", "integrate")?;
    let r: QuadratureResult = match args.kind {
        IntegralKind::Beta => quadrature::beta_integral_with(u, required(args.v, "v", "beta")?, args.tol)?,
        IntegralKind::LogKernel => quadrature::log_kernel_moment_with(u, args.tol)?,
        IntegralKind::Digamma => quadrature::digamma_integral_with(u, args.tol)?,
    };
    writeln!(out, "value: {}", g17(r.value))?;
    writeln!(out, "error_estimate: {}", g17(r.error_estimate))?;
    writeln!(out, "levels_used: {}", r.levels_used)?;
    writeln!(out, "evaluations: {}", r.evaluations)?;
    Ok(EXIT_OK)
}

fn write_limit(label: &str, r: &LimitResult, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{label}value: {}", g17(r.value))?;
    writeln!(out, "{label}error_estimate: {}", g17(r.error_estimate))?;
    writeln!(out, "{label}table_depth: {}", r.table_depth)
}

fn limit(args: &LimitArgs, out: &mut dyn Write) -> Outcome {
    let u = || required(args.u, "u", "beta limits");
    let gamma_h0 = args.h0.unwrap_or(limits::GAMMA_H0);
    let beta_h0 = args.h0.unwrap_or(limits::BETA_H0);
    match args.kind {
        LimitKind::GammaPole => write_limit("", &limits::gamma_pole_limit_with(gamma_h0, args.depth)?, out)?,
        LimitKind::GammaDerivative => {
            write_limit("", &limits::gamma_derivative_at_1_with(gamma_h0, args.depth)?, out)?
        }
        LimitKind::BetaPole => write_limit("", &limits::beta_pole_limit_with(u()?, beta_h0, args.depth)?, out)?,
        LimitKind::ScaledBeta => {
            let (pole, shifted) = limits::scaled_beta_limits_with(u()?, beta_h0, args.depth)?;
            write_limit("v_beta.", &pole, out)?;
            write_limit("shifted.", &shifted, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let overrides = Overrides {
        grid: None,
        tolerance: args.tol,
        series: SeriesControl::default()
            .with_max_terms(args.max_terms)
            .with_tail_correction(!args.no_tail_correction),
    };
    let report = verify::run_suite(args.only.as_deref(), &overrides)?;
    let body = render_report(&report, args.format);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            let c = &report.counts;
            writeln!(
                err,
                "wrote {}: total {} passed {} failed {} skipped {}",
                path.display(),
                c.total,
                c.passed,
                c.failed,
                c.skipped
            )?;
        }
        None => out.write_all(&body)?,
    }
    Ok(if report.records.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_FAILURES
    })
}
