//! Identity registry and grid runner.
//!
//! Each [`IdentitySpec`] pairs two independent evaluation routes (closed form,
//! quadrature, series or extrapolated limit) for the same quantity and checks
//! them against each other over a parameter grid.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use crate::limits::{self, LimitResult};
use crate::quadrature::{self, QuadratureResult};
use crate::series::{self, SeriesControl, SeriesResult, SumConvention};
use crate::special::{self, EULER_GAMMA};
use crate::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default tolerance for closed-form and quadrature identities (absolute).
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Default tolerance for identities backed by an extrapolated limit.
pub const LIMIT_TOL: f64 = 1e-7;
/// Default base tolerance for series identities (tail-aware).
pub const SERIES_TOL: f64 = 1e-4;

/// Step of the central difference used by PSIM.
pub const PSIM_STEP: f64 = 1e-5;

const DEFAULT_U: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 2.0, 3.5, 5.0];
const DEFAULT_V: [f64; 3] = [0.5, 1.0, 2.5];
const ZETA_S: [f64; 4] = [2.0, 3.0, 4.0, 6.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceMode {
    Absolute,
    Relative,
    /// tolerance + tail estimate reported by the series side(s).
    TailAware,
}

impl ToleranceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ToleranceMode::Absolute => "absolute",
            ToleranceMode::Relative => "relative",
            ToleranceMode::TailAware => "tail_aware",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Diagnostics {
    pub terms_used: Option<u64>,
    pub tail_estimate: Option<f64>,
    pub levels_used: Option<u32>,
    pub table_depth: Option<u32>,
}

impl Diagnostics {
    fn merge(self, other: Self) -> Self {
        let tail_estimate = match (self.tail_estimate, other.tail_estimate) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
        Self {
            terms_used: self.terms_used.or(other.terms_used),
            tail_estimate,
            levels_used: self.levels_used.or(other.levels_used),
            table_depth: self.table_depth.or(other.table_depth),
        }
    }
}

/// One side of an identity: a value and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub value: f64,
    pub diagnostics: Diagnostics,
}

impl Side {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            diagnostics: Diagnostics::default(),
        }
    }

    fn scaled(self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            value: f(self.value),
            ..self
        }
    }
}

impl From<SeriesResult> for Side {
    fn from(r: SeriesResult) -> Self {
        Self {
            value: r.value,
            diagnostics: Diagnostics {
                terms_used: Some(r.terms_used),
                tail_estimate: Some(r.tail_estimate),
                ..Diagnostics::default()
            },
        }
    }
}

impl From<QuadratureResult> for Side {
    fn from(r: QuadratureResult) -> Self {
        Self {
            value: r.value,
            diagnostics: Diagnostics {
                levels_used: Some(r.levels_used),
                ..Diagnostics::default()
            },
        }
    }
}

impl From<LimitResult> for Side {
    fn from(r: LimitResult) -> Self {
        Self {
            value: r.value,
            diagnostics: Diagnostics {
                table_depth: Some(r.table_depth),
                ..Diagnostics::default()
            },
        }
    }
}

/// Settings shared by every evaluator in a run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvalContext {
    pub series: SeriesControl,
}

pub type Evaluator = fn(&[f64], &EvalContext) -> Result<Side>;

#[derive(Debug, Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    /// The formula being checked, as it reads in the source derivation.
    pub anchor: &'static str,
    pub param_names: &'static [&'static str],
    pub grid: Vec<Vec<f64>>,
    pub tolerance: f64,
    pub mode: ToleranceMode,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub identity_id: String,
    pub params: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub effective_tol: f64,
    pub pass: bool,
    pub skipped: bool,
    pub reason: Option<String>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// A value reported alongside the suite without a pass/fail verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationalEntry {
    pub identity_id: String,
    pub convention: &'static str,
    pub value: f64,
    pub reference: f64,
    /// reference − value
    pub difference: f64,
    pub tail_estimate: f64,
    pub terms_used: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub tool_version: String,
    pub counts: Counts,
    pub records: Vec<CheckRecord>,
    pub informational: Vec<InformationalEntry>,
}

impl SuiteReport {
    pub fn new(records: Vec<CheckRecord>, informational: Vec<InformationalEntry>) -> Self {
        let mut counts = Counts {
            total: records.len(),
            ..Counts::default()
        };
        for r in &records {
            if r.skipped {
                counts.skipped += 1;
            } else if r.pass {
                counts.passed += 1;
            } else {
                counts.failed += 1;
            }
        }
        Self {
            tool_version: TOOL_VERSION.to_string(),
            counts,
            records,
            informational,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub grid: Option<Vec<Vec<f64>>>,
    pub tolerance: Option<f64>,
    pub series: SeriesControl,
}

fn grid1(values: &[f64]) -> Vec<Vec<f64>> {
    values.iter().map(|&x| vec![x]).collect()
}

fn grid2(first: &[f64], second: &[f64]) -> Vec<Vec<f64>> {
    first
        .iter()
        .flat_map(|&a| second.iter().map(move |&b| vec![a, b]))
        .collect()
}

fn integers(range: core::ops::RangeInclusive<u32>) -> Vec<Vec<f64>> {
    range.map(|n| vec![n as f64]).collect()
}

fn param(p: &[f64], i: usize) -> Result<f64> {
    p.get(i)
        .copied()
        .ok_or(Error::InvalidControl("too few parameters for identity"))
}

fn integer_param(p: &[f64], i: usize) -> Result<u32> {
    let x = param(p, i)?;
    if x >= 0.0 && x <= u32::MAX as f64 && x == libm::floor(x) {
        Ok(x as u32)
    } else {
        Err(Error::domain("identity", "non-negative integer parameter", x))
    }
}

fn beta_uv(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta(param(p, 0)?, param(p, 1)?)?))
}

fn beta_vu(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta(param(p, 1)?, param(p, 0)?)?))
}

fn beta_shifted(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta(param(p, 0)?, param(p, 1)? + 1.0)?))
}

fn beta_recurrence(p: &[f64], _: &EvalContext) -> Result<Side> {
    let (u, v) = (param(p, 0)?, param(p, 1)?);
    Ok(Side::exact(v / (u + v) * special::beta(u, v)?))
}

fn beta_u1(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta(param(p, 0)?, 1.0)?))
}

fn reciprocal(p: &[f64], _: &EvalContext) -> Result<Side> {
    let u = param(p, 0)?;
    if u.is_nan() || u <= 0.0 {
        return Err(Error::domain("reciprocal", "u > 0", u));
    }
    Ok(Side::exact(1.0 / u))
}

fn rising_product(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::rising(param(p, 0)?, integer_param(p, 1)?)?))
}

fn rising_gamma_ratio(p: &[f64], _: &EvalContext) -> Result<Side> {
    let (x, n) = (param(p, 0)?, integer_param(p, 1)? as f64);
    Ok(Side::exact(special::gamma(x + n)? / special::gamma(x)?))
}

fn beta_pole(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(limits::beta_pole_limit(param(p, 0)?)?.into())
}

/// u·∫₀¹ t^{u−1} log(1−t) dt + 1/u
fn log_kernel_route(p: &[f64], _: &EvalContext) -> Result<Side> {
    let u = param(p, 0)?;
    Ok(Side::from(quadrature::log_kernel_moment(u)?).scaled(|m| u * m + 1.0 / u))
}

fn gamma_pole(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(limits::gamma_pole_limit()?.into())
}

fn minus_euler_gamma(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(-special::euler_gamma()))
}

fn digamma_at(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::digamma(param(p, 0)?)?))
}

/// −γ − [u·∫₀¹ t^{u−1} log(1−t) dt + 1/u]
fn digamma_from_log_kernel(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(log_kernel_route(p, ctx)?.scaled(|x| -EULER_GAMMA - x))
}

/// −u·∫₀¹ t^{u−1} log(1−t) dt
fn negated_log_kernel(p: &[f64], _: &EvalContext) -> Result<Side> {
    let u = param(p, 0)?;
    Ok(Side::from(quadrature::log_kernel_moment(u)?).scaled(|m| -u * m))
}

fn gamma_digamma_reciprocal(p: &[f64], _: &EvalContext) -> Result<Side> {
    let u = param(p, 0)?;
    Ok(Side::exact(EULER_GAMMA + special::digamma(u)? + 1.0 / u))
}

fn harmonic_number(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::harmonic(integer_param(p, 0)? as u64)))
}

fn digamma_integral(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(quadrature::digamma_integral(param(p, 0)?)?.into())
}

fn gamma_plus_digamma_next(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(EULER_GAMMA + special::digamma(param(p, 0)? + 1.0)?))
}

fn beta_expansion(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::beta_series(param(p, 0)?, param(p, 1)?, &ctx.series)?.into())
}

fn eulerian_integral(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(quadrature::beta_integral(param(p, 0)?, param(p, 1)?)?.into())
}

fn beta_limit_expansion(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::beta_limit_series(param(p, 0)?, &ctx.series)?.into())
}

fn digamma_expansion(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::digamma_series(param(p, 0)?, &ctx.series)?.into())
}

fn digamma_half_closed(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(-EULER_GAMMA - 2.0 * LN_2))
}

fn log2_expansion(_: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::log2_series(&ctx.series)?.into())
}

fn ln_2(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(LN_2))
}

fn norlund(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::norlund_diff(param(p, 0)?, param(p, 1)?, &ctx.series)?.into())
}

fn digamma_difference(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(series::norlund_reference(param(p, 0)?, param(p, 1)?)?))
}

fn trigamma_expansion(p: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::trigamma_series(param(p, 0)?, &ctx.series)?.into())
}

fn trigamma_at(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::trigamma(param(p, 0)?)?))
}

fn trigamma_half_expansion(_: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::trigamma_half_series(SumConvention::Corrected, &ctx.series)?.into())
}

fn trigamma_half(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::trigamma(0.5)?))
}

fn zeta2_expansion(_: &[f64], ctx: &EvalContext) -> Result<Side> {
    Ok(series::zeta2_series(SumConvention::Corrected, &ctx.series)?.into())
}

fn zeta2(_: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::riemann_zeta(2.0)?))
}

fn duplication_product(p: &[f64], _: &EvalContext) -> Result<Side> {
    let t = param(p, 0)?;
    Ok(Side::exact(special::gamma(t)? * special::gamma(t + 0.5)?))
}

fn duplication_formula(p: &[f64], _: &EvalContext) -> Result<Side> {
    let t = param(p, 0)?;
    Ok(Side::exact(
        libm::sqrt(PI) * libm::exp2(1.0 - 2.0 * t) * special::gamma(2.0 * t)?,
    ))
}

fn gamma_half_closed(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::gamma_half(integer_param(p, 0)?)?))
}

fn gamma_at_half_shift(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::gamma(integer_param(p, 0)? as f64 + 0.5)?))
}

fn beta_half_closed(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta_half(integer_param(p, 0)?)?))
}

fn beta_n_half(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::beta(integer_param(p, 0)? as f64, 0.5)?))
}

fn hurwitz_half(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::hurwitz_zeta(param(p, 0)?, 0.5)?))
}

fn scaled_riemann_zeta(p: &[f64], _: &EvalContext) -> Result<Side> {
    let s = param(p, 0)?;
    Ok(Side::exact((libm::exp2(s) - 1.0) * special::riemann_zeta(s)?))
}

fn polygamma_one(p: &[f64], _: &EvalContext) -> Result<Side> {
    Ok(Side::exact(special::polygamma(1, param(p, 0)?)?))
}

fn digamma_central_difference(p: &[f64], _: &EvalContext) -> Result<Side> {
    let x = param(p, 0)?;
    let h = PSIM_STEP;
    Ok(Side::exact(
        (special::digamma(x + h)? - special::digamma(x - h)?) / (2.0 * h),
    ))
}

/// The 24 built-in identities in registry order.
pub fn builtin_registry() -> Vec<IdentitySpec> {
    use ToleranceMode::*;
    let beta_grid = grid2(&DEFAULT_U, &DEFAULT_V);
    vec![
        IdentitySpec {
            id: "SYM",
            description: "beta function symmetry",
            anchor: "B(u,v) = B(v,u)",
            param_names: &["u", "v"],
            grid: beta_grid.clone(),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: beta_uv,
            rhs: beta_vu,
        },
        IdentitySpec {
            id: "RECUR",
            description: "beta recurrence in the second argument",
            anchor: "B(u,v+1) = v/(u+v) B(u,v)",
            param_names: &["u", "v"],
            grid: beta_grid.clone(),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: beta_shifted,
            rhs: beta_recurrence,
        },
        IdentitySpec {
            id: "BU1",
            description: "beta function with unit second argument",
            anchor: "B(u,1) = Γ(u)Γ(1)/Γ(u+1) = 1/u",
            param_names: &["u"],
            grid: grid1(&[0.25, 0.5, 0.75, 1.0, 2.0, 3.5, 4.0, 5.0]),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: beta_u1,
            rhs: reciprocal,
        },
        IdentitySpec {
            id: "POCH",
            description: "Pochhammer symbol as a gamma ratio",
            anchor: "(x)_n = Γ(x+n)/Γ(x)",
            param_names: &["x", "n"],
            grid: grid2(&[0.3, 1.5, 4.0], &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0]),
            tolerance: 1e-11,
            mode: Relative,
            lhs: rising_product,
            rhs: rising_gamma_ratio,
        },
        IdentitySpec {
            id: "EQ1",
            description: "pole-subtracted beta limit against the log-kernel derivative",
            anchor: "lim_{v→0} [B(u,v) − 1/v] = u ∂B/∂v|_{v=1} + 1/u",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: LIMIT_TOL,
            mode: Absolute,
            lhs: beta_pole,
            rhs: log_kernel_route,
        },
        IdentitySpec {
            id: "EQ2",
            description: "pole-subtracted gamma limit",
            anchor: "lim_{v→0} [Γ(v) − 1/v] = −γ",
            param_names: &[],
            grid: vec![Vec::new()],
            tolerance: LIMIT_TOL,
            mode: Absolute,
            lhs: gamma_pole,
            rhs: minus_euler_gamma,
        },
        IdentitySpec {
            id: "EQ3",
            description: "digamma function from the beta derivative",
            anchor: "ψ(u) = −γ − [u ∂B/∂v|_{v=1} + 1/u]",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: digamma_at,
            rhs: digamma_from_log_kernel,
        },
        IdentitySpec {
            id: "EQ4",
            description: "log-kernel moment in terms of the digamma function",
            anchor: "−u ∫₀¹ t^{u−1} log(1−t) dt = γ + ψ(u) + 1/u",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: negated_log_kernel,
            rhs: gamma_digamma_reciprocal,
        },
        IdentitySpec {
            id: "EQ4H",
            description: "log-kernel moment at integer order gives harmonic numbers",
            anchor: "−n ∫₀¹ t^{n−1} log(1−t) dt = H_n",
            param_names: &["n"],
            grid: integers(1..=10),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: negated_log_kernel,
            rhs: harmonic_number,
        },
        IdentitySpec {
            id: "EQ4B",
            description: "integral representation of the digamma function",
            anchor: "ψ(u+1) + γ = ∫₀¹ (1 − t^u)/(1 − t) dt",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: digamma_integral,
            rhs: gamma_plus_digamma_next,
        },
        IdentitySpec {
            id: "EQ5",
            description: "binomial-series expansion of the beta function against the Eulerian integral",
            anchor: "B(u,v) = 1/v + Σ_{n≥1} (1−u)_n / ((n+v) n!)",
            param_names: &["u", "v"],
            grid: beta_grid,
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: beta_expansion,
            rhs: eulerian_integral,
        },
        IdentitySpec {
            id: "EQ6",
            description: "series for the pole-subtracted beta limit",
            anchor: "lim_{v→0} [B(u,v) − 1/v] = Σ_{n≥1} (1−u)_n / (n·n!)",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: beta_limit_expansion,
            rhs: beta_pole,
        },
        IdentitySpec {
            id: "EQ7",
            description: "series for the digamma function",
            anchor: "ψ(u) = −γ − Σ_{n≥1} (1−u)_n / (n·n!)",
            param_names: &["u"],
            grid: grid1(&DEFAULT_U),
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: digamma_expansion,
            rhs: digamma_at,
        },
        IdentitySpec {
            id: "EQ7H",
            description: "digamma series at one half",
            anchor: "ψ(1/2) = −γ − 2 log 2",
            param_names: &["u"],
            grid: grid1(&[0.5]),
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: digamma_expansion,
            rhs: digamma_half_closed,
        },
        IdentitySpec {
            id: "LOG2",
            description: "central binomial series for log 2",
            anchor: "log 2 = Σ_{n≥1} C(2n,n) / (n 2^{2n+1})",
            param_names: &[],
            grid: vec![Vec::new()],
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: log2_expansion,
            rhs: ln_2,
        },
        IdentitySpec {
            id: "EQ8",
            description: "Nörlund's series for a digamma difference",
            anchor: "ψ(x+a) − ψ(a) = Σ_{k≥1} (−1)^{k+1}/k · x(x−1)…(x−k+1) / (a(a+1)…(a+k−1))",
            param_names: &["x", "a"],
            grid: grid2(&[0.5, 1.0, 2.5, 3.0], &DEFAULT_V),
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: norlund,
            rhs: digamma_difference,
        },
        IdentitySpec {
            id: "EQ9",
            description: "differentiated digamma series for the trigamma function",
            anchor: "ψ′(u) = Σ_{n≥1} Γ(n+1−u)/(n² Γ(n) Γ(1−u)) · [ψ(n+1−u) − ψ(1−u)]",
            param_names: &["u"],
            grid: grid1(&[0.25, 0.5, 0.75]),
            tolerance: SERIES_TOL,
            mode: TailAware,
            lhs: trigamma_expansion,
            rhs: trigamma_at,
        },
        IdentitySpec {
            id: "EQ10",
            description: "central binomial series for the trigamma function at one half",
            anchor: "ψ′(1/2) = Σ_{n≥1} (2n)!/(n 2^{2n−1} (n!)²) · Σ_{k=0}^{n−1} 1/(2k+1)",
            param_names: &[],
            grid: vec![Vec::new()],
            tolerance: 5e-4,
            mode: TailAware,
            lhs: trigamma_half_expansion,
            rhs: trigamma_half,
        },
        IdentitySpec {
            id: "EQ11",
            description: "central binomial series for ζ(2)",
            anchor: "ζ(2) = (1/3) Σ_{n≥1} (2n)!/(n 2^{2n−1} (n!)²) · Σ_{k=0}^{n−1} 1/(2k+1)",
            param_names: &[],
            grid: vec![Vec::new()],
            tolerance: 2e-4,
            mode: TailAware,
            lhs: zeta2_expansion,
            rhs: zeta2,
        },
        IdentitySpec {
            id: "DUP",
            description: "Legendre duplication formula",
            anchor: "Γ(t)Γ(t+1/2) = √π 2^{1−2t} Γ(2t)",
            param_names: &["t"],
            grid: grid1(&[0.25, 0.5, 1.0, 2.0, 5.0, 10.0]),
            tolerance: 1e-11,
            mode: Relative,
            lhs: duplication_product,
            rhs: duplication_formula,
        },
        IdentitySpec {
            id: "GHALF",
            description: "gamma function at half-integers",
            anchor: "Γ(n+1/2) = √π (2n)! / (2^{2n} n!)",
            param_names: &["n"],
            grid: integers(1..=10),
            tolerance: 1e-12,
            mode: Relative,
            lhs: gamma_half_closed,
            rhs: gamma_at_half_shift,
        },
        IdentitySpec {
            id: "BHALF",
            description: "beta function with second argument one half",
            anchor: "B(n,1/2) = 2^{2n} / (n C(2n,n))",
            param_names: &["n"],
            grid: integers(1..=10),
            tolerance: CLOSED_FORM_TOL,
            mode: Absolute,
            lhs: beta_half_closed,
            rhs: beta_n_half,
        },
        IdentitySpec {
            id: "ZHALF",
            description: "Hurwitz zeta at one half",
            anchor: "ζ(s,1/2) = (2^s − 1) ζ(s)",
            param_names: &["s"],
            grid: grid1(&ZETA_S),
            tolerance: 1e-11,
            mode: Relative,
            lhs: hurwitz_half,
            rhs: scaled_riemann_zeta,
        },
        IdentitySpec {
            id: "PSIM",
            description: "polygamma through Hurwitz zeta against a digamma central difference (m = 1)",
            anchor: "ψ^(m)(s) = (−1)^{m+1} m! ζ(m+1, s)",
            param_names: &["x"],
            grid: grid1(&[0.5, 1.0, 2.0, 5.0]),
            tolerance: 1e-6,
            mode: Absolute,
            lhs: polygamma_one,
            rhs: digamma_central_difference,
        },
    ]
}

fn evaluate(spec: &IdentitySpec, params: &[f64], tolerance: f64, ctx: &EvalContext) -> CheckRecord {
    let outcome = (spec.lhs)(params, ctx).and_then(|l| Ok((l, (spec.rhs)(params, ctx)?)));
    match outcome {
        Ok((lhs, rhs)) => {
            let diagnostics = lhs.diagnostics.merge(rhs.diagnostics);
            let abs_err = (lhs.value - rhs.value).abs();
            let rel_err = if rhs.value != 0.0 {
                abs_err / rhs.value.abs()
            } else {
                abs_err
            };
            let effective_tol = match spec.mode {
                ToleranceMode::Absolute => tolerance,
                ToleranceMode::Relative => tolerance * rhs.value.abs(),
                ToleranceMode::TailAware => tolerance + diagnostics.tail_estimate.unwrap_or(0.0),
            };
            CheckRecord {
                identity_id: spec.id.to_string(),
                params: params.to_vec(),
                lhs: lhs.value,
                rhs: rhs.value,
                abs_err,
                rel_err,
                effective_tol,
                // An infinite tail (no usable tail model) never passes.
                pass: effective_tol.is_finite() && abs_err <= effective_tol,
                skipped: false,
                reason: None,
                diagnostics,
            }
        }
        Err(e) => CheckRecord {
            identity_id: spec.id.to_string(),
            params: params.to_vec(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            effective_tol: f64::NAN,
            pass: false,
            skipped: true,
            reason: Some(e.to_string()),
            diagnostics: Diagnostics::default(),
        },
    }
}

/// One record per grid point of `spec`, in grid order. Evaluation errors
/// produce skipped records.
pub fn run_identity(spec: &IdentitySpec, overrides: &Overrides) -> Vec<CheckRecord> {
    let ctx = EvalContext {
        series: overrides.series,
    };
    let tolerance = overrides.tolerance.unwrap_or(spec.tolerance);
    let grid = overrides.grid.as_ref().unwrap_or(&spec.grid);
    grid.iter().map(|p| evaluate(spec, p, tolerance, &ctx)).collect()
}

/// The literal-convention (inner sum from k = 1) values of the ψ′(½) and
/// ζ(2) series, compared with their reference values.
pub fn literal_convention_entries(ctrl: &SeriesControl) -> Result<Vec<InformationalEntry>> {
    let psi = series::trigamma_half_series(SumConvention::Literal, ctrl)?;
    let zeta = series::zeta2_series(SumConvention::Literal, ctrl)?;
    let entry = |id: &str, r: SeriesResult, reference: f64| InformationalEntry {
        identity_id: id.to_string(),
        convention: SumConvention::Literal.as_str(),
        value: r.value,
        reference,
        difference: reference - r.value,
        tail_estimate: r.tail_estimate,
        terms_used: r.terms_used,
    };
    Ok(vec![
        entry("EQ10", psi, special::trigamma(0.5)?),
        entry("EQ11", zeta, special::riemann_zeta(2.0)?),
    ])
}

/// Runs the identities named in `filter` (all of them when `None`).
pub fn run_suite(filter: Option<&[String]>, overrides: &Overrides) -> Result<SuiteReport> {
    overrides.series.validate()?;
    if let Some(t) = overrides.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidControl("tolerance must be positive"));
        }
    }
    let registry = builtin_registry();
    let selected: Vec<&IdentitySpec> = match filter {
        None => registry.iter().collect(),
        Some(ids) => {
            for id in ids {
                if !registry.iter().any(|s| s.id == id) {
                    return Err(Error::UnknownIdentity(id.clone()));
                }
            }
            registry
                .iter()
                .filter(|s| ids.iter().any(|id| id == s.id))
                .collect()
        }
    };

    let mut records = Vec::new();
    for spec in &selected {
        records.extend(run_identity(spec, overrides));
    }
    // Grid order is preserved by the stable sort.
    records.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));

    let informational = if selected.iter().any(|s| s.id == "EQ10" || s.id == "EQ11") {
        let mut entries = literal_convention_entries(&overrides.series)?;
        entries.retain(|e| selected.iter().any(|s| s.id == e.identity_id));
        entries
    } else {
        Vec::new()
    };
    Ok(SuiteReport::new(records, informational))
}
