//! Summation engine and term generators for the beta/digamma family of
//! slowly convergent series.
//!
//! Every series here either terminates exactly (a Pochhammer or falling
//! factorial factor hits zero) or decays algebraically like n^{-p} with
//! 1 < p ≤ 2, possibly with a log n factor. Raw truncation at double
//! precision is hopeless for such rates, so the engine fits a power law to
//! two recorded term magnitudes,
//!
//! ```text
//! p̂ = log(a_m / a_N) / log(N / m),   m = ⌊N/2⌋
//! tail ≈ a_N · N / (p̂ − 1)           (only when p̂ > 1.05)
//! ```
//!
//! and adds the estimate to the partial sum. Partial sums are accumulated
//! in double-double, so alternating series whose terms dwarf their sum (the
//! beta expansion at integer u) keep full relative accuracy.
//!
//! Term generators are iterators that return `None` exactly when the series
//! has terminated, which is how the engine tells an exact zero factor from a
//! term that merely happens to vanish.

use crate::special::{self, EULER_GAMMA};
use crate::sum::{CompensatedSum, DoubleDouble};
use crate::{Error, Result};

pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Fitted exponents at or below this are treated as "no usable tail model".
pub const MIN_TAIL_EXPONENT: f64 = 1.05;

/// Tolerance checks start at this term index (and repeat at powers of two).
const FIRST_CHECKPOINT: u64 = 16;

/// Truncation policy for a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: u64,
    /// Stop once the estimated tail magnitude drops to this.
    pub tol: f64,
    /// Add the estimated tail to the reported value.
    pub tail_correction: bool,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            tol: DEFAULT_TOL,
            tail_correction: true,
        }
    }
}

impl SeriesControl {
    pub fn with_max_terms(self, max_terms: u64) -> Self {
        Self { max_terms, ..self }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    pub fn with_tail_correction(self, tail_correction: bool) -> Self {
        Self {
            tail_correction,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidControl("max_terms must be at least 1"));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidControl("series tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// A factor of the general term became exactly zero.
    ExactTermination,
    /// The estimated tail fell to the requested tolerance.
    ToleranceMet,
    /// `max_terms` terms were summed with the tail still above tolerance.
    MaxTerms,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::ExactTermination => "exact_termination",
            Termination::ToleranceMet => "tolerance_met",
            Termination::MaxTerms => "max_terms",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    /// Partial sum plus the signed tail estimate when correction is enabled.
    pub value: f64,
    pub raw_partial_sum: f64,
    /// Magnitude of the estimated remainder; +∞ when no power law could be
    /// fitted, 0 after exact termination.
    pub tail_estimate: f64,
    /// Number of (non-terminating) terms that were added.
    pub terms_used: u64,
    pub termination: Termination,
    /// Recurrence steps applied to the argument before summation.
    pub reductions: u32,
}

impl SeriesResult {
    fn map(self, f: impl Fn(f64) -> f64, tail: impl Fn(f64) -> f64) -> Self {
        Self {
            value: f(self.value),
            raw_partial_sum: f(self.raw_partial_sum),
            tail_estimate: tail(self.tail_estimate),
            ..self
        }
    }

    /// True when the series hit its cap without a usable error bound: either
    /// no tail model could be fitted, or the tail was left uncorrected and
    /// is still above `ctrl.tol`.
    pub fn is_unconverged(&self, ctrl: &SeriesControl) -> bool {
        self.termination == Termination::MaxTerms
            && (!self.tail_estimate.is_finite()
                || (!ctrl.tail_correction && self.tail_estimate > ctrl.tol))
    }
}

/// Lower index of the inner odd-reciprocal sum in the ψ′(½) and ζ(2) series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumConvention {
    /// Inner sum Σ_{k=1}^{n−1} 1/(2k+1), as the series is commonly printed.
    Literal,
    /// Inner sum Σ_{k=0}^{n−1} 1/(2k+1), consistent with ψ(3/2) − ψ(½) = 2.
    Corrected,
}

impl SumConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            SumConvention::Literal => "literal",
            SumConvention::Corrected => "corrected",
        }
    }
}

/// Snapshot handed to observers after each term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Progress {
    pub n: u64,
    pub term: f64,
    pub partial_sum: f64,
}

/// Remainder estimate Σ_{k>n} a_k from a power-law fit through a_m and a_n.
///
/// Returns `None` when the two terms differ in sign or the fitted exponent
/// is not above [`MIN_TAIL_EXPONENT`].
pub fn power_law_tail(a_m: f64, m: u64, a_n: f64, n: u64) -> Option<f64> {
    if a_n == 0.0 {
        return Some(0.0);
    }
    if m == 0 || m >= n {
        return None;
    }
    let ratio = a_m / a_n;
    if !(ratio > 0.0 && ratio.is_finite()) {
        return None;
    }
    let p = libm::log(ratio) / libm::log(n as f64 / m as f64);
    if p > MIN_TAIL_EXPONENT {
        Some(a_n.abs() * n as f64 / (p - 1.0))
    } else {
        None
    }
}

/// A term generator that can hand out each term as an unevaluated
/// double-double, so cancelling series keep their last few bits.
trait SplitTerms {
    fn next_split(&mut self) -> Option<DoubleDouble>;
}

struct Plain<I>(I);

impl<I: Iterator<Item = f64>> SplitTerms for Plain<I> {
    fn next_split(&mut self) -> Option<DoubleDouble> {
        self.0.next().map(|hi| DoubleDouble { hi, lo: 0.0 })
    }
}

/// Sums `head + Σ terms` under `ctrl`, calling `observe` after every term.
pub fn sum_series<I, O>(head: f64, terms: I, ctrl: &SeriesControl, observe: O) -> Result<SeriesResult>
where
    I: IntoIterator<Item = f64>,
    O: FnMut(&Progress),
{
    sum_split(DoubleDouble { hi: head, lo: 0.0 }, Plain(terms.into_iter()), ctrl, observe)
}

fn sum_split<S, O>(head: DoubleDouble, mut terms: S, ctrl: &SeriesControl, mut observe: O) -> Result<SeriesResult>
where
    S: SplitTerms,
    O: FnMut(&Progress),
{
    ctrl.validate()?;
    let mut acc = head;
    let half = ctrl.max_terms / 2;
    let mut at_half = f64::NAN;
    let mut at_checkpoint = f64::NAN;
    let mut last = f64::NAN;
    let mut n = 0u64;

    let finish = |acc: &DoubleDouble, n: u64, last: f64, tail: Option<f64>, termination| {
        let raw = acc.value();
        let tail_estimate = tail.unwrap_or(f64::INFINITY);
        let value = if ctrl.tail_correction && tail_estimate.is_finite() {
            raw + libm::copysign(tail_estimate, last)
        } else {
            raw
        };
        SeriesResult {
            value,
            raw_partial_sum: raw,
            tail_estimate,
            terms_used: n,
            termination,
            reductions: 0,
        }
    };

    while n < ctrl.max_terms {
        let Some(split) = terms.next_split() else {
            return Ok(SeriesResult {
                value: acc.value(),
                raw_partial_sum: acc.value(),
                tail_estimate: 0.0,
                terms_used: n,
                termination: Termination::ExactTermination,
                reductions: 0,
            });
        };
        n += 1;
        let term = split.value();
        if !term.is_finite() {
            return Err(Error::NonFinite {
                function: "sum_series",
                at: n as f64,
            });
        }
        acc = acc.add(split);
        last = term;
        observe(&Progress {
            n,
            term,
            partial_sum: acc.value(),
        });
        if n == half {
            at_half = term;
        }
        if n.is_power_of_two() {
            if n >= FIRST_CHECKPOINT {
                if let Some(tail) = power_law_tail(at_checkpoint, n / 2, term, n) {
                    if tail <= ctrl.tol {
                        return Ok(finish(&acc, n, last, Some(tail), Termination::ToleranceMet));
                    }
                }
            }
            at_checkpoint = term;
        }
    }

    let tail = power_law_tail(at_half, half, last, n);
    let termination = match tail {
        Some(t) if t <= ctrl.tol => Termination::ToleranceMet,
        _ => Termination::MaxTerms,
    };
    Ok(finish(&acc, n, last, tail, termination))
}

/// (1 − u)ₙ / n!, advanced one index at a time.
#[derive(Debug, Clone)]
struct PochhammerRatio {
    u: f64,
    n: u64,
    value: DoubleDouble,
    done: bool,
}

impl PochhammerRatio {
    fn new(u: f64) -> Self {
        Self {
            u,
            n: 0,
            value: DoubleDouble::ONE,
            done: false,
        }
    }

    /// Moves to the next index; `None` once the factor (n − u) is zero.
    fn advance(&mut self) -> Option<(u64, DoubleDouble)> {
        if self.done {
            return None;
        }
        self.n += 1;
        let factor = DoubleDouble::difference(self.n as f64, self.u);
        if factor.is_zero() {
            self.done = true;
            return None;
        }
        self.value = self.value.mul(factor).div_f64(self.n as f64);
        Some((self.n, self.value))
    }
}

/// Terms (1−u)ₙ / ((n+v) n!), n ≥ 1, of the beta-function expansion.
#[derive(Debug, Clone)]
pub struct BetaTerms {
    ratio: PochhammerRatio,
    v: f64,
}

impl BetaTerms {
    pub fn new(u: f64, v: f64) -> Self {
        Self {
            ratio: PochhammerRatio::new(u),
            v,
        }
    }
}

impl SplitTerms for BetaTerms {
    fn next_split(&mut self) -> Option<DoubleDouble> {
        let (n, r) = self.ratio.advance()?;
        Some(r.div(DoubleDouble::difference(n as f64, -self.v)))
    }
}

impl Iterator for BetaTerms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        self.next_split().map(|t| t.value())
    }
}

/// Terms (1−u)ₙ / (n · n!), n ≥ 1, of lim_{v→0} [B(u,v) − 1/v].
#[derive(Debug, Clone)]
pub struct BetaLimitTerms {
    ratio: PochhammerRatio,
}

impl BetaLimitTerms {
    pub fn new(u: f64) -> Self {
        Self {
            ratio: PochhammerRatio::new(u),
        }
    }
}

impl SplitTerms for BetaLimitTerms {
    fn next_split(&mut self) -> Option<DoubleDouble> {
        let (n, r) = self.ratio.advance()?;
        Some(r.div_f64(n as f64))
    }
}

impl Iterator for BetaLimitTerms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        self.next_split().map(|t| t.value())
    }
}

/// Terms C(2n,n) / (n 2^{2n+1}) of the central-binomial series for log 2.
#[derive(Debug, Clone, Default)]
pub struct Log2Terms {
    n: u64,
    /// C(2n, n) / 4ⁿ
    central: f64,
}

impl Log2Terms {
    pub fn new() -> Self {
        Self { n: 0, central: 1.0 }
    }
}

impl Iterator for Log2Terms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        self.n += 1;
        let n = self.n as f64;
        self.central *= (2.0 * n - 1.0) / (2.0 * n);
        Some(self.central / (2.0 * n))
    }
}

/// Terms (−1)^{k+1}/k · x(x−1)…(x−k+1) / (a(a+1)…(a+k−1)) of the Nörlund
/// series for ψ(x+a) − ψ(a).
#[derive(Debug, Clone)]
pub struct NorlundTerms {
    x: f64,
    a: f64,
    k: u64,
    ratio: f64,
    done: bool,
}

impl NorlundTerms {
    pub fn new(x: f64, a: f64) -> Self {
        Self {
            x,
            a,
            k: 0,
            ratio: 1.0,
            done: false,
        }
    }
}

impl Iterator for NorlundTerms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        if self.done {
            return None;
        }
        let j = self.k as f64;
        self.k += 1;
        let falling_factor = self.x - j;
        if falling_factor == 0.0 {
            self.done = true;
            return None;
        }
        self.ratio *= falling_factor / (self.a + j);
        let sign = if self.k % 2 == 1 { 1.0 } else { -1.0 };
        Some(sign * self.ratio / self.k as f64)
    }
}

/// Terms (1−u)ₙ/(n·n!) · [ψ(n+1−u) − ψ(1−u)] of the trigamma series, with
/// the bracket accumulated as Σ_{j=0}^{n−1} 1/(1−u+j).
#[derive(Debug, Clone)]
pub struct TrigammaTerms {
    ratio: PochhammerRatio,
    digamma_gap: CompensatedSum,
}

impl TrigammaTerms {
    pub fn new(u: f64) -> Self {
        Self {
            ratio: PochhammerRatio::new(u),
            digamma_gap: CompensatedSum::default(),
        }
    }
}

impl Iterator for TrigammaTerms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        let (n, r) = self.ratio.advance()?;
        self.digamma_gap.add(1.0 / (n as f64 - self.ratio.u));
        Some(r.value() * self.digamma_gap.value() / n as f64)
    }
}

/// Terms C(2n,n)/(n 2^{2n−1}) · Σ_k 1/(2k+1) of the ψ′(½) series.
#[derive(Debug, Clone)]
pub struct TrigammaHalfTerms {
    convention: SumConvention,
    n: u64,
    central: f64,
    odd: CompensatedSum,
}

impl TrigammaHalfTerms {
    pub fn new(convention: SumConvention) -> Self {
        Self {
            convention,
            n: 0,
            central: 1.0,
            odd: CompensatedSum::default(),
        }
    }
}

impl Iterator for TrigammaHalfTerms {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        self.n += 1;
        let n = self.n as f64;
        self.central *= (2.0 * n - 1.0) / (2.0 * n);
        // Σ_{k=0}^{n-1} 1/(2k+1)
        self.odd.add(1.0 / (2.0 * n - 1.0));
        let inner = match self.convention {
            SumConvention::Corrected => self.odd.value(),
            SumConvention::Literal => self.odd.value() - 1.0,
        };
        Some(2.0 * self.central / n * inner)
    }
}

fn require(function: &'static str, requirement: &'static str, value: f64, ok: bool) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(function, requirement, value))
    }
}

/// B(u, v) = 1/v + Σ_{n≥1} (1−u)ₙ / ((n+v) n!).
pub fn beta_series(u: f64, v: f64, ctrl: &SeriesControl) -> Result<SeriesResult> {
    beta_series_with(u, v, ctrl, |_| {})
}

pub fn beta_series_with<O: FnMut(&Progress)>(
    u: f64,
    v: f64,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    require("beta_series", "u > 0", u, u > 0.0)?;
    require("beta_series", "v > 0", v, v > 0.0)?;
    sum_split(DoubleDouble::ONE.div_f64(v), BetaTerms::new(u, v), ctrl, observe)
}

/// lim_{v→0} [B(u,v) − 1/v] = Σ_{n≥1} (1−u)ₙ / (n · n!).
pub fn beta_limit_series(u: f64, ctrl: &SeriesControl) -> Result<SeriesResult> {
    beta_limit_series_with(u, ctrl, |_| {})
}

pub fn beta_limit_series_with<O: FnMut(&Progress)>(
    u: f64,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    require("beta_limit_series", "u > 0", u, u > 0.0)?;
    sum_split(DoubleDouble::ZERO, BetaLimitTerms::new(u), ctrl, observe)
}

/// ψ(u) = −γ − Σ_{n≥1} (1−u)ₙ / (n · n!).
///
/// The series needs 1 − u ≥ 0, so arguments above 1 are first brought into
/// (0, 1] with ψ(u) = ψ(u−1) + 1/(u−1); the number of steps is reported in
/// [`SeriesResult::reductions`]. Observers see the underlying series.
pub fn digamma_series(u: f64, ctrl: &SeriesControl) -> Result<SeriesResult> {
    digamma_series_with(u, ctrl, |_| {})
}

pub fn digamma_series_with<O: FnMut(&Progress)>(
    u: f64,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    require("digamma_series", "u > 0", u, u > 0.0)?;
    ctrl.validate()?;
    let mut reduced = u;
    let mut shift = CompensatedSum::default();
    let mut reductions = 0u32;
    while reduced > 1.0 {
        reduced -= 1.0;
        shift.add(1.0 / reduced);
        reductions += 1;
    }
    let offset = shift.value() - EULER_GAMMA;
    let inner = sum_split(DoubleDouble::ZERO, BetaLimitTerms::new(reduced), ctrl, observe)?;
    Ok(SeriesResult {
        reductions,
        ..inner.map(|s| offset - s, |t| t)
    })
}

/// log 2 = Σ_{n≥1} C(2n,n) / (n 2^{2n+1}).
pub fn log2_series(ctrl: &SeriesControl) -> Result<SeriesResult> {
    log2_series_with(ctrl, |_| {})
}

pub fn log2_series_with<O: FnMut(&Progress)>(ctrl: &SeriesControl, observe: O) -> Result<SeriesResult> {
    sum_series(0.0, Log2Terms::new(), ctrl, observe)
}

/// ψ(x+a) − ψ(a) by Nörlund's series; requires a > 0 and x + a > 0.
pub fn norlund_diff(x: f64, a: f64, ctrl: &SeriesControl) -> Result<SeriesResult> {
    norlund_diff_with(x, a, ctrl, |_| {})
}

pub fn norlund_diff_with<O: FnMut(&Progress)>(
    x: f64,
    a: f64,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    require("norlund_diff", "a > 0", a, a > 0.0)?;
    require("norlund_diff", "x + a > 0", x, x.is_finite() && x + a > 0.0)?;
    sum_series(0.0, NorlundTerms::new(x, a), ctrl, observe)
}

/// ψ′(u) from the differentiated digamma series, 0 < u < 1.
pub fn trigamma_series(u: f64, ctrl: &SeriesControl) -> Result<SeriesResult> {
    trigamma_series_with(u, ctrl, |_| {})
}

pub fn trigamma_series_with<O: FnMut(&Progress)>(
    u: f64,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    require("trigamma_series", "0 < u < 1", u, u > 0.0 && u < 1.0)?;
    sum_series(0.0, TrigammaTerms::new(u), ctrl, observe)
}

/// ψ′(½) = Σ_{n≥1} C(2n,n)/(n 2^{2n−1}) · Σ_k 1/(2k+1).
pub fn trigamma_half_series(convention: SumConvention, ctrl: &SeriesControl) -> Result<SeriesResult> {
    trigamma_half_series_with(convention, ctrl, |_| {})
}

pub fn trigamma_half_series_with<O: FnMut(&Progress)>(
    convention: SumConvention,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    sum_series(0.0, TrigammaHalfTerms::new(convention), ctrl, observe)
}

/// ζ(2) = ψ′(½)/3 through the central-binomial series.
pub fn zeta2_series(convention: SumConvention, ctrl: &SeriesControl) -> Result<SeriesResult> {
    zeta2_series_with(convention, ctrl, |_| {})
}

pub fn zeta2_series_with<O: FnMut(&Progress)>(
    convention: SumConvention,
    ctrl: &SeriesControl,
    observe: O,
) -> Result<SeriesResult> {
    Ok(trigamma_half_series_with(convention, ctrl, observe)?.map(|x| x / 3.0, |t| t / 3.0))
}

/// Reference value ψ(x+a) − ψ(a) for the Nörlund series.
pub fn norlund_reference(x: f64, a: f64) -> Result<f64> {
    Ok(special::digamma(x + a)? - special::digamma(a)?)
}
