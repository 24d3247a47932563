//! Double-exponential (tanh-sinh) quadrature on the open interval (0, 1).
//!
//! The substitution t = 1/(1 + exp(−π sinh x)) maps the real line onto
//! (0, 1) and crushes algebraic and logarithmic endpoint singularities, so a
//! plain trapezoidal sum in x converges double-exponentially. Each node
//! carries both t and 1 − t computed without cancellation, and integrands
//! receive both; `log(1 − t)` near t = 1 would otherwise lose every digit.
//!
//! Level ℓ uses step h = 2^−ℓ. Only the nodes new to a level are stored, so
//! refinement reuses all previous function evaluations.

use alloc::vec::Vec;
use core::f64::consts::PI;

use once_cell::race::OnceBox;

use crate::special;
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Deepest refinement level.
pub const MAX_LEVEL: u32 = 12;

/// Tolerance used for every built-in kernel.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Smallest exponent accepted by the beta-type kernels; below this the
/// algebraic singularity t^{u−1} is not resolved by the node set.
pub const MIN_EXPONENT: f64 = 0.05;

/// Nodes whose weight falls below this are dropped.
const MIN_WEIGHT: f64 = 1e-300;

const DEFAULT_MIN_LEVEL: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// |I_ℓ − I_{ℓ−1}| for the last level computed.
    pub error_estimate: f64,
    pub levels_used: u32,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    complement: f64,
    weight: f64,
}

type NodeTable = Vec<Vec<Node>>;

static NODES: OnceBox<NodeTable> = OnceBox::new();

fn node_table() -> &'static NodeTable {
    NODES.get_or_init(|| alloc::boxed::Box::new(build_table()))
}

/// The pair of nodes at ±x (x > 0), or `None` once the weight underflows.
fn node_pair(x: f64) -> Option<[Node; 2]> {
    let e = libm::exp(-PI * libm::sinh(x));
    let denom = 1.0 + e;
    let weight = PI * libm::cosh(x) * e / (denom * denom);
    if weight.is_nan() || weight < MIN_WEIGHT {
        return None;
    }
    // 1/(1+e) rounds to exactly 1 once e < 2^-53; keep the abscissa inside
    // the interval. Integrands read the complement for behaviour near 1.
    let near_one = (1.0 / denom).min(1.0 - f64::EPSILON / 2.0);
    let near_zero = e / denom;
    Some([
        Node {
            t: near_one,
            complement: near_zero,
            weight,
        },
        Node {
            t: near_zero,
            complement: near_one,
            weight,
        },
    ])
}

fn build_table() -> NodeTable {
    let mut table = Vec::with_capacity(MAX_LEVEL as usize + 1);

    let mut level0 = alloc::vec![Node {
        t: 0.5,
        complement: 0.5,
        weight: PI / 4.0,
    }];
    let mut k = 1u32;
    while let Some(pair) = node_pair(k as f64) {
        level0.extend_from_slice(&pair);
        k += 1;
    }
    table.push(level0);

    for level in 1..=MAX_LEVEL {
        let h = libm::ldexp(1.0, -(level as i32));
        let mut nodes = Vec::new();
        let mut j = 0u32;
        while let Some(pair) = node_pair((2 * j + 1) as f64 * h) {
            nodes.extend_from_slice(&pair);
            j += 1;
        }
        table.push(nodes);
    }
    table
}

/// Level-refining tanh-sinh integrator on (0, 1).
///
/// Convergence is declared once |I_ℓ − I_{ℓ−1}| ≤ tol · max(1, |I_ℓ|) and at
/// least `min_level` levels have been summed.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    tol: f64,
    min_level: u32,
    max_level: u32,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            min_level: DEFAULT_MIN_LEVEL,
            max_level: MAX_LEVEL,
        }
    }
}

impl TanhSinh {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidControl("quadrature tolerance must be positive"));
        }
        Ok(Self {
            tol,
            ..Self::default()
        })
    }

    /// Forces at least `level` refinements before convergence can be
    /// declared (clamped to `MAX_LEVEL`).
    pub fn min_level(mut self, level: u32) -> Self {
        self.min_level = level.min(MAX_LEVEL);
        self.max_level = self.max_level.max(self.min_level);
        self
    }

    pub fn max_level(mut self, level: u32) -> Self {
        self.max_level = level.min(MAX_LEVEL);
        self.min_level = self.min_level.min(self.max_level);
        self
    }

    /// Integrates `f(t, 1 − t)` over (0, 1).
    pub fn integrate<F>(&self, mut f: F) -> Result<QuadratureResult>
    where
        F: FnMut(f64, f64) -> f64,
    {
        let table = node_table();
        let mut sum = CompensatedSum::default();
        let mut evaluations = 0u64;
        let mut previous = f64::NAN;
        let mut estimate = f64::NAN;
        let mut error_estimate = f64::INFINITY;

        for level in 0..=self.max_level {
            for node in &table[level as usize] {
                let y = f(node.t, node.complement);
                evaluations += 1;
                if !y.is_finite() {
                    return Err(Error::NonFinite {
                        function: "integrate01",
                        at: node.t,
                    });
                }
                sum.add(node.weight * y);
            }
            estimate = libm::ldexp(sum.value(), -(level as i32));
            if level > 0 {
                error_estimate = (estimate - previous).abs();
                if level >= self.min_level && error_estimate <= self.tol * estimate.abs().max(1.0) {
                    return Ok(QuadratureResult {
                        value: estimate,
                        error_estimate,
                        levels_used: level,
                        evaluations,
                    });
                }
            }
            previous = estimate;
        }
        Err(Error::NotConverged {
            function: "integrate01",
            value: estimate,
            error_estimate,
        })
    }
}

/// ∫₀¹ f(t, 1 − t) dt with the default level policy.
pub fn integrate01<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> f64,
{
    TanhSinh::new(tol)?.integrate(f)
}

fn check_exponent(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= MIN_EXPONENT {
        Ok(())
    } else {
        Err(Error::domain(function, "parameter >= 0.05", x))
    }
}

/// log(1 − t), accurate at both ends.
fn log_complement(t: f64, complement: f64) -> f64 {
    if t < 0.5 {
        libm::log1p(-t)
    } else {
        libm::log(complement)
    }
}

fn power(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else {
        libm::pow(base, exponent)
    }
}

/// Eulerian integral B(u, v) = ∫₀¹ t^{u−1} (1−t)^{v−1} dt.
pub fn beta_integral(u: f64, v: f64) -> Result<QuadratureResult> {
    beta_integral_with(u, v, DEFAULT_TOL)
}

pub fn beta_integral_with(u: f64, v: f64, tol: f64) -> Result<QuadratureResult> {
    check_exponent("beta_integral", u)?;
    check_exponent("beta_integral", v)?;
    integrate01(|t, c| power(t, u - 1.0) * power(c, v - 1.0), tol)
}

/// ∫₀¹ t^{u−1} log(1 − t) dt, i.e. ∂B/∂v at v = 1.
pub fn log_kernel_moment(u: f64) -> Result<QuadratureResult> {
    log_kernel_moment_with(u, DEFAULT_TOL)
}

pub fn log_kernel_moment_with(u: f64, tol: f64) -> Result<QuadratureResult> {
    check_exponent("log_kernel_moment", u)?;
    integrate01(|t, c| power(t, u - 1.0) * log_complement(t, c), tol)
}

/// ∫₀¹ (1 − t^u)/(1 − t) dt = ψ(u + 1) + γ.
pub fn digamma_integral(u: f64) -> Result<QuadratureResult> {
    digamma_integral_with(u, DEFAULT_TOL)
}

pub fn digamma_integral_with(u: f64, tol: f64) -> Result<QuadratureResult> {
    check_exponent("digamma_integral", u)?;
    integrate01(
        |t, c| {
            let log_t = if c < 0.5 { libm::log1p(-c) } else { libm::log(t) };
            -libm::expm1(u * log_t) / c
        },
        tol,
    )
}

/// The reference value the digamma integral should reproduce.
pub fn digamma_integral_reference(u: f64) -> Result<f64> {
    Ok(special::euler_gamma() + special::digamma(u + 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{beta, digamma, euler_gamma, harmonic};

    #[test]
    fn nodes_stay_inside_unit_interval() {
        for level in node_table() {
            for node in level {
                assert!(node.t > 0.0 && node.t < 1.0);
                assert!(node.complement > 0.0 && node.complement < 1.0);
                assert!(node.weight >= MIN_WEIGHT);
                assert!((node.t + node.complement - 1.0).abs() <= f64::EPSILON);
            }
        }
    }

    #[test]
    fn elementary_integrals() {
        let r = integrate01(|_, _| 1.0, 1e-14).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-14, "{r:?}");
        let r = integrate01(log_complement, 1e-12).unwrap();
        assert!((r.value + 1.0).abs() <= 1e-12, "{r:?}");
        let r = integrate01(|t, _| 1.0 / t.sqrt(), 1e-12).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-10, "{r:?}");
        assert!(r.levels_used <= MAX_LEVEL);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let err = integrate01(|t, _| if t > 0.7 { f64::NAN } else { t }, 1e-12).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn non_convergence_is_reported() {
        // t^{-0.999}: the mass hidden below the smallest node is ~ 0.5 and
        // the levels never settle.
        let err = integrate01(|t, _| t.powf(-0.999), 1e-14).unwrap_err();
        assert!(matches!(err, Error::NotConverged { .. }), "{err:?}");
        assert!(integrate01(|_, _| 1.0, 0.0).is_err());
    }

    #[test]
    fn beta_integral_examples() {
        let r = beta_integral(2.0, 3.0).unwrap();
        assert!((r.value - 1.0 / 12.0).abs() < 1e-13);
        let r = beta_integral(0.5, 0.5).unwrap();
        assert!((r.value - PI).abs() < 1e-11);
        let r = beta_integral(4.0, 1.0).unwrap();
        assert!((r.value - 0.25).abs() < 1e-13);
        assert!(beta_integral(0.04, 1.0).is_err());
        assert!(beta_integral(1.0, 0.0).is_err());
    }

    #[test]
    fn beta_integral_matches_reference_on_grid() {
        let grid = [0.25, 0.5, 1.0, 2.5, 5.0];
        for &u in &grid {
            for &v in &grid {
                let r = beta_integral(u, v).unwrap();
                let b = beta(u, v).unwrap();
                assert!((r.value - b).abs() <= r.error_estimate + 1e-12, "u={u} v={v}: {r:?} vs {b}");
                assert!((r.value - b).abs() <= 1e-10_f64.max(1e-10 * b));
            }
        }
        // Down at the documented cutoff.
        let r = beta_integral(0.05, 0.05).unwrap();
        let b = beta(0.05, 0.05).unwrap();
        assert!((r.value - b).abs() <= 1e-10 * b, "{r:?} vs {b}");
    }

    #[test]
    fn log_kernel_examples() {
        assert!((log_kernel_moment(1.0).unwrap().value + 1.0).abs() < 1e-10);
        assert!((log_kernel_moment(2.0).unwrap().value + 0.75).abs() < 1e-10);
        // −(γ + ψ(3/2))/u at u = 1/2, i.e. −(2 − 2 log 2)/0.5
        let expected = -(2.0 - 2.0 * core::f64::consts::LN_2) / 0.5;
        assert!((log_kernel_moment(0.5).unwrap().value - expected).abs() < 1e-10);
        assert!((expected + 1.227_411_277_760_218_8).abs() < 1e-15);
    }

    #[test]
    fn log_kernel_reproduces_digamma() {
        for &u in &[0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 7.5] {
            let lhs = -u * log_kernel_moment(u).unwrap().value;
            let rhs = euler_gamma() + digamma(u + 1.0).unwrap();
            assert!((lhs - rhs).abs() <= 1e-9, "u={u}");
        }
        for n in 1..=10u64 {
            let lhs = -(n as f64) * log_kernel_moment(n as f64).unwrap().value;
            assert!((lhs - harmonic(n)).abs() <= 1e-9, "n={n}");
        }
    }

    #[test]
    fn digamma_integral_examples() {
        assert!((digamma_integral(1.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!((digamma_integral(2.0).unwrap().value - 1.5).abs() < 1e-12);
        let expected = 2.0 - 2.0 * core::f64::consts::LN_2;
        assert!((digamma_integral(0.5).unwrap().value - expected).abs() < 1e-10);
        for &u in &[0.05, 0.3, 4.0, 9.5] {
            let r = digamma_integral(u).unwrap();
            assert!((r.value - digamma_integral_reference(u).unwrap()).abs() <= 1e-10, "u={u}");
        }
    }

    #[test]
    fn extra_level_stays_within_previous_estimate() {
        type Kernel = fn(f64, f64) -> f64;
        let kernels: [(&str, Kernel); 3] = [
            ("beta(0.5,2.5)", |t, c| t.powf(-0.5) * c.powf(1.5)),
            ("log kernel u=0.25", |t, c| t.powf(-0.75) * log_complement(t, c)),
            ("sqrt", |t, _| t.sqrt()),
        ];
        for (name, f) in kernels {
            let base = TanhSinh::default().integrate(f).unwrap();
            if base.levels_used == MAX_LEVEL {
                continue;
            }
            let deeper = TanhSinh::default().min_level(base.levels_used + 1).integrate(f).unwrap();
            assert_eq!(deeper.levels_used, base.levels_used + 1);
            assert!(
                (deeper.value - base.value).abs() <= base.error_estimate,
                "{name}: {base:?} -> {deeper:?}"
            );
        }
    }
}
