//! v → 0 limits by Richardson (Neville) extrapolation on the geometric
//! nodes h0·2^{-k}.

use alloc::vec::Vec;

use crate::special::{lgamma, log_gamma_ratio};
use crate::{Error, Result};

pub const MIN_DEPTH: u32 = 2;
pub const MAX_DEPTH: u32 = 12;
pub const DEFAULT_DEPTH: u32 = 10;

pub const GAMMA_H0: f64 = 0.5;
pub const BETA_H0: f64 = 0.25;

/// Smallest u accepted by the beta limits.
pub const MIN_U: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitResult {
    pub value: f64,
    /// |P_{0..d} − P_{0..d−1}| on the Neville diagonal.
    pub error_estimate: f64,
    pub table_depth: u32,
}

/// Extrapolates f(v) to v = 0 from samples at v = h0·2^{-k}, k = 0..=depth.
pub fn richardson_limit<F>(mut f: F, h0: f64, depth: u32) -> Result<LimitResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h0.is_finite() && h0 > 0.0) {
        return Err(Error::InvalidControl("h0 must be positive and finite"));
    }
    if !(MIN_DEPTH..=MAX_DEPTH).contains(&depth) {
        return Err(Error::InvalidControl("depth must lie in 2..=12"));
    }
    let nodes: Vec<f64> = (0..=depth).map(|k| libm::ldexp(h0, -(k as i32))).collect();
    let mut row = Vec::with_capacity(nodes.len());
    for &v in &nodes {
        let y = f(v)?;
        if !y.is_finite() {
            return Err(Error::NonFinite {
                function: "richardson_limit",
                at: v,
            });
        }
        row.push(y);
    }

    // After pass j, row[i] holds P_{i..i+j}(0); row[0] walks the diagonal.
    let mut previous = row[0];
    let mut value = row[0];
    for j in 1..nodes.len() {
        for i in 0..nodes.len() - j {
            let (near, far) = (nodes[i], nodes[i + j]);
            row[i] = (near * row[i + 1] - far * row[i]) / (near - far);
        }
        previous = value;
        value = row[0];
    }
    Ok(LimitResult {
        value,
        error_estimate: (value - previous).abs(),
        table_depth: depth,
    })
}

/// lim_{v→0} [Γ(v) − 1/v] = −γ.
pub fn gamma_pole_limit() -> Result<LimitResult> {
    gamma_pole_limit_with(GAMMA_H0, DEFAULT_DEPTH)
}

pub fn gamma_pole_limit_with(h0: f64, depth: u32) -> Result<LimitResult> {
    richardson_limit(|v| Ok(crate::special::gamma(v)? - 1.0 / v), h0, depth)
}

/// Γ′(1) = lim_{v→0} (Γ(1+v) − 1)/v.
pub fn gamma_derivative_at_1() -> Result<LimitResult> {
    gamma_derivative_at_1_with(GAMMA_H0, DEFAULT_DEPTH)
}

pub fn gamma_derivative_at_1_with(h0: f64, depth: u32) -> Result<LimitResult> {
    richardson_limit(|v| Ok(libm::expm1(lgamma(1.0 + v)?) / v), h0, depth)
}

fn check_u(function: &'static str, u: f64) -> Result<()> {
    if u.is_finite() && u >= MIN_U {
        Ok(())
    } else {
        Err(Error::domain(function, "u >= 0.1", u))
    }
}

/// log(v·B(u, v)) = log Γ(1+v) − log(Γ(u+v)/Γ(u)).
fn log_scaled_beta(u: f64, v: f64) -> Result<f64> {
    Ok(log_gamma_ratio(1.0, v)? - log_gamma_ratio(u, v)?)
}

/// lim_{v→0} [B(u,v) − 1/v], with B(u,v) − 1/v formed as expm1(log(v·B))/v.
pub fn beta_pole_limit(u: f64) -> Result<LimitResult> {
    beta_pole_limit_with(u, BETA_H0, DEFAULT_DEPTH)
}

pub fn beta_pole_limit_with(u: f64, h0: f64, depth: u32) -> Result<LimitResult> {
    check_u("beta_pole_limit", u)?;
    richardson_limit(|v| Ok(libm::expm1(log_scaled_beta(u, v)?) / v), h0, depth)
}

/// lim v·B(u,v) and lim (u+v)·B(u,v+1), both equal to 1.
pub fn scaled_beta_limits(u: f64) -> Result<(LimitResult, LimitResult)> {
    scaled_beta_limits_with(u, BETA_H0, DEFAULT_DEPTH)
}

pub fn scaled_beta_limits_with(u: f64, h0: f64, depth: u32) -> Result<(LimitResult, LimitResult)> {
    check_u("scaled_beta_limits", u)?;
    let pole = richardson_limit(|v| Ok(libm::exp(log_scaled_beta(u, v)?)), h0, depth)?;
    // log((u+v)·B(u, v+1)) = log1p(v/u) + log Γ(1+v) − log(Γ(u+1+v)/Γ(u+1))
    let shifted = richardson_limit(
        |v| Ok(libm::exp(libm::log1p(v / u) + log_gamma_ratio(1.0, v)? - log_gamma_ratio(u + 1.0, v)?)),
        h0,
        depth,
    )?;
    Ok((pole, shifted))
}
