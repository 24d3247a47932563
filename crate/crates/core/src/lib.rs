//! Reference special functions (Γ, B, ψ, ψ′, ψ⁽ᵐ⁾, Hurwitz ζ, Pochhammer
//! symbols) together with three independent constructive routes to the same
//! quantities: slowly convergent series with power-law tail correction,
//! tanh-sinh quadrature of log-singular integrals on (0, 1), and Richardson
//! extrapolation of v → 0 limits. The [`verify`] module ties them together
//! into a registry of identities that can be checked on parameter grids.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod limits;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
