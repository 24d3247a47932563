use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the function's domain.
    Domain {
        function: &'static str,
        requirement: &'static str,
        value: f64,
    },
    /// The result does not fit in an `f64`.
    Overflow { function: &'static str },
    /// An integrand, limit function or series term produced NaN or ±∞.
    NonFinite { function: &'static str, at: f64 },
    /// Quadrature refinement exhausted its levels above tolerance.
    NotConverged {
        function: &'static str,
        value: f64,
        error_estimate: f64,
    },
    /// Malformed control parameters (series limits, table depth, ...).
    InvalidControl(&'static str),
    /// An identity id that is not in the registry.
    UnknownIdentity(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            function,
            requirement,
            value,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                function,
                requirement,
                value,
            } => write!(f, "{function}: argument {value} violates {requirement}"),
            Error::Overflow { function } => write!(f, "{function}: result overflows f64"),
            Error::NonFinite { function, at } => {
                write!(f, "{function}: non-finite value encountered at {at}")
            }
            Error::NotConverged {
                function,
                value,
                error_estimate,
            } => write!(
                f,
                "{function}: not converged (value {value}, error estimate {error_estimate})"
            ),
            Error::InvalidControl(msg) => write!(f, "invalid control parameter: {msg}"),
            Error::UnknownIdentity(id) => write!(f, "unknown identity id `{id}`"),
        }
    }
}

impl core::error::Error for Error {}
