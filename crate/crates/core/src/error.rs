use core::fmt;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// A structural hypothesis of the underlying identity or estimate does not hold.
    Hypothesis {
        requirement: &'static str,
        detail: &'static str,
    },
    /// The exponent family has no implementation for the requested operation.
    Unsupported {
        family: &'static str,
        operation: &'static str,
    },
    /// Adaptive quadrature ran out of subdivisions.
    Convergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    /// No sign change was found on the supplied interval.
    Bracketing { lo: f64, hi: f64 },
    /// An integrand or transform produced a non-finite value.
    NonFinite { abscissa: f64 },
    /// A parameter of a constructor is invalid.
    InvalidParameter { name: &'static str, value: f64 },
}

impl Error {
    /// True for errors caused by the caller's input or a violated hypothesis, as
    /// opposed to a numerical failure.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Convergence { .. } | Error::NonFinite { .. })
    }
}

impl core::error::Error for Error {}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Hypothesis {
                requirement,
                detail,
            } => write!(f, "{detail}: {requirement}"),
            Error::Unsupported { family, operation } => {
                write!(f, "{operation} is not available for the {family} family")
            }
            Error::Convergence {
                value,
                error_estimate,
                evaluations,
            } => write!(
                f,
                "quadrature did not converge after {evaluations} evaluations \
                 (best value {value}, error estimate {error_estimate})"
            ),
            Error::Bracketing { lo, hi } => {
                write!(f, "no sign change on [{lo}, {hi}]")
            }
            Error::NonFinite { abscissa } => {
                write!(f, "non-finite function value at abscissa {abscissa}")
            }
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
