use thiserror::Error;

use crate::tensor::Config;

/// Errors raised by the fractional operators and the kinematic, strain and
/// stress routines built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fractional order {0} outside (0, 1]")]
    InvalidOrder(f64),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("subdivision count {0} is below the minimum of 2")]
    InvalidSubdivision(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("horizon interval ({lo}, {hi}) leaves the body domain [{min}, {max}] on axis {axis}")]
    OutsideBody {
        axis: usize,
        lo: f64,
        hi: f64,
        min: f64,
        max: f64,
    },

    #[error("singular matrix (condition estimate {0:e})")]
    SingularMatrix(f64),

    #[error("leg mismatch: expected {expected:?}, found {found:?}")]
    LegMismatch { expected: Config, found: Config },

    #[error("non-positive jacobian {0}")]
    NonPositiveJacobian(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

impl Error {
    /// True for failures of the numerics (singular matrices, body exits,
    /// non-finite results), as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix(_)
                | Error::OutsideBody { .. }
                | Error::NonPositiveJacobian(_)
                | Error::NonFinite(_)
                | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
