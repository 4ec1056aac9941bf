use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("steady-state iteration did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("system is unstable (max eigenvalue real part {max_real_part:e} Hz)")]
    Unstable { max_real_part: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("grid does not cover [{low:e}, {high:e}] Hz at the required resolution")]
    Coverage { low: f64, high: f64 },

    #[error("metric does not change sign over [{low:e}, {high:e}]")]
    Bracket { low: f64, high: f64 },

    #[error("probe run did not settle (relative drift {drift:e})")]
    Settling { drift: f64 },

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("parameter file: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
