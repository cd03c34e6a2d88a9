use thiserror::Error;

/// Errors raised by the solver. Messages carry the offending values as `f64`
/// so the type stays independent of the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The subsolution branch needs `B < 0`.
    #[error("branch precondition violated: B = {b} must be negative")]
    NonNegativeB { b: f64 },

    /// `rho_minus == rho_plus`: no shock-rarefaction fan can exist.
    #[error("degenerate data: rho_minus == rho_plus == {rho}")]
    DegenerateR { rho: f64 },

    #[error("first velocity components differ: v_minus1 = {v_minus1}, v_plus1 = {v_plus1}")]
    TangentialMismatch { v_minus1: f64, v_plus1: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A constraint on the subsolution parameters is not met.
    #[error("constraint violated ({constraint}): {detail}")]
    Constraint {
        constraint: &'static str,
        detail: String,
    },

    /// No admissible fan subsolution was found even next to the shock bound.
    #[error("no threshold: no feasible gap found at w = {w} (sqrt(T) = {sqrt_t})")]
    NoThreshold { w: f64, sqrt_t: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
