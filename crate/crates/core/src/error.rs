use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CasimirError {
    /// A physical or geometric input violates a hard constraint.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A function was evaluated outside of its mathematical domain.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// A series, quadrature or Matsubara sum did not reach its tolerance
    /// within the configured caps. `partial` holds the value accumulated so far.
    #[error("{what} did not converge after {terms} terms (partial value {partial:.6e})")]
    Convergence {
        what: &'static str,
        partial: f64,
        terms: usize,
    },

    /// A tabulated permittivity was queried outside of its grid.
    #[error("frequency {xi:.6e} rad/s outside tabulated range [{min:.6e}, {max:.6e}]")]
    Extrapolation { xi: f64, min: f64, max: f64 },

    /// Malformed tabulated permittivity input.
    #[error("permittivity table line {line}: {message}")]
    Table { line: usize, message: String },
}

impl CasimirError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CasimirError::InvalidInput(msg.into())
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        CasimirError::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// Partial value carried by a convergence failure, if any.
    pub fn partial_value(&self) -> Option<f64> {
        match self {
            CasimirError::Convergence { partial, .. } => Some(*partial),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
