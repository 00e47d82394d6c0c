use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error(
        "integral `{integral}` did not converge within {panels} panels \
         (last relative error estimate {estimate:.3e})"
    )]
    Convergence {
        integral: String,
        panels: usize,
        estimate: f64,
    },

    #[error("invalid state at mu position {index}: {detail}")]
    InvalidState { index: usize, detail: String },

    #[error("cannot parse state `{input}`: {detail}")]
    Parse { input: String, detail: String },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// Renames the integral carried by a convergence error; other variants pass through.
    pub fn in_integral(self, name: impl Into<String>) -> Self {
        match self {
            Error::Convergence {
                panels, estimate, ..
            } => Error::Convergence {
                integral: name.into(),
                panels,
                estimate,
            },
            other => other,
        }
    }
}
