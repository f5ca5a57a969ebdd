use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms ({what})")]
    NonConvergence { what: String, terms: usize },

    #[error("wrong branch: {0}")]
    Branch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("expansion coefficient {index} is not positive ({value:e})")]
    PositivityViolation { index: usize, value: f64 },

    #[error("quadrature rule too coarse: estimated error {estimate:e} exceeds {tolerance:e}")]
    RuleTooCoarse { estimate: f64, tolerance: f64 },

    #[error("point set is not a {required}-design (residual {residual:e} at degree {degree})")]
    NotADesign {
        required: usize,
        degree: usize,
        residual: f64,
    },

    #[error("unknown point set name `{0}`")]
    UnknownName(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of a numerical method rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::RuleTooCoarse { .. } | Error::PositivityViolation { .. }
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    pub(crate) fn no_conv(what: impl Into<String>, terms: usize) -> Self {
        Error::NonConvergence {
            what: what.into(),
            terms,
        }
    }
}
