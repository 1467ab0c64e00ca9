use thiserror::Error;

use crate::quadrature::QuadratureResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty summation range: start {start} > end {end}")]
    EmptyRange { start: u64, end: u64 },

    #[error("running sum did not exceed the budget within {cap} terms")]
    IterationCapExceeded { cap: u64 },

    #[error("coefficient list is empty")]
    EmptyCoefficients,

    #[error("coefficient {0} is not strictly positive")]
    NonPositiveCoefficient(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a cosine-form coefficient list")]
    NotCosineForm,

    #[error("cosine-form input must be reduced with absorb_cosine first")]
    CosineFormUnsupported,

    #[error("{method}: n = {n} exceeds the configured cap {cap}")]
    SizeCapExceeded {
        method: &'static str,
        n: usize,
        cap: usize,
    },

    #[error(
        "exact evaluation infeasible: deep regime with n = {n} is beyond every exact method cap; use quadrature"
    )]
    ExactInfeasible { n: usize },

    #[error("quadrature not supported: {0}")]
    NotSupported(String),

    #[error("quadrature did not converge: error bound {} exceeds tolerance", .0.error_bound)]
    DidNotConverge(Box<QuadratureResult>),

    #[error("parse error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed record: {0}")]
    Record(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            message: message.into(),
        }
    }
}
