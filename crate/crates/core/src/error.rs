use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid parameter for {family}: {detail}")]
    InvalidParameter { family: &'static str, detail: String },

    #[error("{op} did not converge within {max_iter} iterations")]
    IterationLimit { op: &'static str, max_iter: usize },

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature tolerance not met: estimate {estimate}, error bound {error_bound}")]
    ToleranceNotMet { estimate: f64, error_bound: f64 },

    /// Survival (or cdf, for the reversed hazard) underflowed to zero.
    #[error("hazard overflow at y = {y}: denominator underflowed to zero")]
    HazardOverflow { y: f64 },

    #[error("observed information is not positive definite")]
    SingularHessian,

    #[error("need at least {needed} observations, got {got}")]
    DegenerateData { needed: usize, got: usize },

    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse { line: usize, column: usize, detail: String },

    #[error("values outside the open unit interval: {values:?}")]
    OutOfUnitInterval { values: Vec<f64> },

    #[error("empty input")]
    Empty,

    #[error("cannot read {path}: {detail}")]
    Io { path: String, detail: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn param(family: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter { family, detail: detail.into() }
    }

    /// True for failures caused by the input data rather than the numerics.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::OutOfUnitInterval { .. }
                | Error::Empty
                | Error::Io { .. }
                | Error::DegenerateData { .. }
                | Error::UnknownName(_)
        )
    }
}
