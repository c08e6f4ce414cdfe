use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure classes, used by front ends to map errors onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Input data is malformed or does not satisfy structural requirements.
    Data,
    /// The numbers are well formed but the requested statistic is undefined.
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("series `{0}` has a missing endpoint; extrapolation is not supported")]
    UnsupportedExtrapolation(String),

    #[error("series `{0}` has no observed values")]
    EmptySeries(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular design: column `{column}` is (nearly) collinear with the preceding columns (condition number {condition:.3e})")]
    SingularDesign { column: String, condition: f64 },

    #[error("singular leading sub-design at t = {t}")]
    SingularPrefix { t: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::Structure(_)
            | Error::UnsupportedExtrapolation(_)
            | Error::EmptySeries(_) => ErrorClass::Data,
            Error::Domain(_)
            | Error::Precondition(_)
            | Error::SingularDesign { .. }
            | Error::SingularPrefix { .. }
            | Error::Degenerate(_) => ErrorClass::Numeric,
        }
    }
}
