use cotrend_core::ErrorClass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, bad config, unknown columns.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: cotrend_core::Error,
    },
    #[error("writing {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Stage { source, .. } => match source.class() {
                ErrorClass::Data => EXIT_DATA,
                ErrorClass::Numeric => EXIT_NUMERIC,
            },
            CliError::Output { .. } => EXIT_DATA,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attach a stage name to a core error.
pub trait StageExt<T> {
    fn stage(self, stage: &str) -> CliResult<T>;
}

impl<T> StageExt<T> for cotrend_core::Result<T> {
    fn stage(self, stage: &str) -> CliResult<T> {
        self.map_err(|source| CliError::Stage {
            stage: stage.to_string(),
            source,
        })
    }
}
