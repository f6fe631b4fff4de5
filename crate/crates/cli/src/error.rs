use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] aelgate::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Model(e) if e.is_numerical() => 3,
            CliError::Model(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }

    pub fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_string(), source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
