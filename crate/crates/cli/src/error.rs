use std::path::PathBuf;

use sat_pursuit::{AnalysisError, ConfigError, SimError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{}: invalid scenario\n{}", path.display(), describe(violations))]
    Invalid {
        path: PathBuf,
        violations: Vec<ConfigError>,
    },
    #[error("invalid value for --{flag}: {message}")]
    Arg { flag: &'static str, message: String },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("check failed: {0}")]
    Check(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn describe(violations: &[ConfigError]) -> String {
    violations
        .iter()
        .map(|v| format!("  [{}] {v}", v.fields().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    /// 2 for bad input, 3 for solver diagnostics, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. }
            | CliError::Parse { .. }
            | CliError::Invalid { .. }
            | CliError::Arg { .. } => 2,
            CliError::Analysis(AnalysisError::Config(_) | AnalysisError::TooFewSamples { .. }) => 2,
            CliError::Analysis(_) => 3,
            CliError::Sim(SimError::InvalidParam { .. }) => 2,
            CliError::Sim(SimError::Timeout { .. }) => 3,
            CliError::Check(_) => 3,
            CliError::Write { .. } | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}
