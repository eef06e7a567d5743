use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Engine(String),
    #[error("feasibility inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    /// 2 for anything wrong with the inputs, 3 when a solver could not
    /// decide.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Inconclusive(_) => 3,
            _ => 2,
        }
    }

    pub fn from_json(path: &str, e: &serde_json::Error) -> Self {
        CliError::Parse { path: path.to_string(), line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl From<poly_core::PolyError> for CliError {
    fn from(e: poly_core::PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<heat_flow::HeatError> for CliError {
    fn from(e: heat_flow::HeatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<sos_engine::SosError> for CliError {
    fn from(e: sos_engine::SosError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<burgers_moments::BurgersError> for CliError {
    fn from(e: burgers_moments::BurgersError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<atom_flow::AtomError> for CliError {
    fn from(e: atom_flow::AtomError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<threshold_finder::ThresholdError> for CliError {
    fn from(e: threshold_finder::ThresholdError) -> Self {
        match e {
            threshold_finder::ThresholdError::Inconclusive { .. } => CliError::Inconclusive(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
