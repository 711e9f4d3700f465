use std::process::ExitCode;

use optomag_core::config::ConfigError;
use optomag_core::identify::IdentifyError;
use optomag_core::magnetostatics::MagnetostaticsError;
use optomag_core::scattering::ScatteringError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        })
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<MagnetostaticsError> for CliError {
    fn from(e: MagnetostaticsError) -> Self {
        match e {
            MagnetostaticsError::InvalidMaterial(_)
            | MagnetostaticsError::InvalidIndex { .. }
            | MagnetostaticsError::ModeNotFound(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<IdentifyError> for CliError {
    fn from(e: IdentifyError) -> Self {
        match e {
            IdentifyError::Io(_)
            | IdentifyError::Parse { .. }
            | IdentifyError::GridNotIncreasing { .. }
            | IdentifyError::TooFewPoints(_) => CliError::Io(e.to_string()),
            IdentifyError::MissingKittel | IdentifyError::InvalidArgument(_) => {
                CliError::Usage(e.to_string())
            }
            IdentifyError::Magnetostatics(inner) => inner.into(),
            IdentifyError::FitFailed { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
