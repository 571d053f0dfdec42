use chemo_core::ModelError;

/// CLI-level failure, carrying the process exit code it maps to.
///
/// Exit-code contract: 0 success, 2 validation failure, 3 divergence,
/// 4 I/O or configuration error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Divergence { t: f64 },
    Model(ModelError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Divergence { .. } => 3,
            CliError::Config(_) | CliError::Io(_) | CliError::Model(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::Divergence { t } => write!(f, "solution diverged at t = {t}"),
            CliError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Divergence { t } => CliError::Divergence { t },
            other => CliError::Model(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
