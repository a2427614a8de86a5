use aniso_mhd::MhdError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("blow-up at t = {t}: {reason}")]
    Blowup { t: f64, reason: String },
    #[error(transparent)]
    Core(#[from] MhdError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(line: usize, msg: impl Into<String>) -> Self {
        CliError::Config { line, msg: msg.into() }
    }

    /// Process exit code for the failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Blowup { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
