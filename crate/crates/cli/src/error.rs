use std::fmt;

/// CLI failures split by exit code: input problems exit 1, numeric or
/// internal-consistency problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<typea_core::Error> for CliError {
    fn from(err: typea_core::Error) -> Self {
        match err {
            typea_core::Error::InternalInconsistency(_) | typea_core::Error::NumericFailure(_) => {
                CliError::Numeric(err.to_string())
            }
            _ => CliError::Input(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
