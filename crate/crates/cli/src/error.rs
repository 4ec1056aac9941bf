use thiserror::Error;

/// Failures that end a run, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unstable system: {0}")]
    Unstable(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Unstable(_) => 2,
            CliError::Config(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError::Config(format!("{}: {err}", path.display()))
    }
}

impl From<nonrecip::Error> for CliError {
    fn from(err: nonrecip::Error) -> Self {
        use nonrecip::Error as E;
        match err {
            E::Unstable { .. } => CliError::Unstable(err.to_string()),
            E::InvalidParameter { .. } | E::Precondition(_) | E::Coverage { .. } | E::UnknownTag(_) | E::Parse(_) => {
                CliError::Config(err.to_string())
            }
            E::Convergence { .. } | E::Numerical(_) | E::Bracket { .. } | E::Settling { .. } => {
                CliError::Numerical(err.to_string())
            }
        }
    }
}
