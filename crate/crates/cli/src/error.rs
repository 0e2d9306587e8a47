use std::fmt;

/// Error classes, each with its own process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration (exit 1).
    Usage(String),
    /// Missing, unreadable or unwritable files and datasets (exit 2).
    Io(String),
    /// Solver failure (exit 3).
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    /// Treats every failure as a dataset problem, for the indexing stage.
    pub fn dataset(e: ncmseg::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<ncmseg::Error> for CliError {
    fn from(e: ncmseg::Error) -> Self {
        use ncmseg::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidArgument(_) | E::Generation(_) => CliError::Usage(msg),
            E::NotFound(_) | E::Format { .. } | E::Io(_) => CliError::Io(msg),
            E::Numeric { .. } => CliError::Numeric(msg),
        }
    }
}
