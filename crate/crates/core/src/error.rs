use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A non-finite value showed up while updating point `index`.
    #[error("numeric failure at point {index}: {detail}")]
    Numeric { index: usize, detail: String },

    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("unsupported format {format}: {detail}")]
    Format { format: String, detail: String },

    #[error("phantom generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
