use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures after argument parsing. Usage errors (exit 2) are reported by
/// clap before any of these can occur.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Crypto(#[from] pqies::Error),
}

impl CliError {
    /// Stable prefix of the one-line error report, e.g. `E_MAC_MISMATCH`.
    pub fn code(&self) -> String {
        match self {
            CliError::Io { .. } => "E_IO".into(),
            CliError::Crypto(e) => format!("E_{}", e.code()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Crypto(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

pub fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
