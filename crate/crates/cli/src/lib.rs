//! Verification harness, result cache and report types behind the
//! `charpoly` command-line tool.

pub mod cache;
pub mod report;
pub mod verify;

pub use cache::Cache;
pub use report::{Params, ReportSet, Status, VerificationReport, Witness, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] charpoly::Error),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Bad arguments map to the conventional usage status 64.
    pub fn exit_code(&self) -> u8 {
        use charpoly::Error as E;
        match self {
            Self::Usage(_)
            | Self::Core(E::InvalidArgument(_) | E::Parse(_) | E::SizeMismatch { .. }) => 64,
            _ => 1,
        }
    }
}
