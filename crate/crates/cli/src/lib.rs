//! Command-line front end for discrete Ribaucour pair nets: seeds, lattice
//! fills, verification reports and mesh export.

pub mod config;
pub mod mesh;
pub mod netfile;
pub mod report;
pub mod run;

use std::path::{Path, PathBuf};

pub use config::{RunConfig, Tolerances};
pub use netfile::{Loaded, NetFile};
pub use report::VerificationReport;
pub use run::{execute, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed config, net file or arguments.
    #[error("{0}")]
    Input(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// A hard check or a completion step failed.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Failure(_) => 1,
            Self::Input(_) | Self::Io { .. } => 2,
        }
    }
}
