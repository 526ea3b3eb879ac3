use std::path::PathBuf;

use catenoid::mesh::MeshError;
use catenoid::tables::TableError;
use catenoid::CountError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input, located by a field path such as `circle1.r`.
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("inadmissible cell: {0}")]
    Inadmissible(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Table(#[from] TableError),
}

impl CliError {
    /// 2 for input and usage errors, 1 for runtime and I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } | CliError::Usage(_) | CliError::Inadmissible(_) => 2,
            CliError::Count(
                CountError::InvalidPair(_)
                | CountError::InvalidPoint(_)
                | CountError::InvalidSweep(_)
                | CountError::Geometry(_),
            ) => 2,
            CliError::Count(_) => 1,
            CliError::Mesh(
                MeshError::GridTooSmall { .. }
                | MeshError::InvalidRange { .. }
                | MeshError::FullySingular { .. }
                | MeshError::Parse { .. },
            ) => 2,
            CliError::Mesh(_) | CliError::Io { .. } | CliError::Table(_) => 1,
        }
    }
}
