use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] anchor_energy::Error),

    #[error("{context}: {source}")]
    Context {
        context: String,
        source: anchor_energy::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn at(path: &Path, source: anchor_energy::Error) -> Self {
        CliError::Context {
            context: path.display().to_string(),
            source,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn stdout(source: std::io::Error) -> Self {
        Self::io(Path::new("<stdout>"), source)
    }

    /// 2 for solver non-convergence, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(anchor_energy::Error::NotConverged { .. })
            | CliError::Context {
                source: anchor_energy::Error::NotConverged { .. },
                ..
            } => 2,
            _ => 1,
        }
    }
}
