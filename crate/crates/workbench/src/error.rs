use std::io;
use std::path::PathBuf;

use homonym_core::cluster::ClusterError;
use homonym_core::embed::EmbedError;
use homonym_core::eval::EvalError;

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("{}: no such file", path.display())]
    MissingFile { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: {reason}", path.display())]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{}:{line}: target index {index} is out of range for {len} tokens", path.display())]
    IndexOutOfRange {
        path: PathBuf,
        line: usize,
        index: usize,
        len: usize,
    },
    #[error("{}:{line}: duplicate sense key {key:?}", path.display())]
    DuplicateSenseKey {
        path: PathBuf,
        line: usize,
        key: String,
    },
    #[error("{}:{line}: duplicate inventory entry for {word} sense {sense_number}", path.display())]
    DuplicateKey {
        path: PathBuf,
        line: usize,
        word: String,
        sense_number: u32,
    },
    #[error("{}:{line}: vector has {found} components but the header declares {expected}", path.display())]
    DimensionMismatch {
        path: PathBuf,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{}: first line must be a {{\"dim\": d}} header", path.display())]
    MissingHeader { path: PathBuf },
    /// Bad flags or configuration; reported as a usage error.
    #[error("{0}")]
    Config(String),
    #[error("{word}: {source}")]
    Cluster {
        word: String,
        #[source]
        source: ClusterError,
    },
    #[error("{word}: {source}")]
    Embed {
        word: String,
        #[source]
        source: EmbedError,
    },
    #[error("{word}: {source}")]
    Eval {
        word: String,
        #[source]
        source: EvalError,
    },
    #[error("{word}: {reason}")]
    Inconsistent { word: String, reason: String },
    #[error(transparent)]
    Viz(#[from] crate::viz::VizError),
    #[error("cannot serialize {what}: {source}")]
    Serialize {
        what: &'static str,
        #[source]
        source: serde_json::Error,
    },
}

impl WorkbenchError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        let path = path.into();
        if source.kind() == io::ErrorKind::NotFound {
            WorkbenchError::MissingFile { path }
        } else {
            WorkbenchError::Io { path, source }
        }
    }

    /// Usage errors exit with 1, everything else with 2.
    pub fn is_usage(&self) -> bool {
        matches!(self, WorkbenchError::Config(_))
    }
}

pub type Result<T, E = WorkbenchError> = std::result::Result<T, E>;
