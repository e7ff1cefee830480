use std::path::PathBuf;

/// Errors surfaced by the library and the benchmark harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A lattice or population size that cannot be represented.
    #[error("weight count overflows for divisions={divisions}, objectives={objectives}")]
    Sizing { divisions: usize, objectives: usize },

    /// Parameters that are individually valid but do not fit together.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A caller passed a value outside the operation's contract.
    #[error("input contract violated: {0}")]
    Contract(String),

    /// The requested feature is not available for this problem or dimension.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
