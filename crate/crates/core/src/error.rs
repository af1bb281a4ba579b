use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),

    #[error("unknown argument `{0}`")]
    UnknownArgument(String),

    #[error("argument index {index} out of range for a framework with {len} arguments")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("`{0}` is not a valid ASP constant")]
    InvalidConstant(String),

    #[error("cannot parse atom `{0}`")]
    AtomParse(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    #[error("search cancelled")]
    Cancelled,

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("framework has {args} arguments, above the brute-force cap of {cap}")]
    CapExceeded { args: usize, cap: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("external solver: {0}")]
    Solver(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
