use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum UlamError {
    #[error("value {value} does not fit in a word of length {length}")]
    Range { length: u32, value: u64 },

    #[error("invalid word text {0:?}: expected a non-empty string of '0'/'1'")]
    Parse(String),

    #[error("word length {0} outside supported range 1..=63")]
    Length(u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("state error: {0}")]
    State(String),

    #[error("level {length} needs {needed} bytes of working memory, budget is {budget}")]
    Resource {
        length: u32,
        needed: u64,
        budget: u64,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("corrupt level file: {0}")]
    Corruption(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl UlamError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        UlamError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, UlamError>;
