use thiserror::Error;

use crate::pattern::Pattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("input is not {class}: found induced {pattern} on {witness:?}")]
    Obstruction {
        class: &'static str,
        pattern: Pattern,
        witness: Vec<usize>,
    },

    #[error("{0}")]
    Refused(String),

    #[error("{what} cap exceeded ({size} > {cap})")]
    Cap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
