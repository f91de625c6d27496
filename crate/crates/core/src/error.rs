use thiserror::Error;

use crate::gf2::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} is {value}, above the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("circuit does not compute a linear operator (differs at input {input})")]
    NotLinear { input: BitVec },

    #[error(
        "not a solution: {x} and {y} agree on the stars of row {row} but differ on its fixed part"
    )]
    NotSolution { row: usize, x: BitVec, y: BitVec },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::LimitExceeded`] when `value > limit`.
pub(crate) fn ensure_limit(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::LimitExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
