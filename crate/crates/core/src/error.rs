use thiserror::Error;

/// A byte offset with its 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: {msg}")]
    Parse { pos: Pos, msg: String },
    /// `M ++ x` where `x` is not a record literal.
    #[error("{pos}: right operand of `++` must be a record literal, found `{found}`")]
    MergeNotRecord { pos: Pos, found: String },
    #[error("duplicate label `{0}` in record")]
    DuplicateLabel(String),
    #[error("recursive let binding of `{0}`")]
    RecursiveLet(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("derivation rejected: {0}")]
    Verify(#[from] crate::assign::VerifyError),
    #[error("malformed derivation file: {0}")]
    Json(String),
    #[error("{0}")]
    Encoding(String),
    #[error("evaluation ran out of fuel after {0} steps")]
    FuelExhausted(usize),
    #[error("universe too large: {size} types exceeds limit {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
