use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported system: {0}")]
    Unsupported(String),
    #[error("point is not exactly representable in {0}")]
    NonRepresentablePoint(String),
    #[error("{0}")]
    Parse(ParseError),
}

/// Location-tagged syntax error. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub(crate) fn mismatch(expected: impl fmt::Display, found: impl fmt::Display) -> Error {
    Error::SpaceMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
