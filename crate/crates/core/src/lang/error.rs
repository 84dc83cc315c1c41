use std::fmt;

use thiserror::Error;

use super::lexer::Pos;
use crate::error::Error;

/// A syntax error: where it happened, what was found, and what would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new<I, S>(pos: Pos, found: String, expected: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ParseError {
            line: pos.line,
            column: pos.column,
            found,
            expected: expected.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: unexpected {}", self.line, self.column, self.found)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, ", expected {one}"),
            many => write!(f, ", expected one of {}", many.join(", ")),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{pos}: unknown identifier `{name}`")]
    UnknownIdentifier { name: String, pos: Pos },
    #[error("{pos}: `{name}` is already defined")]
    DuplicateDefinition { name: String, pos: Pos },
    #[error("script must start with a universe declaration")]
    MissingUniverse,
    #[error("{pos}: {source}")]
    Eval { pos: Pos, source: Error },
}

impl ScriptError {
    pub fn position(&self) -> Option<Pos> {
        match self {
            ScriptError::Parse(e) => Some(Pos { line: e.line, column: e.column }),
            ScriptError::UnknownIdentifier { pos, .. }
            | ScriptError::DuplicateDefinition { pos, .. }
            | ScriptError::Eval { pos, .. } => Some(*pos),
            ScriptError::MissingUniverse => None,
        }
    }
}
