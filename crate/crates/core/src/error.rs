use std::fmt;

use thiserror::Error;

/// Malformed graph, instance or certificate text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Failure modes shared by the solvers.
///
/// `Precondition` covers inputs outside an algorithm's contract (cover too
/// large, oversized component, malformed generator parameters). `Resource`
/// is a refusal to run past a configured budget; it never stands in for a
/// wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn precondition(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub fn resource(msg: impl fmt::Display) -> Self {
        Error::Resource(msg.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
