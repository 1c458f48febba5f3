use std::fmt;

use thiserror::Error;

use crate::term::Arity;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected ", self.pos)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("type error in `{term}`: {reason}")]
    Type { term: String, reason: String },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: Arity, right: Arity },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("hyperplane has all-zero coefficients and constant")]
    ZeroHyperplane,
    #[error("polyhedron is not an intersection of sign conditions on the given hyperplanes")]
    NotRepresentable,
    #[error("polyhedron is empty")]
    EmptyInput,
    #[error("invalid relation document: {0}")]
    Document(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
