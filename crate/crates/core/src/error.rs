use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// `Parse` is reserved for malformed user input; every other variant is a
/// domain error (well-formed input outside an operation's contract).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero is not allowed here: {0}")]
    Zero(&'static str),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("operation requires {expected}, got {got}")]
    WrongField { expected: &'static str, got: String },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("form of dimension {0} is not in I^{1}")]
    NotInIdeal(usize, u8),
    #[error("unsupported ideal level {0} (expected 0..=3)")]
    UnsupportedLevel(u8),
    #[error("expected a {expected}-fold Pfister form, got {got} slots")]
    WrongFold { expected: &'static str, got: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("{what}: n = {n} outside validity range {range}")]
    OutOfRange { what: &'static str, n: i64, range: &'static str },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(u32, u32),
    #[error("subset {0:#b} has odd cardinality")]
    OddSubset(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error in {field}: {msg}")]
    Parse { field: String, msg: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
