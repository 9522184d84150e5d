use thiserror::Error;

/// Errors produced by the library.
///
/// Column and square indices carried by variants are 1-based, matching the
/// way arrays are printed and read back.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("invalid dimensions: {0}")]
    Dimension(String),

    #[error("symbol {symbol} out of range for alphabet of size {n}")]
    SymbolOutOfRange { symbol: usize, n: usize },

    #[error("columns {first} and {second} are not orthogonal: pair ({}, {}) repeats", pair.0, pair.1)]
    ColumnsNotOrthogonal { first: usize, second: usize, pair: (usize, usize) },

    #[error("squares {first} and {second} are not orthogonal: pair ({}, {}) repeats", pair.0, pair.1)]
    SquaresNotOrthogonal { first: usize, second: usize, pair: (usize, usize) },

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("field of order {0} is not supported (orders up to 32 only)")]
    FieldTooLarge(usize),

    #[error("field tables for GF({q}) fail the {axiom} axiom")]
    FieldAxiom { q: usize, axiom: &'static str },

    #[error("tau-parity is not plausible: {0}")]
    NotPlausible(String),

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("swapping is undefined for even n")]
    SwapUndefined,

    #[error("k = {k} is too large for full enumeration (k <= 8); use orbit() on individual states")]
    EnumerationTooLarge { k: usize },

    #[error("k = {k} does not fit a packed parity state (k <= 11)")]
    StateTooWide { k: usize },

    #[error("orbit exceeds the memory budget of {budget_bytes} bytes after {visited} states")]
    ResourceExhausted { budget_bytes: usize, visited: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
