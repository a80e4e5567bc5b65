use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("complex parameters out of range: a = {a}, b = {b} (need a >= 1, b > 1)")]
    InvalidParams { a: i64, b: i64 },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: i64, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("malformed half-twist path: {0}")]
    MalformedPath(String),
    #[error("vertex ({r},{k}) is a {found}, expected a {expected}")]
    WrongVertexKind {
        r: i64,
        k: i64,
        found: &'static str,
        expected: &'static str,
    },
    #[error("factorization certificate failed: {0}")]
    Certificate(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("coset table is incomplete")]
    IncompleteCosetTable,
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("no generic real realization found: {0}")]
    NonGeneric(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
