use thiserror::Error;

use crate::subsets::Triple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set of size {n} is too small for k = {k} (need n >= k + 2)")]
    DomainTooSmall { n: usize, k: usize },
    #[error("index set {0:?} is not a subset of [{1}]")]
    NotASubset(Vec<usize>, usize),
    #[error("triple {0} is cyclic")]
    CyclicTriple(Triple),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("labels do not define a cyclically monotone surjection: {0}")]
    BadLabels(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid web: {0}")]
    InvalidWeb(String),
    #[error("web has a closed strand through dart {0}")]
    EllipticWeb(usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("matrix is not in the positive cone: {0}")]
    NotInPositiveCone(String),
    #[error("decomposition is not unique: {0}")]
    NotUnique(String),
    #[error("input is not a positive tropical Pluecker vector")]
    NotPositive,
    #[error("value is not integral: {0}")]
    NonIntegral(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
