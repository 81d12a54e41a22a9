use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("unrecognized field '{0}' (expected q or a prime such as 2, F3)")]
    Unrecognized(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("consecutive maps at position {position} do not compose to zero")]
    CompositionNotZero { position: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("poset has minimal elements other than '*': {0:?}")]
    NoUniqueMinimum(Vec<String>),
    #[error("element '{0}' has no descending path to '*'")]
    DanglingElement(String),
    #[error("not ranked: {0}")]
    NotRanked(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("rank out of range: {0}")]
    RankOutOfRange(String),
    #[error("bad interval: {0}")]
    BadInterval(String),
    #[error("element '{0}' does not have rank 1")]
    RankNotOne(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell {0:?} of the subcomplex is not a cell of the ambient complex")]
    NotSubcomplex(Vec<String>),
}

/// Failures of the algebraic analyses (Hilbert series, Koszul verdicts, Ext).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("poset is not uniform (lower covers of '{witness}' split into {classes} classes)")]
    NotUniform { witness: String, classes: usize },
    #[error("degree {degree} needs {coordinates} tensor coordinates, above the bound {bound}")]
    DegreeTooLarge {
        degree: usize,
        coordinates: u128,
        bound: u128,
    },
    #[error("resolution bound exceeded: {0}")]
    BoundsExceeded(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
