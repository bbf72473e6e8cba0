use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("non-admissible relations: {0}")]
    NonAdmissible(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("factorisation failed: {0}")]
    Factorisation(String),
    #[error("endomorphism quotient does not split over the active field ({0}); try a different field")]
    NotSplit(String),
    #[error("chain lift failed: {0}")]
    LiftFailure(String),
    #[error("complex is not presilting")]
    NotPresilting,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("mutation failed: {0}")]
    MutationFailed(String),
    #[error("exchange graph is not complete")]
    NotComplete,
    #[error("no brick label found: {0}")]
    LabelNotFound(String),
    #[error("extension tower exceeded cap {0}")]
    TowerDiverged(usize),
    #[error("enumeration caps too large: {0}")]
    CapTooLarge(String),
    #[error("filtration depth cap {0} exceeded")]
    DepthExceeded(usize),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("unknown corpus entry: {0}")]
    UnknownCorpusEntry(String),
    #[error("isomorphism test refused: {0}")]
    IsoRefused(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
