use thiserror::Error;

/// Shared error type for every construction in the crate.
///
/// Law violations always carry a human-readable witness naming the law and
/// the offending cells, so a failing suite run can be acted on directly.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("law violation [{law}]: {witness}")]
    LawViolation { law: String, witness: String },
    #[error("not composable at level {level}: {left} * {right}")]
    NotComposable {
        level: usize,
        left: String,
        right: String,
    },
    #[error("not an object: {0}")]
    NotAnObject(String),
    #[error("mismatched cospan: {0}")]
    MismatchedCospan(String),
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("not glueable: {0}")]
    NotGlueable(String),
    #[error("mismatch witness: {0}")]
    MismatchWitness(String),
    #[error("depth unsupported: cylinder level {k} acted by level {l}")]
    DepthUnsupported { k: usize, l: usize },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),
    #[error("ill-formed square: {0}")]
    IllFormedSquare(String),
    #[error("ambiguous candidate for {slot}: {candidates}")]
    AmbiguousCandidate { slot: String, candidates: String },
    #[error("parse error at line {line}: {detail}")]
    ParseError { line: usize, detail: String },
    #[error("dangling reference: {0}")]
    DanglingReference(String),
}

impl Error {
    pub fn law(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::LawViolation {
            law: law.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
