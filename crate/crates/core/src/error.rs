use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("characteristic {0} is not prime")]
    NotPrime(u64),

    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(usize),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid idempotent set: {0}")]
    InvalidIdempotentSet(String),

    #[error("the ideal generated by the idempotent is the whole algebra")]
    IdealIsWholeAlgebra,

    #[error("algebra validation failed: {0}")]
    InvalidAlgebra(String),

    #[error("module validation failed: {0}")]
    InvalidModule(String),

    #[error("operands live over different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("global dimension exceeds cap {cap} (simple at vertex {vertex})")]
    GlobalDimensionExceedsCap { cap: usize, vertex: usize },

    #[error("projective resolution exceeds cap {0}")]
    ResolutionExceedsCap(usize),

    #[error("lifting system through a quasi-isomorphism is inconsistent")]
    LiftSystemInconsistent,

    #[error("idempotent is not stratifying: Ae (x) eA has homology {actual:?}, AeA has dimension {expected}")]
    NotStratifying { expected: usize, actual: Vec<(i32, usize)> },

    #[error("functor tags do not compose: {0}")]
    TagMismatch(String),

    #[error("Serre pairing is singular on ({0})")]
    SingularPairing(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
