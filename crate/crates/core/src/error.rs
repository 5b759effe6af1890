use thiserror::Error;

/// Errors raised by the topology and classification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<usize>),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid homology basis: {0}")]
    InvalidHomologyBasis(String),
    #[error("objects live over different base complexes")]
    BaseMismatch,
    #[error("{0}-cochain is not a cocycle")]
    NotCocycle(usize),
    #[error("chain is not a cycle")]
    NotCycle,
    #[error("source or target bundles differ")]
    BundleMismatch,
    #[error("sheet counts differ: {0} vs {1}")]
    SheetMismatch(u64, u64),
    #[error("number of sheets must be at least 1, got {0}")]
    InvalidSheets(i64),
    #[error("twisting number must be nonzero")]
    ZeroTwist,
    #[error("twisting numbers differ: {0} vs {1}")]
    TwistMismatch(i64, i64),
    #[error("contact labels differ: {0} vs {1}")]
    ContactMismatch(String, String),
    #[error("class has no oriented witness")]
    MissingWitness,
    #[error("oriented witness is inconsistent: {0}")]
    WitnessMismatch(String),
    #[error("bundle is not trivial")]
    NonTrivialBundle,
    #[error("covering equation fails on simplex {0:?}")]
    CoveringEquation(Vec<usize>),
    #[error("loop index {0} out of range 1..=3")]
    LoopIndex(usize),
    #[error("angle unwrapping did not converge after {0} samples")]
    NonConvergent(usize),
    #[error("{0}")]
    Invalid(String),
}
