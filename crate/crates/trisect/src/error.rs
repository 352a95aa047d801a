use thiserror::Error;

/// Errors shared across the crate.
///
/// Validation errors carry enough context to name the invariant that failed,
/// since the CLI reports them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("matrix is degenerate over the rationals")]
    Degenerate,

    #[error("cut system is not isotropic: pairing of rows {i} and {j} is {value}")]
    NotIsotropic { i: usize, j: usize, value: String },

    #[error("cut system span is not a direct summand (invariant factor {factor})")]
    NotPrimitive { factor: String },

    #[error("cut system has wrong shape or rank: {0}")]
    WrongRank(String),

    #[error("lattice mismatch: genus {left} vs genus {right}")]
    LatticeMismatch { left: usize, right: usize },

    #[error("diagram invalid: {0}")]
    InvalidDiagram(String),

    #[error("alpha-beta pairing is not invertible after reduction")]
    NonInvertiblePairing,

    #[error("computed intersection form is not symmetric")]
    AsymmetricResult,

    #[error("diagram is not in standard shape: {0}")]
    NonStandardDiagram(String),

    #[error("invalid three-chain: {0}")]
    InvalidChain(String),

    #[error("no integer solution")]
    NoIntegerSolution,

    #[error("subsurface span has odd rank {0}")]
    OddRank(usize),

    #[error("intersection pairing on subsurface span is not unimodular")]
    DegeneratePairing,

    #[error("invalid subsurface basis: {0}")]
    InvalidBasis(String),

    #[error("form has an odd diagonal entry (index {0})")]
    OddForm(usize),

    #[error("incomplete linking data: {0}")]
    IncompleteLinkingData(String),

    #[error("invalid form spec: {0}")]
    InvalidFormSpec(String),

    #[error("integer out of range for JSON serialization")]
    IntegerRange,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
