use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("body is unbounded")]
    UnboundedBody,
    #[error("body is degenerate: {0}")]
    DegenerateBody(String),
    #[error("cross-section is empty")]
    EmptySlice,
    #[error("body must be flagged symmetric about the origin")]
    SymmetryRequired,
    #[error("body is not symmetric about the origin (support mismatch {0:e})")]
    NotSymmetric(f64),
    #[error("basis is singular")]
    SingularBasis,
    #[error("window meets no trajectory")]
    WindowTooSmall,
    #[error("line directions of a two-part union are collinear")]
    CollinearParts,
    #[error("lattice enumeration would visit {0} candidates")]
    EnumerationOverflow(u64),
    #[error("spectral support must be a ball centred at the origin")]
    NonIsotropicOmega,
    #[error("epsilon {epsilon} outside (0, {bound})")]
    EpsilonOutOfRange { epsilon: f64, bound: f64 },
    #[error("shrunk body has empty interior")]
    EmptyInterior,
    #[error("along-path pitch {eps} exceeds the unaliased bound {required}")]
    EpsTooCoarse { eps: f64, required: f64 },
    #[error("frequencies differ from an exact alias by {0:e}")]
    NearCosetAmbiguity(f64),
    #[error("index set contains the unit cell translate at {0:?}")]
    UnitCellPresent(Vec<i64>),
    #[error("index set is not lattice-convex")]
    NotLatticeConvex,
    #[error("relations are inconsistent (relative residual {0:e})")]
    InconsistentSystem(f64),
    #[error("reconstruction impossible: unit cell at {witness:?} in the alias set of {base:?}")]
    ReconstructionImpossible { base: Vec<f64>, witness: Vec<i64> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
