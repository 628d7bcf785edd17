//! Crate-wide error type.
//!
//! One enum covers every fallible path so callers (CLI, C ABI) can map
//! failures to a small set of exit codes / status codes without chasing
//! nested error types. Variants are grouped by the layer that raises them.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // linear algebra
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("eigensolver did not converge (off-diagonal norm {off:.3e})")]
    NoConvergence { off: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    // states
    #[error("trace is {trace:.12}, expected 1")]
    InvalidTrace { trace: f64 },
    #[error("state dimension {dim} is unsupported (expected 2 or 4)")]
    UnsupportedDimension { dim: usize },
    #[error("operation requires a {expected}-dimensional state, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("ket norm is {norm:.12}, expected 1")]
    NotNormalized { norm: f64 },

    // measurements and angles
    #[error("polar angle {theta} outside [0, pi]")]
    InvalidTheta { theta: f64 },
    #[error("azimuthal angle {phi} outside [0, 2*pi)")]
    InvalidPhi { phi: f64 },
    #[error("projectors do not resolve the identity (residual {residual:.3e})")]
    IncompleteMeasurement { residual: f64 },

    // games and strategies
    #[error("game must have at least one stage")]
    NoStages,
    #[error("information-set partition covers {got} stages, game has {expected}")]
    PartitionLength { expected: usize, got: usize },
    #[error("information-set ids must be contiguous from 0 (missing id {missing})")]
    PartitionGap { missing: usize },
    #[error("payoff table has {got} entries, expected {expected}")]
    PayoffTableSize { expected: usize, got: usize },
    #[error("payoff table is missing an entry for action sequence {sequence:?}")]
    MissingPayoffEntry { sequence: String },
    #[error("unknown action label {label:?} (expected 'L' or 'R')")]
    UnknownActionLabel { label: String },
    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },
    #[error("strategy covers {got} information sets, game has {expected}")]
    StrategyArity { expected: usize, got: usize },
    #[error("mixture weights sum to {sum:.12}, expected 1")]
    InvalidWeights { sum: f64 },
    #[error("plan assigns {got} actions, game has {expected} stages")]
    MalformedPlan { expected: usize, got: usize },
    #[error("grid needs at least {min} points per axis, got {got}")]
    GridTooCoarse { min: usize, got: usize },

    // measurement schemes
    #[error("scheme has {got} stages, expected {expected}")]
    WrongStageCount { expected: usize, got: usize },
    #[error("scheme measures the same subsystem at more than one stage")]
    DuplicateSubsystem,
    #[error("scheme has {scheme} stages but the game has {game}")]
    StageMismatch { scheme: usize, game: usize },

    // noise
    #[error("channel strength {strength} outside [0, 1]")]
    InvalidStrength { strength: f64 },
    #[error("Kraus operators do not compose to identity (residual {residual:.3e})")]
    KrausIncomplete { residual: f64 },
    #[error("sweep needs at least 2 steps, got {got}")]
    TooFewSteps { got: usize },

    // serialization
    #[error("document shape mismatch: {reason}")]
    DocumentShape { reason: String },
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors raised while decoding input documents, as opposed to
    /// inputs that decoded fine but describe an invalid object.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Json(_) | Error::DocumentShape { .. })
    }
}
