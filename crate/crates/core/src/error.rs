use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice parameter tau = {tau}: {reason}")]
    InvalidTau { tau: Complex64, reason: &'static str },

    #[error("theta series did not converge within {cap} terms on each side")]
    NonConvergence { cap: usize },

    #[error("degenerate projective point: {0}")]
    DegeneratePoint(String),

    /// No torsion translation reproduces a Heisenberg generator. `closest`
    /// lists the best candidates as (label, residual).
    #[error("embedding is not Heisenberg equivariant for {generator}; closest candidates: {closest:?}")]
    EquivarianceFailure {
        generator: &'static str,
        closest: Vec<(String, f64)>,
    },

    #[error("no point with x_0 = 0 and x_i != 0 for i > 0 was found")]
    NoDistinguishedPoint,

    #[error("embedding has not been validated")]
    NotValidated,

    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subspace is not invariant under the Heisenberg action (residual {residual:e})")]
    NotInvariant { residual: f64 },

    #[error("submodule dimensions {parts:?} do not sum to {total}")]
    DecompositionMismatch { parts: Vec<usize>, total: usize },

    #[error("singular value gap {gap:e} too small to certify dimension {dim} (need > {min_gap:e})")]
    WeakGap { dim: usize, gap: f64, min_gap: f64 },

    #[error("insufficient samples: {have} points for {needed} required")]
    InsufficientSamples { have: usize, needed: usize },

    #[error("quadric constants fail their relations: {0}")]
    RelationFailure(String),

    #[error("point is too close to the projection center (image/input norm ratio {ratio:e})")]
    CenterHit { ratio: f64 },

    #[error("plane image has {dim} independent sextics (gap {gap:e}); expected exactly one")]
    NonUniqueSextic { dim: usize, gap: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
