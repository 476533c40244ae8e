use thiserror::Error;

/// Errors reported by body construction, classification and the mesh probes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("zero vector where a direction is required")]
    ZeroVector,

    #[error("unsupported dimension {0} (meshes cover n = 2, 3, 4)")]
    UnsupportedDimension(usize),

    #[error("direction is not bisector-labeled ({0:?})")]
    NotBisectorDirection(crate::bisector::RayLabel),

    #[error("tangency chord has zero half-length; it has no bisector preimage")]
    TangentChord,

    #[error("classification unresolved for direction {direction:?}: {reason}")]
    Unresolved { direction: Vec<f64>, reason: String },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("annulus around probe point holds no samples")]
    EmptyAnnulus,

    #[error("malformed body spec: {0}")]
    BadSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("body spec parse error: {0}")]
    Json(#[from] serde_json::Error),
}
