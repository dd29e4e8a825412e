use thiserror::Error;

/// Errors produced by ball, model, geometry and barycentric operations.
///
/// Every fallible operation names the violated precondition through one of
/// these variants; the CLI maps them to exit code 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GyroError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point with norm {norm} is not strictly inside the ball of radius {radius}")]
    BoundaryOrOutside { norm: f64, radius: f64 },

    #[error(
        "ball context mismatch: (dim {left_dim}, radius {left_radius}) vs (dim {right_dim}, radius {right_radius})"
    )]
    ContextMismatch {
        left_dim: usize,
        left_radius: f64,
        right_dim: usize,
        right_radius: f64,
    },

    #[error("vectors are not parallel (rejection norm {rejection})")]
    NotParallel { rejection: f64 },

    #[error("operation requires a non-empty list of points")]
    EmptyList,

    #[error("unknown identity or suite name: {name}")]
    UnknownIdentity { name: String },

    #[error("input points are collinear; the construction is degenerate")]
    CollinearInput,

    #[error("operation requires the {expected} model, got {got}")]
    WrongModel { expected: String, got: String },

    #[error("degenerate input: {detail}")]
    DegenerateInput { detail: String },

    #[error("intermediate value too close to the ball boundary for a stable result: {detail}")]
    NumericallyAtBoundary { detail: String },

    #[error("finite-difference step {step} too large (must be at most {max})")]
    StepTooLarge { step: f64, max: f64 },

    #[error("parameter {name} must be positive, got {value}")]
    NegativeParameter { name: String, value: f64 },

    #[error("barycentric weights sum to zero (sum {sum})")]
    ZeroWeightSum { sum: f64 },

    #[error("point is not in the affine span of the anchors (residual {residual})")]
    NotInAffineSpan { residual: f64 },

    #[error("anchor points are affinely dependent; coordinates are not unique")]
    DependentAnchors,

    #[error("gamma-weighted coefficient sum must be positive, got {sum}")]
    NonpositiveGammaSum { sum: f64 },

    #[error("point is tagged for the {expected} model, got a point tagged {got}")]
    SideMismatch { expected: String, got: String },
}

pub type Result<T> = std::result::Result<T, GyroError>;
