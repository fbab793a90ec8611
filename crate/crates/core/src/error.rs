use thiserror::Error;

/// Errors raised by triple-system operations, embeddings and verification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("pair is not quasi-invertible (Bergman operator is singular)")]
    NotQuasiInvertible,

    #[error("kernel is singular at this pair (quasi-determinant vanishes)")]
    KernelSingular,

    #[error("element is not a tripotent (residual {residual:.3e})")]
    NotATripotent { residual: f64 },

    #[error("{0} is not of tube type")]
    NotTubeType(String),

    #[error("construction failed validation: {0}")]
    ConstructionValidationFailed(String),

    #[error("point lies outside the unit ball (norm {norm})")]
    OutsideBall { norm: f64 },

    #[error("square-root branch could not be continued: {0}")]
    BranchCut(String),

    #[error("map is not a triple automorphism (residual {residual:.3e})")]
    NotAutomorphism { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sampled images span rank {rank}, need {needed}")]
    RankDeficientSpan { rank: usize, needed: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("malformed embedding description: {0}")]
    MalformedSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
