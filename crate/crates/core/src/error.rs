use thiserror::Error;

/// Errors raised by the geometric and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension {0} is too small (need n + 2 >= 4)")]
    DimensionTooSmall(usize),

    #[error("v ^ w vanishes: the two vectors do not span a plane")]
    DegenerateWedge,

    #[error("zero representative for a projective element")]
    ZeroRepresentative,

    #[error("point lies in the kernel of the projective map")]
    KernelHit,

    #[error("point is the projection centre (point at infinity)")]
    PointAtInfinity,

    #[error("invalid ellipse axes a = {a}, b = {b}")]
    InvalidAxes { a: f64, b: f64 },

    #[error("lift has (numerically) zero speed at t = {t}")]
    ZeroSpeed { t: f64 },

    #[error("adapted frame construction failed: {0}")]
    FrameFailure(String),

    #[error("step size underflow at s = {at} (step {step:e})")]
    StepUnderflow { at: f64, step: f64 },

    #[error("tolerance not met within {steps} steps")]
    ToleranceNotMet { steps: usize },

    #[error("gauge is not invertible (Lorentz) at t = {t}")]
    NonInvertibleGauge { t: f64 },

    #[error("pole form is not of the first kind")]
    NotFirstKind,

    #[error("primitive has no limit at the pole (spacelike pure part)")]
    NoLimit,

    #[error("remainder of the pole form grows towards the pole (growth factor {growth:e})")]
    RemainderUnbounded { growth: f64 },

    #[error("eigenvector residual {residual:e} exceeds tolerance")]
    EigenResidualTooLarge { residual: f64 },

    #[error("limit circles only exist for 1 - 2 lambda < 0 (got lambda = {lambda})")]
    NotSpacelikeRegime { lambda: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
