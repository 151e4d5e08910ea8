use thiserror::Error;

/// Failure modes of the solvers and analysis routines.
///
/// Payloads are widened to `f64` so a single error type serves every scalar
/// instantiation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("negative time {t} is outside the problem domain t >= 0")]
    NegativeTime { t: f64 },

    #[error("motion profile evaluator failed at argument {arg}")]
    ProfileEvaluation { arg: f64 },

    #[error("boundary motion is not subsonic: {reason} (peak |dX_s/dt|/c = {peak_speed_ratio})")]
    SupersonicMotion {
        reason: &'static str,
        peak_speed_ratio: f64,
    },

    #[error("custom profile is not normalized: {reason} (value {value})")]
    InvalidNormalization { reason: &'static str, value: f64 },

    #[error("velocity ratio {ratio} makes the Doppler factor singular or negative")]
    DegenerateRatio { ratio: f64 },

    #[error("observer at x = {x} lies inside the moving boundary X_s(t) = {boundary} at t = {t}")]
    ObserverInsideBoundary { x: f64, t: f64, boundary: f64 },

    #[error("signal emitted by the boundary has not reached x = {x} by t = {t}")]
    NotYetReached { x: f64, t: f64 },

    #[error(
        "retarded-time solve did not converge after {iterations} iterations (residual {residual})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("excitation probed at {arg}, outside its domain [{min}, {max}]")]
    ArgumentOutOfRange { arg: f64, min: f64, max: f64 },

    #[error("phase step {phase_step} rad between samples {index} and {next} suggests aliasing", next = index + 1)]
    AliasingSuspected { index: usize, phase_step: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// Coarse classification used by front ends to pick exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs outside the model's domain of validity.
    Validation,
    /// A numerical procedure could not deliver a trustworthy answer.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoConvergence { .. } | Error::AliasingSuspected { .. } => ErrorKind::Numerical,
            Error::ProfileEvaluation { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Validation,
        }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "INVALID_PARAMETER",
            Error::NegativeTime { .. } => "NEGATIVE_TIME",
            Error::ProfileEvaluation { .. } => "PROFILE_EVALUATION",
            Error::SupersonicMotion { .. } => "SUPERSONIC",
            Error::InvalidNormalization { .. } => "INVALID_NORMALIZATION",
            Error::DegenerateRatio { .. } => "DEGENERATE_RATIO",
            Error::ObserverInsideBoundary { .. } => "OBSERVER_INSIDE_BOUNDARY",
            Error::NotYetReached { .. } => "NOT_YET_REACHED",
            Error::NoConvergence { .. } => "NO_CONVERGENCE",
            Error::ArgumentOutOfRange { .. } => "ARGUMENT_OUT_OF_RANGE",
            Error::AliasingSuspected { .. } => "ALIASING",
            Error::TooFewSamples { .. } => "TOO_FEW_SAMPLES",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
