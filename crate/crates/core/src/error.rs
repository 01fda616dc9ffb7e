use thiserror::Error;

use crate::expr::ExprError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("parameter ({u}, {v}) outside chart domain {domain}")]
    OutOfDomain { u: f64, v: f64, domain: String },

    #[error("surface not regular at {at}: |σ_u × σ_v| = {measure:e} (threshold {threshold:e})")]
    Irregular {
        at: String,
        measure: f64,
        threshold: f64,
    },

    #[error("vanishing gradient at {at}: |∇f| = {measure:e}")]
    VanishingGradient { at: String, measure: f64 },

    #[error("projection onto f = 0 did not converge after {iterations} iterations (|f| = {residual:e})")]
    ProjectionDiverged { iterations: usize, residual: f64 },

    #[error("point {at} is off the surface: |f| = {residual:e}")]
    OffSurface { at: String, residual: f64 },

    #[error("Frenet frame undefined at s = {s}: curvature {curvature:e} below threshold")]
    FrenetUndefined { s: f64, curvature: f64 },

    #[error("vanishing speed at t = {t}: |dγ/dt| = {speed:e}")]
    VanishingSpeed { t: f64, speed: f64 },

    #[error("arclength {s} outside curve domain [0, {length}]")]
    ArclengthOutOfRange { s: f64, length: f64 },

    #[error("degenerate input for {what}: {reason}")]
    Degenerate { what: String, reason: String },

    #[error("singular point of the isophote field at {at}: no isophotic curve with the given axis and angle passes here")]
    SingularIsophote { at: String },

    #[error("no isophote at this level near guess ({detail})")]
    NoIsophote { detail: String },

    #[error("seed is not on the isophote level set: |<U,d> - cos φ| = {residual:e}; use find_seed to locate a starting point")]
    SeedOffLevel { residual: f64 },

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn degenerate(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Degenerate {
            what: what.into(),
            reason: reason.into(),
        }
    }
}
