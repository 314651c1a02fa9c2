//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid exponent p = {0}; require p > 1")]
    InvalidExponent(f64),

    #[error("invalid interval length L = {0}; require L > 0")]
    InvalidLength(f64),

    #[error("classification ambiguous: circle minimum {min} lies in the band ({lo}, {hi}); tighten sampling")]
    ClassificationAmbiguous { min: f64, lo: f64, hi: f64 },

    #[error("anisotropy is not degenerate (classified {0})")]
    NotDegenerate(String),

    #[error("zero anisotropy")]
    ZeroAnisotropy,

    #[error("domination failed: sampled verification found H(u) < H0(u) by {0}")]
    DominationFailed(f64),

    #[error("degenerate body: unit ball of a non-positive anisotropy is unbounded")]
    DegenerateBody,

    #[error("origin is not interior to the convex body")]
    OriginNotInterior,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("membrane is not convex")]
    NotConvex,

    #[error("mesh generation failed: {0}")]
    MeshFailure(String),

    #[error("discrete field is identically zero")]
    ZeroField,

    #[error("stiffness form is singular on the constrained space (smallest Ritz value {0})")]
    SingularStiffness(f64),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
