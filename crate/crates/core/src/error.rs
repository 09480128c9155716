use thiserror::Error;

use crate::dynamics::Trajectory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system parameters: {0}")]
    InvalidSystem(String),

    /// Both the central mass and the ring mass vanish.
    #[error("degenerate system: central mass and particle mass are both zero")]
    DegenerateSystem,

    /// The evaluation point sits on top of a body.
    #[error("coincident bodies: separation {distance:e} below the minimum allowed")]
    Coincidence { distance: f64 },

    #[error("imaginary oscillation frequency: radicand {radicand:e} < 0")]
    ImaginaryFrequency { radicand: f64 },

    #[error("phase angle undefined: perturbed and fundamental frequency coincide")]
    Resonance,

    #[error("argument outside the domain: {0}")]
    Domain(String),

    /// The cubic approximation breaks down for k at or above 3.
    #[error("cubic approximation unsuitable: k = {k} (needs k < 3)")]
    CubicSingular { k: f64 },

    #[error("no libration point on the {0} branch")]
    NoLibrationPoint(String),

    #[error("need at least {required} zero crossings, found {found}")]
    InsufficientCrossings { found: usize, required: usize },

    #[error("integration aborted at t = {time}: {reason}")]
    IntegrationAborted {
        time: f64,
        reason: String,
        partial: Box<Trajectory>,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
