use thiserror::Error;

/// Everything that can go wrong while propagating, shooting or sweeping.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// One of the two m1-m2 distance radicands dropped below the detection
    /// threshold (binary m1-m2 collision or total collapse).
    #[error("singular configuration: radicand {radicand:e} in the {which} distance term")]
    Singular { which: &'static str, radicand: f64 },

    /// The unregularized chart has no momenta at Q1 = Q2 = 0.
    #[error("momenta are undefined at the regularized m1-m1 collision (Q1 = Q2 = 0)")]
    CollisionChart,

    #[error("step size collapsed to {h:e} at s = {s}")]
    StepCollapse { s: f64, h: f64 },

    #[error("integrator exceeded {max_steps} steps before s = {s_end}")]
    MaxSteps { max_steps: usize, s_end: f64 },

    #[error("no section crossing in the requested direction")]
    NoCrossing,

    #[error("m1 = {m1} is outside the solver's supported range (0, {limit}]; pass a higher limit to try anyway")]
    OutOfDomain { m1: f64, limit: f64 },

    #[error("could not bracket the shooting residual for m1 = {m1} ({detail})")]
    NoBracket { m1: f64, detail: String },

    #[error("shooting did not converge for m1 = {m1} after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        m1: f64,
        iterations: usize,
        residual: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
