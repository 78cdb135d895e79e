use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("at least {needed} samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point lies outside the unit sphere (radicand {0:e})")]
    OutsideSphere(f64),
    #[error("conversion precondition violated: {0}")]
    NotConvertible(String),
    #[error("cylinder does not meet the sphere in a curve")]
    EmptyIntersection,
    #[error("degenerate conic: {0}")]
    Degenerate(String),
    #[error("(mu, c) = ({mu}, {c}) lies in no admissible region")]
    OutOfRegion { mu: f64, c: f64 },
    #[error("momentum profile has no feasible latitude interval")]
    NoFeasibleRegion,
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("parameter {0} outside the domain")]
    OutOfDomain(f64),
    #[error("latitude z = 0: parallel curvature undefined")]
    ZeroLatitude,
    #[error("surface family has no implicit equation")]
    NoImplicitForm,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("least-squares fit is ill-conditioned")]
    IllConditioned,
    #[error("stereographic projection degenerates: {0}")]
    DegenerateProjection(String),
    #[error("missing parameters: {0}")]
    MissingParams(String),
    #[error("point at the projection pole")]
    AtPole,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end: 2 for input
    /// validation problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::QuadratureFailure(_) | Error::IllConditioned | Error::Io(_) => 3,
            _ => 2,
        }
    }
}
