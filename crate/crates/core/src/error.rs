use thiserror::Error;

/// Errors raised by grid construction, initial conditions and the evolution engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("packet not resolvable on grid: {0}")]
    Resolution(String),

    #[error("invalid initial condition: {0}")]
    InvalidInitial(String),

    #[error("mode index {index} outside the grid momentum range [{min}, {max})")]
    ModeOutOfRange { index: i64, min: i64, max: i64 },

    #[error("negative argument {0} passed to a Bessel function")]
    NegativeArgument(f64),

    #[error("mass must be finite and nonnegative, got {0}")]
    InvalidMass(f64),

    #[error("sample (dx = {dx}, dt = {dt}) lies outside the lightcone")]
    OutsideLightcone { dx: f64, dt: f64 },

    #[error("time step {dt} is not a multiple of the grid spacing {spacing}; nearest commensurate step is {suggested}")]
    NonCommensurate { dt: f64, spacing: f64, suggested: f64 },

    #[error("time step {dt} exceeds a quarter of the half extent ({limit})")]
    StepTooLong { dt: f64, limit: f64 },

    #[error("field has zero norm")]
    ZeroNorm,

    #[error("field is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("field and engine live on different grids")]
    GridMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
