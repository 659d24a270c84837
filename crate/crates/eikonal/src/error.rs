use thiserror::Error;

#[derive(Debug, Error)]
pub enum EikonalError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The embedded half-step estimate exceeded its tolerance away from any
    /// detected focusing; the step size is too coarse for the data.
    #[error("step size too coarse at t = {t}: per-step error estimate {estimate:e}")]
    StepSize { t: f64, estimate: f64 },

    #[error("csv serialization: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, EikonalError>;
