use thiserror::Error;

#[derive(Debug, Error)]
pub enum WkbError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
    #[error(transparent)]
    Eikonal(#[from] eikonal::EikonalError),
    #[error("csv write failed: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, WkbError>;
