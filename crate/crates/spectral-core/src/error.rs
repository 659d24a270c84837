use thiserror::Error;

/// Errors shared by every operator in this crate.
#[derive(Debug, Error)]
pub enum SpectralError {
    /// Invalid grid construction parameters.
    #[error("invalid grid: {0}")]
    Grid(String),

    /// A scalar parameter outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A multiplier symbol evaluated to a non-finite value at a grid wavenumber.
    #[error("multiplier '{name}' undefined at wavenumber {xi:?}")]
    SymbolUndefined { name: String, xi: Vec<f64> },

    /// Two operands live on different grids.
    #[error("grid mismatch: {0} vs {1}")]
    GridMismatch(String, String),

    /// An I/O failure while reading or writing a field dump.
    #[error("field dump i/o: {0}")]
    Io(#[from] std::io::Error),

    /// A malformed field dump header.
    #[error("field dump header: {0}")]
    Header(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
