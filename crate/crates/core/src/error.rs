use thiserror::Error;

/// Errors raised by the linear algebra kernels, state constructors and measures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("subsystem index {index} out of range for {parties} subsystems")]
    BadSubsystemIndex { index: usize, parties: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a probability vector: {0}")]
    NotAProbabilityVector(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error(
        "spectrum is degenerate (smallest gap {gap:e}); product-eigenbasis test is unreliable"
    )]
    DegenerateSpectrum { gap: f64 },
    #[error(
        "partition enumeration for subsystem {subsystem} needs {needed} assignments, cap is {cap}"
    )]
    PartitionCapExceeded {
        subsystem: usize,
        needed: u128,
        cap: u64,
    },
    #[error("invalid density matrix: {0}")]
    ValidationFailure(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::DegenerateSpectrum { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
