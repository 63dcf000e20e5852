use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element is a zero divisor and has no inverse")]
    NotInvertible,

    #[error("imaginary frequency: k^2 + M^2 = {radicand} < 0 lies below the infrared cutoff")]
    ImaginaryFrequency { radicand: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("extrapolation did not converge: {0}")]
    NonConvergent(String),

    #[error("vacuum axioms do not determine this expectation value: {0}")]
    UndeterminedByAxioms(String),

    #[error("truncated basis has {size} kets, above the cap of {cap}")]
    TruncationOrderTooLarge { size: usize, cap: usize },

    #[error("lattice contains k = 0, where eta_k has a pole")]
    PoleAtZeroMomentum,

    #[error("commutation coefficients depend on momentum; closed forms need constants")]
    MomentumDependentRho,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
