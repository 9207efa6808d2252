use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The regular-solution ansatz needs a strictly positive channel exponent.
    #[error("degenerate channel: m_s = {m_s} is not positive (xi = {xi})")]
    DegenerateChannel { xi: f64, m_s: f64 },

    #[error("energy {energy} exceeds the rest energy {rest_energy} in magnitude; no bound state")]
    NotBound { energy: f64, rest_energy: f64 },

    #[error("state sits at the continuum edge (eta = 0); no normalizable profile")]
    ContinuumEdge,

    #[error("nonrelativistic spectrum diverges: n + m + 1/2 - d*lambda_m/hbar = 0")]
    SpectrumDivergence,

    #[error("quadrature underresolved: relative change {relative_change:e} on node doubling")]
    QuadratureUnderresolved { relative_change: f64 },

    #[error("mesh too coarse: estimated relative error {estimate:e} exceeds tolerance {tolerance:e} (level {level})")]
    MeshTooCoarse {
        level: usize,
        estimate: f64,
        tolerance: f64,
    },

    #[error("domain too small: level {level} carries mass {tail_mass:e} in the last 10% of the domain")]
    DomainTooSmall { level: usize, tail_mass: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
