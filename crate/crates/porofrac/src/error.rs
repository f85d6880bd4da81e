//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("structurally singular system: {0}")]
    StructuralSingularity(String),

    #[error("numerically singular system: {0}")]
    NumericalSingularity(String),

    #[error("runaway avalanche at station {station}: {events} damage events in {sweeps} sweeps (cap {cap}); last sweep sizes {tail:?}")]
    RunawayAvalanche {
        station: usize,
        sweeps: usize,
        events: usize,
        cap: usize,
        tail: Vec<usize>,
    },

    #[error("logic error: {0}")]
    Logic(String),

    #[error("time-step instability: {0}")]
    Instability(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
