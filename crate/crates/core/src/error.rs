use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n={expected}, found n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order d={d} is out of range for n={n} (need {min} <= d <= {max})")]
    OrderOutOfRange {
        n: usize,
        d: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid bicoloring: {0}")]
    InvalidBicoloring(String),

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n={n} exceeds the exhaustive verification cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("instance exceeds search guardrails: {0}")]
    Guardrail(String),

    #[error("edge {0} cannot be induced-bisected by any bicoloring of this order")]
    Unbisectable(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks `lo <= d <= hi` where `hi` is expressed relative to `n`.
pub(crate) fn check_order(n: usize, d: usize, max: usize) -> Result<()> {
    if d < 2 || d > max {
        return Err(Error::OrderOutOfRange { n, d, min: 2, max });
    }
    Ok(())
}
