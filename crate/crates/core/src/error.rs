use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// `1 + rho` dropped below the admissibility floor.
    #[error("state left the admissible tube: min(1 + rho) = {min_density} < {floor}")]
    Admissibility { min_density: f64, floor: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A negative-order multiplier was applied to data with a nonzero mean.
    #[error("operator of order {order} is undefined on data with nonzero mean (|mean| = {mean})")]
    NonzeroMean { order: f64, mean: f64 },

    #[error("degenerate fit window: {0}")]
    DegenerateFit(String),

    #[error("grid mismatch: expected {expected} coefficients, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
