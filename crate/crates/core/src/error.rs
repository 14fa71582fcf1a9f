use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("intermediate degree exceeded the configured bound {bound}")]
    DegreeBoundExceeded { bound: u32 },

    #[error("swap coefficient for generators ({i}, {j}) specializes to a zero divisor")]
    ZeroDivisorInverse { i: usize, j: usize },

    #[error("commutator of generators ({i}, {j}) has nonzero value part at the limit")]
    NotCommutativeLimit { i: usize, j: usize },

    #[error("descending chain did not stabilize within {max_iter} iterations")]
    NotStabilized { max_iter: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
