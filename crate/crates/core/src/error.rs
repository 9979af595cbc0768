use thiserror::Error;

/// Errors raised by the coding chain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("lifting size {0} is not in the 5G NR lifting-size table")]
    InvalidLiftingSize(usize),
    #[error("segment length {k_prime} exceeds the maximum {max} for the base graph")]
    SegmentTooLong { k_prime: usize, max: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("{len} is not a multiple of the modulation order {q_m}")]
    NotMultipleOfModulationOrder { len: usize, q_m: usize },
    #[error("all {0} HARQ soft buffers are bound")]
    PoolExhausted(usize),
    #[error("no soft buffer is bound to HARQ process {0}")]
    UnknownProcess(crate::rate_adapt::ProcessId),
    #[error("HARQ process {0} is bound to a buffer with different code dimensions")]
    DimensionMismatch(crate::rate_adapt::ProcessId),
    #[error("malformed word stream: {0}")]
    Format(String),
    #[error("base graph table: {0}")]
    Table(String),
    #[error("code block {index}: {source}")]
    Block { index: usize, source: Box<Error> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn at_block(self, index: usize) -> Self {
        Error::Block {
            index,
            source: Box::new(self),
        }
    }
}
