//! Software model of a 5G NR PUSCH/PDSCH channel-coding chain as it is
//! split between a host CPU and an FPGA accelerator.
//!
//! Encode path: LDPC encoding, circular-buffer rate matching, bit
//! interleaving, Gold-sequence scrambling and Gray QAM modulation.
//! Decode path: fixed-point piecewise-linear LLR estimation, descrambling,
//! deinterleaving, HARQ rate unmatching with soft combining into a pool of
//! virtual circular buffers, and layered offset min-sum LDPC decoding.
//!
//! All soft values crossing module boundaries are [`SoftLlr`]s: 6-bit
//! symmetric saturating fixed point with two fractional bits. Positive
//! values favor bit 1.

pub mod audit;
mod error;
pub mod harness;
pub mod ldpc;
pub mod llr;
pub mod rate_adapt;
pub mod scramble;

pub use error::{Error, Result};
pub use harness::{ChainConfig, RunReport};
pub use ldpc::{BaseGraphId, Codeword, DecodeResult, InfoBlock, LiftedLdpcCode, Termination};
pub use llr::{DemapperParams, EqualizedSymbol, ModulationOrder, PackedWordStream, SoftLlr};
pub use rate_adapt::{HarqBufferPool, ProcessId, RateMatchConfig, RedundancyVersion};
pub use scramble::{GoldState, ScramblingIdentity};

/// A hard bit, stored as 0 or 1.
pub type Bit = u8;
