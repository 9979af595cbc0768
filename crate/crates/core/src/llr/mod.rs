//! Soft-value formats, Gray QAM modulation, the AWGN channel, fixed-point
//! LLR estimation and the 32-bit word formats of the accelerator interface.

mod channel;
mod demap;
mod modulation;
mod soft;
mod symbol;
mod words;

pub use channel::{awgn, sigma2_from_snr_db};
pub use demap::{llr_estimate, DemapperParams};
pub use modulation::{constellation, modulate, ModulationOrder};
pub use soft::{quantize, SoftLlr};
pub use symbol::EqualizedSymbol;
pub use words::{pack_bit_words, pack_llr_words, unpack_bit_words, unpack_llr_words, PackedWordStream, WordKind};
