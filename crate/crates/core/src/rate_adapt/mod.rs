//! Circular-buffer rate matching, bit interleaving, and the receive-side
//! inverse: deinterleaving, rate unmatching with HARQ soft combining, and
//! the pool of virtual soft buffers.

mod harq;
mod interleave;
mod matching;

pub use harq::{BufferDims, HarqBufferPool, ProcessId, SlotHandle, N_CB_MAX, POOL_SLOTS};
pub use interleave::{deinterleave, interleave};
pub use matching::{
    filler_range, k0_start, materialize_decoder_input, rate_match, rate_unmatch_combine, RateMatchConfig,
    RedundancyVersion, SoftBuffer,
};
