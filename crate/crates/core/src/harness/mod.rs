//! Chain assembly and the experiment drivers built on it.

mod bench;
mod chain;
mod config;
mod report;
mod sim;

pub use bench::{run_throughput_bench, BenchReport, FPGA_REFERENCE_MBPS};
pub use chain::{
    decode_chain, decode_llrs, encode_chain, estimate_llrs, random_payload, BlockOutcome, ChainPlan,
    EncodedTransmission, ReleasePolicy,
};
pub use config::ChainConfig;
pub use report::{BlockStatus, RunReport};
pub use sim::{run_bler_sweep, run_harq_sim, HarqSimParams, HarqSimReport, SweepPoint, SweepReport};

/// SplitMix64 finalizer; spreads structured indices into seeds.
pub(crate) fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
