use std::time::{Duration, Instant};

use serde::Serialize;

use super::report::to_csv;
use super::{decode_chain, encode_chain, random_payload, BlockStatus, ChainConfig, ChainPlan, ReleasePolicy, RunReport};
use crate::llr::{awgn, sigma2_from_snr_db};
use crate::rate_adapt::HarqBufferPool;
use crate::Result;

/// Published decode-chain throughput of the FPGA design at 20 and 40 code
/// blocks per transport block, in Mbit/s.
pub const FPGA_REFERENCE_MBPS: [(usize, f64); 2] = [(20, 899.9), (40, 900.1)];

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub codeblocks: usize,
    pub repetitions: usize,
    /// Fastest repetition.
    pub best: Duration,
    pub report: RunReport,
}

#[derive(Serialize)]
struct BenchRow {
    codeblocks: usize,
    info_bits: usize,
    repetitions: usize,
    best_seconds: f64,
    throughput_mbps: f64,
    block_errors: usize,
    reference_mbps: Option<f64>,
}

impl BenchReport {
    pub fn info_bits(&self) -> usize {
        self.codeblocks * self.report.config.k_prime
    }

    /// `C * K'` over the fastest decode-chain run.
    pub fn throughput_mbps(&self) -> f64 {
        self.info_bits() as f64 / self.best.as_secs_f64() / 1e6
    }

    pub fn reference_mbps(&self) -> Option<f64> {
        FPGA_REFERENCE_MBPS
            .iter()
            .find(|(c, _)| *c == self.codeblocks)
            .map(|&(_, m)| m)
    }

    pub fn to_csv(&self) -> Result<String> {
        to_csv(&[BenchRow {
            codeblocks: self.codeblocks,
            info_bits: self.info_bits(),
            repetitions: self.repetitions,
            best_seconds: self.best.as_secs_f64(),
            throughput_mbps: self.throughput_mbps(),
            block_errors: self.report.block_errors(),
            reference_mbps: self.reference_mbps(),
        }])
    }
}

/// Times the receive chain (demapping through decoding) on one transport
/// block of `codeblocks` blocks, `repetitions` times.
pub fn run_throughput_bench(cfg: &ChainConfig, codeblocks: usize, repetitions: usize) -> Result<BenchReport> {
    let plan = ChainPlan::new(&ChainConfig {
        codeblocks,
        ..cfg.clone()
    })?;
    let payload = random_payload(plan.payload_len(), cfg.seed);
    let tx = encode_chain(&plan, &payload, 0)?;
    let rx = if cfg.is_noiseless() {
        tx.symbols
    } else {
        awgn(&tx.symbols, sigma2_from_snr_db(cfg.snr_db), cfg.seed ^ 0x5EED)
    };
    let policy = ReleasePolicy {
        release_on_success: true,
        max_rounds: 1,
    };
    let mut pool = HarqBufferPool::new();
    let mut best = Duration::MAX;
    let mut outcomes = Vec::new();
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        outcomes = decode_chain(&plan, &rx, &mut pool, 0, policy)?;
        best = best.min(start.elapsed());
    }
    let mut report = RunReport::new(&plan.config);
    let k = cfg.k_prime;
    for (b, o) in outcomes.iter().enumerate() {
        report.push(BlockStatus {
            block: b,
            round: 0,
            parity_ok: o.result.parity_ok,
            payload_ok: o.payload == payload[b * k..(b + 1) * k],
            iterations: o.result.iterations_used,
            termination: o.result.termination,
        });
    }
    report.elapsed = best;
    Ok(BenchReport {
        codeblocks,
        repetitions: repetitions.max(1),
        best,
        report,
    })
}
