use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::chain::{combine_and_decode, decode_block_uncombined, split_blocks};
use super::report::to_csv;
use super::{derive_seed, encode_chain, estimate_llrs, random_payload, BlockStatus, ChainConfig, ChainPlan, RunReport};
use crate::ldpc::DecodeResult;
use crate::llr::{awgn, sigma2_from_snr_db, EqualizedSymbol};
use crate::rate_adapt::{HarqBufferPool, ProcessId};
use crate::{Bit, Error, Result};

fn channel(plan: &ChainPlan, symbols: &[EqualizedSymbol], seed: u64) -> Vec<EqualizedSymbol> {
    if plan.config.is_noiseless() {
        symbols.to_vec()
    } else {
        awgn(symbols, sigma2_from_snr_db(plan.config.snr_db), seed)
    }
}

fn status(block: usize, round: usize, result: &DecodeResult, sent: &[Bit]) -> BlockStatus {
    BlockStatus {
        block,
        round,
        parity_ok: result.parity_ok,
        payload_ok: result.hard_bits[..sent.len()] == *sent,
        iterations: result.iterations_used,
        termination: result.termination,
    }
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub report: RunReport,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
}

#[derive(Serialize)]
struct SweepRow {
    snr_db: f64,
    blocks: usize,
    block_errors: usize,
    bler: f64,
    avg_iterations: f64,
}

impl SweepReport {
    /// One row per SNR point; contains no timing, so equal inputs give
    /// byte-identical output.
    pub fn to_csv(&self) -> Result<String> {
        let rows: Vec<SweepRow> = self
            .points
            .iter()
            .map(|p| SweepRow {
                snr_db: p.snr_db,
                blocks: p.report.blocks.len(),
                block_errors: p.report.block_errors(),
                bler: p.report.bler(),
                avg_iterations: p.report.avg_iterations(),
            })
            .collect();
        to_csv(&rows)
    }
}

/// Single-transmission block error rate at each SNR, `blocks` independent
/// code blocks per point. Blocks run in parallel; every block draws its
/// payload and noise from a seed derived from `(seed, point, block)`, so the
/// result does not depend on scheduling.
pub fn run_bler_sweep(cfg: &ChainConfig, snrs_db: &[f64], blocks: usize) -> Result<SweepReport> {
    let base = ChainPlan::new(&ChainConfig {
        codeblocks: 1,
        ..cfg.clone()
    })?;
    let mut points = Vec::with_capacity(snrs_db.len());
    for (i, &snr_db) in snrs_db.iter().enumerate() {
        let mut plan = base.clone();
        plan.config.snr_db = snr_db;
        plan.config.validate()?;
        let start = Instant::now();
        let statuses = (0..blocks)
            .into_par_iter()
            .map(|j| {
                let seed = derive_seed(cfg.seed, i as u64, j as u64);
                let payload = random_payload(plan.config.k_prime, seed);
                let tx = encode_chain(&plan, &payload, 0)?;
                let rx = channel(&plan, &tx.symbols, seed ^ 0xA5A5_A5A5);
                let llrs = estimate_llrs(&plan, &rx);
                let block = split_blocks(&plan, &llrs)?.pop().unwrap();
                let result = decode_block_uncombined(&plan, &block, 0)?;
                Ok(BlockStatus {
                    block: j,
                    ..status(0, 0, &result, &payload)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut report = RunReport::new(&plan.config);
        for s in statuses {
            report.push(s);
        }
        report.elapsed = start.elapsed();
        points.push(SweepPoint { snr_db, report });
    }
    Ok(SweepReport { points })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarqSimParams {
    pub pool_size: usize,
    pub processes: usize,
    /// Transmission opportunities; process `t % processes` owns slot `t`.
    pub slots: usize,
    pub slot_duration_us: f64,
}

impl Default for HarqSimParams {
    fn default() -> Self {
        HarqSimParams {
            pool_size: 16,
            processes: 16,
            slots: 256,
            slot_duration_us: 500.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarqSimReport {
    pub params: HarqSimParams,
    pub delivered_packets: usize,
    pub dropped_packets: usize,
    /// Decodes done without a soft buffer because the pool was full.
    pub uncombined_decodes: usize,
    pub report: RunReport,
}

#[derive(Serialize)]
struct HarqRow {
    pool_size: usize,
    processes: usize,
    slots: usize,
    delivered_packets: usize,
    dropped_packets: usize,
    uncombined_decodes: usize,
    delivered_bits: u64,
    bits_per_slot: f64,
    throughput_mbps: f64,
}

impl HarqSimReport {
    pub fn bits_per_slot(&self) -> f64 {
        self.report.delivered_bits as f64 / self.params.slots as f64
    }

    /// Delivered bits over simulated air time.
    pub fn throughput_mbps(&self) -> f64 {
        self.bits_per_slot() / self.params.slot_duration_us
    }

    pub fn to_csv(&self) -> Result<String> {
        to_csv(&[HarqRow {
            pool_size: self.params.pool_size,
            processes: self.params.processes,
            slots: self.params.slots,
            delivered_packets: self.delivered_packets,
            dropped_packets: self.dropped_packets,
            uncombined_decodes: self.uncombined_decodes,
            delivered_bits: self.report.delivered_bits,
            bits_per_slot: self.bits_per_slot(),
            throughput_mbps: self.throughput_mbps(),
        }])
    }
}

struct Packet {
    payload: Vec<Bit>,
    round: usize,
}

/// Round-robin HARQ traffic through a pool of `pool_size` soft buffers.
///
/// Each process sends a packet of `codeblocks` blocks and retransmits it
/// with the next redundancy version until it decodes or the schedule runs
/// out. A block that cannot get a buffer is decoded from the current
/// transmission alone. Channel noise depends only on `(seed, slot)`.
pub fn run_harq_sim(cfg: &ChainConfig, params: HarqSimParams) -> Result<HarqSimReport> {
    if params.processes == 0 || params.processes > u16::MAX as usize {
        return Err(Error::Config(format!("process count {} out of range", params.processes)));
    }
    let plan = ChainPlan::new(cfg)?;
    let mut pool = HarqBufferPool::with_slots(params.pool_size)?;
    let max_rounds = cfg.rv_schedule.len();
    let mut packets: Vec<Option<Packet>> = (0..params.processes).map(|_| None).collect();
    let mut packet_counter = vec![0u64; params.processes];
    let mut report = RunReport::new(cfg);
    let (mut delivered, mut dropped, mut uncombined) = (0, 0, 0);
    let start = Instant::now();

    for t in 0..params.slots {
        let p = t % params.processes;
        let packet = packets[p].get_or_insert_with(|| {
            packet_counter[p] += 1;
            Packet {
                payload: random_payload(plan.payload_len(), derive_seed(cfg.seed, p as u64, packet_counter[p])),
                round: 0,
            }
        });
        let round = packet.round;
        let tx = encode_chain(&plan, &packet.payload, round)?;
        let rx = channel(&plan, &tx.symbols, derive_seed(cfg.seed, u64::MAX, t as u64));
        let blocks = split_blocks(&plan, &estimate_llrs(&plan, &rx))?;

        let mut all_ok = true;
        for (b, llrs) in blocks.iter().enumerate() {
            let pid = ProcessId::with_block(p as u16, b as u16);
            let result = if pool.is_bound(pid) {
                let h = pool.acquire(pid, false, plan.buffer_dims())?;
                combine_and_decode(&plan, &mut pool.buffer_mut(h), llrs, round)?
            } else {
                match pool.acquire(pid, true, plan.buffer_dims()) {
                    Ok(h) => combine_and_decode(&plan, &mut pool.buffer_mut(h), llrs, round)?,
                    Err(Error::PoolExhausted(_)) => {
                        uncombined += 1;
                        decode_block_uncombined(&plan, llrs, round)?
                    }
                    Err(e) => return Err(e.at_block(b)),
                }
            };
            let k = cfg.k_prime;
            let s = status(b, round, &result, &packet.payload[b * k..(b + 1) * k]);
            all_ok &= s.payload_ok;
            report.push(s);
        }

        packet.round += 1;
        if all_ok || packet.round >= max_rounds {
            if all_ok {
                delivered += 1;
            } else {
                dropped += 1;
            }
            for b in 0..cfg.codeblocks {
                let pid = ProcessId::with_block(p as u16, b as u16);
                if pool.is_bound(pid) {
                    pool.release(pid)?;
                }
            }
            packets[p] = None;
        }
    }
    report.elapsed = start.elapsed();
    // only whole packets count as delivered
    report.delivered_bits = (delivered * plan.payload_len()) as u64;
    Ok(HarqSimReport {
        params,
        delivered_packets: delivered,
        dropped_packets: dropped,
        uncombined_decodes: uncombined,
        report,
    })
}
