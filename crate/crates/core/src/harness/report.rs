use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use super::ChainConfig;
use crate::ldpc::Termination;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStatus {
    pub block: usize,
    pub round: usize,
    pub parity_ok: bool,
    /// Decoded payload equals what was sent.
    pub payload_ok: bool,
    pub iterations: usize,
    pub termination: Termination,
}

/// Per-block outcomes and aggregate figures for one run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub config: ChainConfig,
    pub blocks: Vec<BlockStatus>,
    /// Index `i` counts blocks that stopped after `i` iterations.
    pub iteration_histogram: Vec<u64>,
    /// Information bits delivered without error.
    pub delivered_bits: u64,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(config: &ChainConfig) -> RunReport {
        RunReport {
            config: config.clone(),
            blocks: Vec::new(),
            iteration_histogram: vec![0; config.max_iterations + 1],
            delivered_bits: 0,
            elapsed: Duration::ZERO,
        }
    }

    pub fn push(&mut self, status: BlockStatus) {
        if status.iterations >= self.iteration_histogram.len() {
            self.iteration_histogram.resize(status.iterations + 1, 0);
        }
        self.iteration_histogram[status.iterations] += 1;
        if status.payload_ok {
            self.delivered_bits += self.config.k_prime as u64;
        }
        self.blocks.push(status);
    }

    pub fn block_errors(&self) -> usize {
        self.blocks.iter().filter(|b| !b.payload_ok).count()
    }

    pub fn bler(&self) -> f64 {
        if self.blocks.is_empty() {
            return 0.0;
        }
        self.block_errors() as f64 / self.blocks.len() as f64
    }

    pub fn avg_iterations(&self) -> f64 {
        if self.blocks.is_empty() {
            return 0.0;
        }
        self.blocks.iter().map(|b| b.iterations as f64).sum::<f64>() / self.blocks.len() as f64
    }

    /// Delivered information bits per wall-clock second, in Mbit/s.
    pub fn throughput_mbps(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs == 0.0 {
            return 0.0;
        }
        self.delivered_bits as f64 / secs / 1e6
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "blocks: {}", self.blocks.len());
        let _ = writeln!(s, "block errors: {}", self.block_errors());
        let _ = writeln!(s, "bler: {:.4e}", self.bler());
        let _ = writeln!(s, "avg iterations: {:.3}", self.avg_iterations());
        let hist: Vec<String> = self
            .iteration_histogram
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, n)| format!("{i}:{n}"))
            .collect();
        let _ = writeln!(s, "iterations histogram: {}", hist.join(" "));
        let _ = writeln!(s, "elapsed: {:.3} ms", self.elapsed.as_secs_f64() * 1e3);
        let _ = writeln!(s, "throughput: {:.1} Mbps", self.throughput_mbps());
        s
    }
}

pub(crate) fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Format(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}
