use std::fmt::Write as _;
use std::str::FromStr;

use crate::ldpc::{choose_base_graph, BaseGraphId};
use crate::llr::ModulationOrder;
use crate::rate_adapt::RedundancyVersion;
use crate::scramble::ScramblingIdentity;
use crate::{Error, Result};

/// Everything one run of the chain needs.
///
/// Parsed from flat `key = value` text; `#` starts a comment. Keys not given
/// keep their [`Default`] values. `g`, if present, must equal
/// `e_r * codeblocks`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainConfig {
    /// Information bits per code block (`K'`).
    pub k_prime: usize,
    /// Rate-matched bits per code block.
    pub e_r: usize,
    pub modulation: ModulationOrder,
    /// `None` picks the graph from `K'` and the rate `K' / E_r`.
    pub base_graph: Option<BaseGraphId>,
    /// Redundancy version per transmission round, cycled.
    pub rv_schedule: Vec<RedundancyVersion>,
    pub identity: ScramblingIdentity,
    pub harq_id: u16,
    pub codeblocks: usize,
    /// Channel SNR; infinite means noiseless.
    pub snr_db: f64,
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for ChainConfig {
    /// One maximal BG1 block, QPSK at 10 dB.
    fn default() -> Self {
        ChainConfig {
            k_prime: 8448,
            e_r: 12672,
            modulation: ModulationOrder::Qpsk,
            base_graph: None,
            rv_schedule: [0, 2, 3, 1].map(|v| RedundancyVersion::new(v).unwrap()).to_vec(),
            identity: ScramblingIdentity::new(0x4601, 0, 1).unwrap(),
            harq_id: 0,
            codeblocks: 1,
            snr_db: 10.0,
            seed: 1,
            max_iterations: 8,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    let v = value.trim();
    let parsed = if let Some(hex) = v.strip_prefix("0x") {
        u64::from_str_radix(hex, 16)
            .ok()
            .and_then(|n| n.to_string().parse().ok())
    } else {
        v.parse().ok()
    };
    parsed.ok_or_else(|| Error::Config(format!("bad value for {key}: {value:?}")))
}

impl ChainConfig {
    /// Total bits over the air, `E_r * C`.
    pub fn g(&self) -> usize {
        self.e_r * self.codeblocks
    }

    pub fn resolved_base_graph(&self) -> BaseGraphId {
        self.base_graph
            .unwrap_or_else(|| choose_base_graph(self.k_prime, self.k_prime as f64 / self.e_r as f64))
    }

    pub fn rv_for_round(&self, round: usize) -> RedundancyVersion {
        self.rv_schedule[round % self.rv_schedule.len()]
    }

    pub fn is_noiseless(&self) -> bool {
        self.snr_db == f64::INFINITY
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let bg = self.resolved_base_graph();
        if self.k_prime == 0 || self.k_prime > bg.max_k() {
            return bad(format!("k_prime {} is not in 1..={} for {bg}", self.k_prime, bg.max_k()));
        }
        let q_m = self.modulation.bits();
        if self.e_r == 0 || !self.e_r.is_multiple_of(q_m) {
            return Err(Error::NotMultipleOfModulationOrder { len: self.e_r, q_m });
        }
        if self.rv_schedule.is_empty() {
            return bad("rv schedule is empty".into());
        }
        if self.codeblocks == 0 || self.codeblocks > u16::MAX as usize {
            return bad(format!("codeblocks {} out of range", self.codeblocks));
        }
        if self.max_iterations == 0 {
            return bad("max_iter must be at least 1".into());
        }
        if self.snr_db.is_nan() || self.snr_db == f64::NEG_INFINITY {
            return bad(format!("snr_db {} is not usable", self.snr_db));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<ChainConfig> {
        let mut cfg = ChainConfig::default();
        let mut g = None;
        let (mut rnti, mut q, mut cell_id) = (cfg.identity.rnti(), cfg.identity.codeword(), cfg.identity.cell_id());
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "k_prime" => cfg.k_prime = parse_num(key, value)?,
                "e_r" => cfg.e_r = parse_num(key, value)?,
                "g" => g = Some(parse_num::<usize>(key, value)?),
                "q_m" => cfg.modulation = ModulationOrder::from_bits(parse_num(key, value)?)?,
                "rv" => {
                    cfg.rv_schedule = value
                        .split(',')
                        .map(|v| RedundancyVersion::new(parse_num(key, v)?))
                        .collect::<Result<_>>()?
                }
                "rnti" => rnti = parse_num(key, value)?,
                "q" => q = parse_num(key, value)?,
                "cell_id" => cell_id = parse_num(key, value)?,
                "harq_id" => cfg.harq_id = parse_num(key, value)?,
                "codeblocks" => cfg.codeblocks = parse_num(key, value)?,
                "snr_db" => {
                    cfg.snr_db = match value {
                        "inf" | "noiseless" => f64::INFINITY,
                        _ => parse_num(key, value)?,
                    }
                }
                "seed" => cfg.seed = parse_num(key, value)?,
                "max_iter" => cfg.max_iterations = parse_num(key, value)?,
                "base_graph" => {
                    cfg.base_graph = match value {
                        "auto" => None,
                        "1" | "BG1" => Some(BaseGraphId::BG1),
                        "2" | "BG2" => Some(BaseGraphId::BG2),
                        _ => return Err(Error::Config(format!("bad value for base_graph: {value:?}"))),
                    }
                }
                _ => return Err(Error::Config(format!("unknown key {key:?}"))),
            }
        }
        cfg.identity = ScramblingIdentity::new(rnti, q, cell_id)?;
        cfg.validate()?;
        if let Some(g) = g {
            if g != cfg.g() {
                return Err(Error::Config(format!(
                    "g = {g} does not equal e_r * codeblocks = {}",
                    cfg.g()
                )));
            }
        }
        Ok(cfg)
    }

    /// Renders the config in the format [`ChainConfig::parse`] reads.
    pub fn to_text(&self) -> String {
        let rv: Vec<String> = self.rv_schedule.iter().map(|r| r.get().to_string()).collect();
        let bg = match self.base_graph {
            None => "auto",
            Some(BaseGraphId::BG1) => "1",
            Some(BaseGraphId::BG2) => "2",
        };
        let snr = if self.is_noiseless() { "inf".to_string() } else { self.snr_db.to_string() };
        let mut s = String::new();
        let _ = writeln!(s, "k_prime = {}", self.k_prime);
        let _ = writeln!(s, "e_r = {}", self.e_r);
        let _ = writeln!(s, "g = {}", self.g());
        let _ = writeln!(s, "q_m = {}", self.modulation.bits());
        let _ = writeln!(s, "rv = {}", rv.join(","));
        let _ = writeln!(s, "rnti = {}", self.identity.rnti());
        let _ = writeln!(s, "q = {}", self.identity.codeword());
        let _ = writeln!(s, "cell_id = {}", self.identity.cell_id());
        let _ = writeln!(s, "harq_id = {}", self.harq_id);
        let _ = writeln!(s, "codeblocks = {}", self.codeblocks);
        let _ = writeln!(s, "snr_db = {snr}");
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "max_iter = {}", self.max_iterations);
        let _ = writeln!(s, "base_graph = {bg}");
        s
    }
}

impl FromStr for ChainConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChainConfig> {
        ChainConfig::parse(s)
    }
}
