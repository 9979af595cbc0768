use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ChainConfig;
use crate::audit::audit_llrs;
use crate::ldpc::{build_code, ldpc_decode, ldpc_encode, select_lifting, DecodeResult, DecoderOptions, InfoBlock};
use crate::ldpc::LiftedLdpcCode;
use crate::llr::{
    llr_estimate, modulate, pack_bit_words, sigma2_from_snr_db, DemapperParams, EqualizedSymbol,
    PackedWordStream, SoftLlr,
};
use crate::rate_adapt::{
    deinterleave, filler_range, interleave, materialize_decoder_input, rate_match, rate_unmatch_combine,
    BufferDims, HarqBufferPool, ProcessId, RateMatchConfig, SoftBuffer,
};
use crate::scramble::{descramble_llrs, scramble_bits};
use crate::{Bit, Error, Result};

/// A validated config with its lifted code built.
#[derive(Clone, Debug)]
pub struct ChainPlan {
    pub config: ChainConfig,
    pub code: LiftedLdpcCode,
    pub filler: Range<usize>,
}

impl ChainPlan {
    pub fn new(config: &ChainConfig) -> Result<ChainPlan> {
        config.validate()?;
        let bg = config.resolved_base_graph();
        let lifting = select_lifting(bg, config.k_prime)?;
        let code = build_code(bg, lifting.zc)?;
        let filler = filler_range(&code, config.k_prime);
        Ok(ChainPlan {
            config: config.clone(),
            code,
            filler,
        })
    }

    /// Payload bits per transmission, `K' * C`.
    pub fn payload_len(&self) -> usize {
        self.config.k_prime * self.config.codeblocks
    }

    pub fn rate_match_config(&self, round: usize) -> Result<RateMatchConfig> {
        RateMatchConfig::new(self.config.e_r, self.config.rv_for_round(round), self.config.modulation)
    }

    pub fn demapper(&self) -> DemapperParams {
        let sigma2 = if self.config.is_noiseless() { 0.0 } else { sigma2_from_snr_db(self.config.snr_db) };
        DemapperParams::new(self.config.modulation, sigma2)
    }

    pub fn decoder_options(&self) -> DecoderOptions {
        DecoderOptions {
            max_iterations: self.config.max_iterations,
            ..DecoderOptions::default()
        }
    }

    pub fn process_id(&self, block: usize) -> ProcessId {
        ProcessId::with_block(self.config.harq_id, block as u16)
    }

    pub fn buffer_dims(&self) -> BufferDims {
        BufferDims::new(&self.code, self.filler.clone())
    }
}

pub fn random_payload(len: usize, seed: u64) -> Vec<Bit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random_range(0..=1)).collect()
}

#[derive(Clone, Debug)]
pub struct EncodedTransmission {
    pub symbols: Vec<EqualizedSymbol>,
    /// The `G` scrambled bits as they enter the modulator.
    pub scrambled: PackedWordStream,
}

/// Encodes `payload` (`K' * C` bits) for transmission round `round`.
pub fn encode_chain(plan: &ChainPlan, payload: &[Bit], round: usize) -> Result<EncodedTransmission> {
    let cfg = &plan.config;
    if payload.len() != plan.payload_len() {
        return Err(Error::LengthMismatch {
            expected: plan.payload_len(),
            actual: payload.len(),
        });
    }
    let rm = plan.rate_match_config(round)?;
    let q_m = cfg.modulation.bits();
    let mut bits = Vec::with_capacity(cfg.g());
    for (b, segment) in payload.chunks(cfg.k_prime).enumerate() {
        let block = || -> Result<Vec<Bit>> {
            let info = InfoBlock::new(segment, plan.code.k())?;
            let cw = ldpc_encode(&plan.code, &info)?;
            interleave(&rate_match(&cw, &plan.filler, &rm), q_m)
        };
        bits.extend(block().map_err(|e| e.at_block(b))?);
    }
    let scrambled = scramble_bits(&bits, &cfg.identity);
    let symbols = modulate(&scrambled, cfg.modulation)?;
    Ok(EncodedTransmission {
        symbols,
        scrambled: pack_bit_words(&scrambled),
    })
}

/// Demaps received symbols to `G` soft bits.
pub fn estimate_llrs(plan: &ChainPlan, symbols: &[EqualizedSymbol]) -> Vec<SoftLlr> {
    let llrs = llr_estimate(symbols, &plan.demapper());
    audit_llrs(&llrs);
    llrs
}

/// What to do with a block's HARQ buffer after decoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReleasePolicy {
    pub release_on_success: bool,
    /// Release after this many rounds regardless of outcome.
    pub max_rounds: usize,
}

impl ReleasePolicy {
    pub fn for_config(cfg: &ChainConfig) -> ReleasePolicy {
        ReleasePolicy {
            release_on_success: true,
            max_rounds: cfg.rv_schedule.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOutcome {
    pub result: DecodeResult,
    /// The first `K'` decoded bits.
    pub payload: Vec<Bit>,
    /// Pool slot used, or `None` when decoded without a HARQ buffer.
    pub slot: Option<usize>,
}

/// Combines one block's deinterleaved soft bits into `buffer` and decodes.
pub(crate) fn combine_and_decode(
    plan: &ChainPlan,
    buffer: &mut SoftBuffer<'_>,
    llrs: &[SoftLlr],
    round: usize,
) -> Result<DecodeResult> {
    rate_unmatch_combine(buffer, llrs, &plan.rate_match_config(round)?, &plan.code)?;
    audit_llrs(buffer.llrs);
    let input = materialize_decoder_input(buffer, &plan.code);
    audit_llrs(&input);
    ldpc_decode(&plan.code, &input, &plan.decoder_options())
}

/// Decodes a block from a single transmission, without touching a pool.
pub(crate) fn decode_block_uncombined(plan: &ChainPlan, llrs: &[SoftLlr], round: usize) -> Result<DecodeResult> {
    let mut scratch = vec![SoftLlr::ZERO; plan.code.n_cb()];
    let mut buffer = SoftBuffer {
        llrs: &mut scratch,
        filler: plan.filler.clone(),
    };
    combine_and_decode(plan, &mut buffer, llrs, round)
}

/// Splits the descrambled stream into per-block deinterleaved soft bits.
pub(crate) fn split_blocks(plan: &ChainPlan, llrs: &[SoftLlr]) -> Result<Vec<Vec<SoftLlr>>> {
    let cfg = &plan.config;
    if llrs.len() != cfg.g() {
        return Err(Error::LengthMismatch {
            expected: cfg.g(),
            actual: llrs.len(),
        });
    }
    let descrambled = descramble_llrs(llrs, &cfg.identity);
    audit_llrs(&descrambled);
    descrambled
        .chunks(cfg.e_r)
        .enumerate()
        .map(|(b, chunk)| deinterleave(chunk, cfg.modulation.bits()).map_err(|e| e.at_block(b)))
        .collect()
}

/// Decodes `G` received soft bits for round `round`, combining each block
/// with its HARQ buffer. Round 0 starts new packets.
pub fn decode_llrs(
    plan: &ChainPlan,
    llrs: &[SoftLlr],
    pool: &mut HarqBufferPool,
    round: usize,
    policy: ReleasePolicy,
) -> Result<Vec<BlockOutcome>> {
    let blocks = split_blocks(plan, llrs)?;
    let k_prime = plan.config.k_prime;
    let mut out = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        let run = |pool: &mut HarqBufferPool| -> Result<BlockOutcome> {
            let pid = plan.process_id(b);
            let handle = pool.acquire(pid, round == 0, plan.buffer_dims())?;
            let result = combine_and_decode(plan, &mut pool.buffer_mut(handle), block, round)?;
            if (policy.release_on_success && result.parity_ok) || round + 1 >= policy.max_rounds {
                pool.release(pid)?;
            }
            Ok(BlockOutcome {
                payload: result.hard_bits[..k_prime].to_vec(),
                result,
                slot: Some(handle.index()),
            })
        };
        out.push(run(pool).map_err(|e| e.at_block(b))?);
    }
    Ok(out)
}

/// Full receive path: demapping then [`decode_llrs`].
pub fn decode_chain(
    plan: &ChainPlan,
    symbols: &[EqualizedSymbol],
    pool: &mut HarqBufferPool,
    round: usize,
    policy: ReleasePolicy,
) -> Result<Vec<BlockOutcome>> {
    let llrs = estimate_llrs(plan, symbols);
    decode_llrs(plan, &llrs, pool, round, policy)
}
