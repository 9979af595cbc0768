//! Length-31 Gold sequence generation and (de)scrambling.
//!
//! The sequence is `c(n) = x1(n + 1600) ^ x2(n + 1600)` with
//! `x1(n+31) = x1(n+3) ^ x1(n)` and
//! `x2(n+31) = x2(n+3) ^ x2(n+2) ^ x2(n+1) ^ x2(n)`. `x1` always starts from
//! a single one; `x2` is loaded with `c_init`.

use crate::llr::SoftLlr;
use crate::{Bit, Error, Result};

const WARM_UP: u32 = 1600;
const REG_MASK: u32 = 0x7FFF_FFFF;

/// Radio network temporary identifier, codeword index and cell identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScramblingIdentity {
    rnti: u16,
    codeword: u8,
    cell_id: u16,
}

impl ScramblingIdentity {
    pub const MAX_CELL_ID: u16 = 1007;

    pub fn new(rnti: u16, codeword: u8, cell_id: u16) -> Result<ScramblingIdentity> {
        if codeword > 1 {
            return Err(Error::Config(format!("codeword index {codeword} must be 0 or 1")));
        }
        if cell_id > Self::MAX_CELL_ID {
            return Err(Error::Config(format!("cell id {cell_id} exceeds {}", Self::MAX_CELL_ID)));
        }
        Ok(ScramblingIdentity { rnti, codeword, cell_id })
    }

    pub fn rnti(&self) -> u16 {
        self.rnti
    }

    pub fn codeword(&self) -> u8 {
        self.codeword
    }

    pub fn cell_id(&self) -> u16 {
        self.cell_id
    }

    /// `rnti * 2^15 + q * 2^14 + cell_id`.
    pub fn c_init(&self) -> u32 {
        ((self.rnti as u32) << 15) | ((self.codeword as u32) << 14) | self.cell_id as u32
    }
}

/// Generator state: two 31-bit windows holding `x(n) .. x(n+30)` with
/// `x(n)` in bit 0, where `n = position + 1600`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldState {
    x1: u32,
    x2: u32,
    position: u64,
}

impl GoldState {
    pub fn from_c_init(c_init: u32) -> GoldState {
        let mut state = GoldState {
            x1: 1,
            x2: c_init & REG_MASK,
            position: 0,
        };
        let mut remaining = WARM_UP;
        while remaining > 0 {
            let k = remaining.min(28);
            state.shift(k);
            remaining -= k;
        }
        state.position = 0;
        state
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// Advances both registers by `k <= 28` steps and returns the `k`
    /// sequence bits that were at the head, LSB first.
    #[inline]
    fn shift(&mut self, k: u32) -> u32 {
        debug_assert!((1..=28).contains(&k));
        let mask = (1u32 << k) - 1;
        let out = (self.x1 ^ self.x2) & mask;
        let n1 = (self.x1 ^ (self.x1 >> 3)) & mask;
        let n2 = (self.x2 ^ (self.x2 >> 1) ^ (self.x2 >> 2) ^ (self.x2 >> 3)) & mask;
        self.x1 = (self.x1 >> k) | (n1 << (31 - k));
        self.x2 = (self.x2 >> k) | (n2 << (31 - k));
        self.position += k as u64;
        out
    }

    /// Next 32 sequence bits, LSB first.
    pub fn next_word(&mut self) -> u32 {
        let lo = self.shift(16);
        let hi = self.shift(16);
        lo | (hi << 16)
    }
}

pub fn gold_init(identity: &ScramblingIdentity) -> GoldState {
    GoldState::from_c_init(identity.c_init())
}

/// Returns the next 32 bits of the sequence and the advanced state.
pub fn gold_next_word(state: GoldState) -> (u32, GoldState) {
    let mut next = state;
    let word = next.next_word();
    (word, next)
}

/// The first `len` sequence bits for `identity`.
pub fn gold_sequence(identity: &ScramblingIdentity, len: usize) -> Vec<Bit> {
    let mut state = gold_init(identity);
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let w = state.next_word();
        let take = (len - out.len()).min(32);
        out.extend((0..take).map(|i| ((w >> i) & 1) as Bit));
    }
    out
}

/// XORs `bits` with the Gold sequence, one 32-bit segment at a time.
pub fn scramble_bits(bits: &[Bit], identity: &ScramblingIdentity) -> Vec<Bit> {
    let mut state = gold_init(identity);
    let mut out = Vec::with_capacity(bits.len());
    for chunk in bits.chunks(32) {
        let w = state.next_word();
        out.extend(chunk.iter().enumerate().map(|(i, &b)| b ^ ((w >> i) & 1) as Bit));
    }
    out
}

/// Negates every LLR whose sequence bit is 1. Magnitudes are unchanged.
pub fn descramble_llrs(llrs: &[SoftLlr], identity: &ScramblingIdentity) -> Vec<SoftLlr> {
    let mut state = gold_init(identity);
    let mut out = Vec::with_capacity(llrs.len());
    for chunk in llrs.chunks(32) {
        let w = state.next_word();
        out.extend(
            chunk
                .iter()
                .enumerate()
                .map(|(i, &l)| if (w >> i) & 1 == 1 { -l } else { l }),
        );
    }
    out
}
