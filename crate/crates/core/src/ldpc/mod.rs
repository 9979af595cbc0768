//! 5G NR quasi-cyclic LDPC codes: base graphs, lifting, encoding, parity
//! checking and layered offset min-sum decoding.

mod code;
mod decode;
mod encode;
mod lifting;
mod table;

pub use code::{build_code, Edge, LiftedLdpcCode};
pub use decode::{check_node_update, ldpc_decode, DecodeResult, DecoderOptions, Termination};
pub use encode::{ldpc_encode, parity_check, Codeword, InfoBlock};
pub use lifting::{lifting_set_index, select_lifting, Lifting, LIFTING_SIZES};
pub use table::{BaseGraphTable, TABLE_DIR_ENV};

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseGraphId {
    BG1,
    BG2,
}

impl BaseGraphId {
    /// Systematic base-graph columns (`K = info_columns * Zc`).
    pub fn info_columns(self) -> usize {
        match self {
            BaseGraphId::BG1 => 22,
            BaseGraphId::BG2 => 10,
        }
    }

    /// Total base-graph columns (`N_full = columns * Zc`).
    pub fn columns(self) -> usize {
        match self {
            BaseGraphId::BG1 => 68,
            BaseGraphId::BG2 => 52,
        }
    }

    pub fn rows(self) -> usize {
        self.columns() - self.info_columns()
    }

    /// Largest segment length the base graph can carry.
    pub fn max_k(self) -> usize {
        self.info_columns() * 384
    }
}

impl fmt::Display for BaseGraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGraphId::BG1 => f.write_str("BG1"),
            BaseGraphId::BG2 => f.write_str("BG2"),
        }
    }
}

/// Base graph selection from payload size and target code rate
/// (TS 38.212 section 7.2.2).
pub fn choose_base_graph(payload_length: usize, target_rate: f64) -> BaseGraphId {
    if payload_length <= 292
        || (payload_length <= 3824 && target_rate <= 0.67)
        || target_rate <= 0.25
    {
        BaseGraphId::BG2
    } else {
        BaseGraphId::BG1
    }
}
