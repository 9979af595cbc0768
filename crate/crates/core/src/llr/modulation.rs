use std::fmt;

use super::EqualizedSymbol;
use crate::{Bit, Error, Result};

/// Modulation order `Q_m`: bits per QAM symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModulationOrder {
    Qpsk,
    Qam16,
    Qam64,
    Qam256,
}

impl ModulationOrder {
    pub const ALL: [ModulationOrder; 4] = [
        ModulationOrder::Qpsk,
        ModulationOrder::Qam16,
        ModulationOrder::Qam64,
        ModulationOrder::Qam256,
    ];

    pub fn from_bits(q_m: usize) -> Result<ModulationOrder> {
        match q_m {
            2 => Ok(ModulationOrder::Qpsk),
            4 => Ok(ModulationOrder::Qam16),
            6 => Ok(ModulationOrder::Qam64),
            8 => Ok(ModulationOrder::Qam256),
            _ => Err(Error::Config(format!("unsupported modulation order {q_m}"))),
        }
    }

    #[inline]
    pub fn bits(self) -> usize {
        match self {
            ModulationOrder::Qpsk => 2,
            ModulationOrder::Qam16 => 4,
            ModulationOrder::Qam64 => 6,
            ModulationOrder::Qam256 => 8,
        }
    }

    /// Average energy of the odd-integer grid before normalization.
    pub(crate) fn energy(self) -> f64 {
        match self {
            ModulationOrder::Qpsk => 2.0,
            ModulationOrder::Qam16 => 10.0,
            ModulationOrder::Qam64 => 42.0,
            ModulationOrder::Qam256 => 170.0,
        }
    }
}

impl fmt::Display for ModulationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModulationOrder::Qpsk => "QPSK",
            ModulationOrder::Qam16 => "16QAM",
            ModulationOrder::Qam64 => "64QAM",
            ModulationOrder::Qam256 => "256QAM",
        };
        f.write_str(name)
    }
}

/// Integer PAM amplitude of one axis. `bits[0]` selects the sign, the rest
/// the nested Gray levels (TS 38.211 section 5.1).
fn pam_level(bits: &[Bit]) -> i32 {
    let m = bits.len();
    let mut t = 1i32;
    for j in (1..m).rev() {
        t = (1 << (m - j)) - (1 - 2 * bits[j] as i32) * t;
    }
    (1 - 2 * bits[0] as i32) * t
}

/// Maps one group of `Q_m` bits to a unit-energy constellation point.
/// Even-indexed bits drive the in-phase axis, odd-indexed the quadrature.
pub(crate) fn map_group(group: &[Bit], order: ModulationOrder) -> (f64, f64) {
    let mut i_bits = [0; 4];
    let mut q_bits = [0; 4];
    let half = group.len() / 2;
    for k in 0..half {
        i_bits[k] = group[2 * k];
        q_bits[k] = group[2 * k + 1];
    }
    let norm = order.energy().sqrt();
    (
        pam_level(&i_bits[..half]) as f64 / norm,
        pam_level(&q_bits[..half]) as f64 / norm,
    )
}

/// All `2^Q_m` constellation points, indexed by the bit group read
/// MSB-first as `b_0 b_1 ... b_{Q_m-1}`.
pub fn constellation(order: ModulationOrder) -> Vec<(f64, f64)> {
    let q = order.bits();
    (0..1usize << q)
        .map(|label| {
            let group: Vec<Bit> = (0..q).map(|k| ((label >> (q - 1 - k)) & 1) as Bit).collect();
            map_group(&group, order)
        })
        .collect()
}

/// Gray-maps `bits` onto QAM symbols in the Q3.12 symbol format.
pub fn modulate(bits: &[Bit], order: ModulationOrder) -> Result<Vec<EqualizedSymbol>> {
    let q = order.bits();
    if !bits.len().is_multiple_of(q) {
        return Err(Error::NotMultipleOfModulationOrder { len: bits.len(), q_m: q });
    }
    Ok(bits
        .chunks_exact(q)
        .map(|group| {
            let (re, im) = map_group(group, order);
            EqualizedSymbol::from_f64(re, im)
        })
        .collect())
}
