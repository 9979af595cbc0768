use super::BaseGraphId;
use crate::{Error, Result};

/// Lifting sizes by set index (TS 38.212 Table 5.3.2-1): `a * 2^j <= 384`
/// for `a` in 2, 3, 5, 7, 9, 11, 13, 15.
pub const LIFTING_SIZES: [&[usize]; 8] = [
    &[2, 4, 8, 16, 32, 64, 128, 256],
    &[3, 6, 12, 24, 48, 96, 192, 384],
    &[5, 10, 20, 40, 80, 160, 320],
    &[7, 14, 28, 56, 112, 224],
    &[9, 18, 36, 72, 144, 288],
    &[11, 22, 44, 88, 176, 352],
    &[13, 26, 52, 104, 208],
    &[15, 30, 60, 120, 240],
];

pub fn lifting_set_index(zc: usize) -> Option<usize> {
    LIFTING_SIZES.iter().position(|set| set.contains(&zc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lifting {
    pub zc: usize,
    pub set_index: usize,
    /// Lifted information length.
    pub k: usize,
    /// Zero-padding `K - K'`.
    pub filler: usize,
}

/// Picks the smallest lifting size whose information length covers
/// `k_prime`.
pub fn select_lifting(bg: BaseGraphId, k_prime: usize) -> Result<Lifting> {
    if k_prime == 0 {
        return Err(Error::Config("segment length must be positive".into()));
    }
    if k_prime > bg.max_k() {
        return Err(Error::SegmentTooLong { k_prime, max: bg.max_k() });
    }
    let kb = bg.info_columns();
    let zc = LIFTING_SIZES
        .iter()
        .flat_map(|set| set.iter().copied())
        .filter(|&z| kb * z >= k_prime)
        .min()
        .expect("384 always covers the maximum");
    let k = kb * zc;
    Ok(Lifting {
        zc,
        set_index: lifting_set_index(zc).unwrap(),
        k,
        filler: k - k_prime,
    })
}
