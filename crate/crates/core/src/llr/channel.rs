use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::EqualizedSymbol;

/// Noise variance per complex symbol for a unit-energy constellation at the
/// given Es/N0 in dB. An infinite SNR gives zero.
pub fn sigma2_from_snr_db(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// Adds circular complex Gaussian noise of total variance `sigma2`
/// (`sigma2 / 2` per real component). The result is saturated back into the
/// Q3.12 symbol format. Deterministic for a given seed.
pub fn awgn(symbols: &[EqualizedSymbol], sigma2: f64, seed: u64) -> Vec<EqualizedSymbol> {
    assert!(sigma2 >= 0.0, "noise variance must be non-negative");
    if sigma2 == 0.0 {
        return symbols.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, (sigma2 / 2.0).sqrt()).expect("finite standard deviation");
    symbols
        .iter()
        .map(|s| {
            let re = s.re_f64() + normal.sample(&mut rng);
            let im = s.im_f64() + normal.sample(&mut rng);
            EqualizedSymbol::from_f64(re, im)
        })
        .collect()
}
