use std::ops::Range;

use crate::ldpc::{BaseGraphId, Codeword, LiftedLdpcCode};
use crate::llr::{ModulationOrder, SoftLlr};
use crate::{Bit, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RedundancyVersion(u8);

impl RedundancyVersion {
    pub const RV0: RedundancyVersion = RedundancyVersion(0);

    pub fn new(rv: u8) -> Result<RedundancyVersion> {
        if rv > 3 {
            return Err(Error::Config(format!("redundancy version {rv} is not in 0..=3")));
        }
        Ok(RedundancyVersion(rv))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// Per-transmission rate matching parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RateMatchConfig {
    e_r: usize,
    rv: RedundancyVersion,
    order: ModulationOrder,
}

impl RateMatchConfig {
    pub fn new(e_r: usize, rv: RedundancyVersion, order: ModulationOrder) -> Result<RateMatchConfig> {
        if e_r == 0 {
            return Err(Error::Config("E_r must be positive".into()));
        }
        if !e_r.is_multiple_of(order.bits()) {
            return Err(Error::NotMultipleOfModulationOrder { len: e_r, q_m: order.bits() });
        }
        Ok(RateMatchConfig { e_r, rv, order })
    }

    pub fn e_r(&self) -> usize {
        self.e_r
    }

    pub fn rv(&self) -> RedundancyVersion {
        self.rv
    }

    pub fn order(&self) -> ModulationOrder {
        self.order
    }
}

/// Start offset in the circular buffer for a redundancy version
/// (TS 38.212 Table 5.4.2.1-2, full-buffer case).
pub fn k0_start(code: &LiftedLdpcCode, rv: RedundancyVersion) -> usize {
    let (num, den) = match (code.bg(), rv.0) {
        (_, 0) => return 0,
        (BaseGraphId::BG1, 1) => (17, 66),
        (BaseGraphId::BG1, 2) => (33, 66),
        (BaseGraphId::BG1, _) => (56, 66),
        (BaseGraphId::BG2, 1) => (13, 50),
        (BaseGraphId::BG2, 2) => (25, 50),
        (BaseGraphId::BG2, _) => (43, 50),
    };
    let zc = code.zc();
    (num * code.n_cb() / (den * zc)) * zc
}

/// Filler positions in circular-buffer coordinates for a `k_prime`-bit
/// segment. Fillers that fall in the punctured columns are not part of the
/// buffer.
pub fn filler_range(code: &LiftedLdpcCode, k_prime: usize) -> Range<usize> {
    let p = 2 * code.zc();
    k_prime.max(p) - p..code.k() - p
}

/// Buffer indices read for one transmission: circular from `k0`, skipping
/// fillers, wrapping as often as needed.
fn selected_positions(n_cb: usize, k0: usize, filler: &Range<usize>, e_r: usize) -> impl Iterator<Item = usize> + '_ {
    (0..)
        .map(move |j| (k0 + j) % n_cb)
        .filter(move |p| !filler.contains(p))
        .take(e_r)
}

/// Reads `E_r` bits out of the circular buffer, which holds codeword bits
/// `2Zc..N_full`.
pub fn rate_match(codeword: &Codeword<'_>, filler: &Range<usize>, cfg: &RateMatchConfig) -> Vec<Bit> {
    let code = codeword.code;
    let buffer = &codeword.bits[2 * code.zc()..];
    assert!(filler.len() < code.n_cb(), "buffer holds nothing but fillers");
    selected_positions(code.n_cb(), k0_start(code, cfg.rv), filler, cfg.e_r)
        .map(|p| buffer[p])
        .collect()
}

/// A circular soft buffer of `N_cb` LLRs.
#[derive(Debug)]
pub struct SoftBuffer<'a> {
    pub llrs: &'a mut [SoftLlr],
    pub filler: Range<usize>,
}

/// Scatters received LLRs back to their buffer positions, adding to what
/// earlier transmissions left there. Repeated positions accumulate, in
/// arrival order, with saturation.
pub fn rate_unmatch_combine(
    buffer: &mut SoftBuffer<'_>,
    llrs: &[SoftLlr],
    cfg: &RateMatchConfig,
    code: &LiftedLdpcCode,
) -> Result<()> {
    if buffer.llrs.len() != code.n_cb() {
        return Err(Error::LengthMismatch { expected: code.n_cb(), actual: buffer.llrs.len() });
    }
    if llrs.len() != cfg.e_r {
        return Err(Error::LengthMismatch { expected: cfg.e_r, actual: llrs.len() });
    }
    let positions = selected_positions(code.n_cb(), k0_start(code, cfg.rv), &buffer.filler, cfg.e_r);
    for (p, &l) in positions.zip(llrs) {
        buffer.llrs[p] = buffer.llrs[p].saturating_add(l);
    }
    Ok(())
}

/// Expands a soft buffer to the `N_full` decoder input: zeros for the
/// punctured columns and the minimum LLR (a certain 0) for fillers.
pub fn materialize_decoder_input(buffer: &SoftBuffer<'_>, code: &LiftedLdpcCode) -> Vec<SoftLlr> {
    let p = 2 * code.zc();
    let mut out = Vec::with_capacity(code.n_full());
    out.resize(p, SoftLlr::ZERO);
    out.extend_from_slice(buffer.llrs);
    for l in &mut out[buffer.filler.start + p..buffer.filler.end + p] {
        *l = SoftLlr::MIN;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::{build_code, ldpc_encode, InfoBlock};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rv(v: u8) -> RedundancyVersion {
        RedundancyVersion::new(v).unwrap()
    }

    fn cfg(e_r: usize, v: u8) -> RateMatchConfig {
        RateMatchConfig::new(e_r, rv(v), ModulationOrder::Qpsk).unwrap()
    }

    fn encode_random<'a>(code: &'a LiftedLdpcCode, k_prime: usize, seed: u64) -> Codeword<'a> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seg: Vec<Bit> = (0..k_prime).map(|_| rng.random_range(0..2)).collect();
        ldpc_encode(code, &InfoBlock::new(&seg, code.k()).unwrap()).unwrap()
    }

    /// Buffer positions by list slicing: the non-filler indices rotated to
    /// start at `k0`, repeated until `e_r` are taken.
    fn oracle_positions(n_cb: usize, k0: usize, filler: &Range<usize>, e_r: usize) -> Vec<usize> {
        let order: Vec<usize> = [&(k0..n_cb).collect::<Vec<_>>()[..], &(0..k0).collect::<Vec<_>>()[..]].concat();
        let order: Vec<usize> = order.into_iter().filter(|p| !filler.contains(p)).collect();
        order.iter().cycle().take(e_r).copied().collect()
    }

    #[test]
    fn k0_positions() {
        let bg1 = build_code(BaseGraphId::BG1, 384).unwrap();
        assert_eq!(k0_start(&bg1, rv(0)), 0);
        assert_eq!(k0_start(&bg1, rv(1)), 17 * 384);
        assert_eq!(k0_start(&bg1, rv(2)), 12672);
        assert_eq!(k0_start(&bg1, rv(3)), 56 * 384);
        let bg2 = build_code(BaseGraphId::BG2, 2).unwrap();
        assert_eq!(k0_start(&bg2, rv(3)), 86);
        assert_eq!(k0_start(&bg2, rv(1)), 26);
        assert_eq!(k0_start(&bg2, rv(2)), 50);
        assert!(RedundancyVersion::new(4).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RateMatchConfig::new(0, rv(0), ModulationOrder::Qpsk).is_err());
        assert!(RateMatchConfig::new(10, rv(0), ModulationOrder::Qam16).is_err());
        assert!(RateMatchConfig::new(12, rv(0), ModulationOrder::Qam16).is_ok());
    }

    #[test]
    fn identity_read() {
        let code = build_code(BaseGraphId::BG2, 8).unwrap();
        let cw = encode_random(&code, code.k(), 1);
        let filler = filler_range(&code, code.k());
        assert!(filler.is_empty());
        let e = rate_match(&cw, &filler, &cfg(code.n_cb(), 0));
        assert_eq!(e, cw.bits[16..].to_vec());
    }

    #[test]
    fn full_wrap_repeats_non_filler_content() {
        let code = build_code(BaseGraphId::BG2, 8).unwrap();
        let k_prime = 70;
        let cw = encode_random(&code, k_prime, 2);
        let filler = filler_range(&code, k_prime);
        assert_eq!(filler, 54..64);
        let once: Vec<Bit> = cw.bits[16..]
            .iter()
            .enumerate()
            .filter(|(i, _)| !filler.contains(i))
            .map(|(_, &b)| b)
            .collect();
        let e = rate_match(&cw, &filler, &cfg(2 * (code.n_cb() - filler.len()), 0));
        assert_eq!(e, [once.clone(), once].concat());
    }

    #[test]
    fn circular_read_matches_slicing_oracle() {
        let code = build_code(BaseGraphId::BG2, 2).unwrap();
        let cw = encode_random(&code, 20, 3);
        let d = &cw.bits[4..];
        let filler = filler_range(&code, 20);
        let k0 = k0_start(&code, rv(1));
        let e = rate_match(&cw, &filler, &cfg(8, 1));
        let expect: Vec<Bit> = (0..8).map(|i| d[(k0 + i) % 100]).collect();
        assert_eq!(e, expect);
        for (k_prime, v, e_r) in [(11, 0, 40), (15, 3, 250), (20, 2, 98), (13, 1, 402)] {
            let filler = filler_range(&code, k_prime);
            let cw = encode_random(&code, k_prime, 4);
            let got = rate_match(&cw, &filler, &cfg(e_r, v));
            let pos = oracle_positions(100, k0_start(&code, rv(v)), &filler, e_r);
            let want: Vec<Bit> = pos.iter().map(|&p| cw.bits[4 + p]).collect();
            assert_eq!(got, want);
        }
    }

    fn llr(v: f64) -> SoftLlr {
        crate::llr::quantize(v)
    }

    #[test]
    fn single_transmission_into_empty_buffer() {
        let code = build_code(BaseGraphId::BG2, 4).unwrap();
        let mut store = vec![SoftLlr::ZERO; code.n_cb()];
        let mut buf = SoftBuffer { llrs: &mut store, filler: filler_range(&code, 30) };
        let rx: Vec<SoftLlr> = (0..60).map(|i| SoftLlr::from_raw(i % 31 - 15).unwrap()).collect();
        rate_unmatch_combine(&mut buf, &rx, &cfg(60, 0), &code).unwrap();
        let pos = oracle_positions(code.n_cb(), 0, &buf.filler, 60);
        let mut want = vec![SoftLlr::ZERO; code.n_cb()];
        for (&p, &l) in pos.iter().zip(&rx) {
            want[p] = l;
        }
        assert_eq!(buf.llrs, &want[..]);
    }

    #[test]
    fn combining_saturates() {
        let code = build_code(BaseGraphId::BG2, 2).unwrap();
        let mut store = vec![SoftLlr::ZERO; 100];
        store[0] = llr(7.0);
        let mut buf = SoftBuffer { llrs: &mut store, filler: 0..0 };
        rate_unmatch_combine(&mut buf, &[llr(1.5), llr(1.5)], &cfg(2, 0), &code).unwrap();
        assert_eq!(buf.llrs[0].value(), 7.75);
        assert_eq!(buf.llrs[1].value(), 1.5);
    }

    #[test]
    fn two_redundancy_versions_match_scatter_add() {
        let code = build_code(BaseGraphId::BG2, 6).unwrap();
        let filler = filler_range(&code, 52);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut store = vec![SoftLlr::ZERO; code.n_cb()];
        let mut oracle = vec![0i32; code.n_cb()];
        for (v, e_r) in [(0u8, 180usize), (2, 180)] {
            let rx: Vec<SoftLlr> = (0..e_r).map(|_| SoftLlr::from_raw(rng.random_range(-15..=15)).unwrap()).collect();
            let mut buf = SoftBuffer { llrs: &mut store, filler: filler.clone() };
            rate_unmatch_combine(&mut buf, &rx, &cfg(e_r, v), &code).unwrap();
            for (p, l) in oracle_positions(code.n_cb(), k0_start(&code, rv(v)), &filler, e_r).into_iter().zip(&rx) {
                oracle[p] += l.raw() as i32;
            }
        }
        let want: Vec<SoftLlr> = oracle.iter().map(|&r| SoftLlr::saturating_from_raw(r)).collect();
        assert_eq!(store, want);
    }

    #[test]
    fn decoder_input_layout() {
        let code = build_code(BaseGraphId::BG2, 4).unwrap();
        let mut store = vec![llr(2.0); code.n_cb()];
        let buf = SoftBuffer { llrs: &mut store, filler: filler_range(&code, 33) };
        let out = materialize_decoder_input(&buf, &code);
        assert_eq!(out.len(), code.n_full());
        assert!(out[..8].iter().all(|&l| l == SoftLlr::ZERO));
        assert!(out[33..40].iter().all(|&l| l == SoftLlr::MIN));
        assert_eq!(out[32], llr(2.0));
        assert_eq!(out[40], llr(2.0));

        let mut store: Vec<SoftLlr> = (0..code.n_cb()).map(|i| SoftLlr::from_raw(i as i32 % 31).unwrap()).collect();
        let buf = SoftBuffer { llrs: &mut store, filler: 0..0 };
        let out = materialize_decoder_input(&buf, &code);
        assert_eq!(&out[8..], buf.llrs);
    }

    #[test]
    fn redundancy_versions_touch_different_positions() {
        let code = build_code(BaseGraphId::BG2, 8).unwrap();
        let filler = filler_range(&code, code.k());
        let touched = |v: u8| -> Vec<bool> {
            let mut store = vec![SoftLlr::ZERO; code.n_cb()];
            let mut buf = SoftBuffer { llrs: &mut store, filler: filler.clone() };
            rate_unmatch_combine(&mut buf, &[SoftLlr::MAX; 120], &cfg(120, v), &code).unwrap();
            store.iter().map(|l| l.raw() != 0).collect()
        };
        assert_ne!(touched(0), touched(2));
    }

    #[test]
    fn retransmission_may_change_length() {
        let code = build_code(BaseGraphId::BG2, 4).unwrap();
        let mut store = vec![SoftLlr::ZERO; code.n_cb()];
        let mut buf = SoftBuffer { llrs: &mut store, filler: 0..0 };
        rate_unmatch_combine(&mut buf, &[llr(1.0); 40], &cfg(40, 0), &code).unwrap();
        let c16 = RateMatchConfig::new(64, rv(2), ModulationOrder::Qam16).unwrap();
        rate_unmatch_combine(&mut buf, &[llr(1.0); 64], &c16, &code).unwrap();
        let total: i32 = store.iter().map(|l| l.raw() as i32).sum();
        assert_eq!(total, 4 * 104);
    }

    proptest! {
        #[test]
        fn match_unmatch_adjoint(
            zc in prop::sample::select(vec![2usize, 5, 8, 13]),
            frac in 0.05f64..1.0,
            v in 0u8..4,
            e_groups in 1usize..300,
            seed: u64,
        ) {
            let code = build_code(BaseGraphId::BG2, zc).unwrap();
            let k_prime = ((code.k() as f64 * frac).ceil() as usize).max(1);
            let cw = encode_random(&code, k_prime, seed);
            let filler = filler_range(&code, k_prime);
            let c = cfg(2 * e_groups, v);
            let e = rate_match(&cw, &filler, &c);
            let rx: Vec<SoftLlr> = e.iter().map(|&b| if b == 1 { SoftLlr::MAX } else { SoftLlr::MIN }).collect();
            let mut store = vec![SoftLlr::ZERO; code.n_cb()];
            let mut buf = SoftBuffer { llrs: &mut store, filler: filler.clone() };
            rate_unmatch_combine(&mut buf, &rx, &c, &code).unwrap();
            let sent: std::collections::HashSet<usize> =
                oracle_positions(code.n_cb(), k0_start(&code, rv(v)), &filler, c.e_r()).into_iter().collect();
            let out = materialize_decoder_input(&buf, &code);
            for (i, l) in out.iter().enumerate().skip(2 * zc) {
                let p = i - 2 * zc;
                if filler.contains(&p) {
                    prop_assert_eq!(*l, SoftLlr::MIN);
                } else if sent.contains(&p) {
                    prop_assert!(l.raw() != 0);
                    prop_assert_eq!(l.hard_bit(), cw.bits[i]);
                } else {
                    prop_assert_eq!(l.raw(), 0);
                }
            }
        }

        #[test]
        fn combining_commutes_in_range(a in proptest::collection::vec(-15i32..=15, 120), b in proptest::collection::vec(-15i32..=15, 120)) {
            let code = build_code(BaseGraphId::BG2, 3).unwrap();
            let a: Vec<SoftLlr> = a.into_iter().map(|r| SoftLlr::from_raw(r).unwrap()).collect();
            let b: Vec<SoftLlr> = b.into_iter().map(|r| SoftLlr::from_raw(r).unwrap()).collect();
            let run = |first: (&[SoftLlr], u8), second: (&[SoftLlr], u8)| {
                let mut store = vec![SoftLlr::ZERO; code.n_cb()];
                let mut buf = SoftBuffer { llrs: &mut store, filler: 0..0 };
                rate_unmatch_combine(&mut buf, first.0, &cfg(120, first.1), &code).unwrap();
                rate_unmatch_combine(&mut buf, second.0, &cfg(120, second.1), &code).unwrap();
                store
            };
            prop_assert_eq!(run((&a, 0), (&b, 2)), run((&b, 2), (&a, 0)));
        }
    }
}
