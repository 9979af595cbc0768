use super::LiftedLdpcCode;
use crate::{Bit, Error, Result};

/// Information block of `K` bits: a `K'`-bit segment followed by `F` zero
/// filler bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoBlock {
    bits: Vec<Bit>,
    filler: usize,
}

impl InfoBlock {
    /// Zero-pads `segment` to `k` bits.
    pub fn new(segment: &[Bit], k: usize) -> Result<InfoBlock> {
        if segment.len() > k {
            return Err(Error::SegmentTooLong { k_prime: segment.len(), max: k });
        }
        let mut bits = segment.to_vec();
        bits.resize(k, 0);
        Ok(InfoBlock {
            bits,
            filler: k - segment.len(),
        })
    }

    pub fn bits(&self) -> &[Bit] {
        &self.bits
    }

    pub fn filler_count(&self) -> usize {
        self.filler
    }

    pub fn segment(&self) -> &[Bit] {
        &self.bits[..self.bits.len() - self.filler]
    }
}

/// Full `N_full`-bit codeword, systematic bits first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword<'a> {
    pub bits: Vec<Bit>,
    pub code: &'a LiftedLdpcCode,
}

/// `dst[j] ^= src[(j + shift) % zc]`: the contribution of a circulant
/// block to one block row.
#[inline]
fn xor_rotated(dst: &mut [Bit], src: &[Bit], shift: usize) {
    let zc = dst.len();
    let (head, tail) = src.split_at(shift);
    for (d, s) in dst[..zc - shift].iter_mut().zip(tail) {
        *d ^= s;
    }
    for (d, s) in dst[zc - shift..].iter_mut().zip(head) {
        *d ^= s;
    }
}

/// Solves `P^shift x = rhs` for the circulant permutation `P`.
#[inline]
fn unrotate(rhs: &[Bit], shift: usize, out: &mut [Bit]) {
    let zc = rhs.len();
    for (j, o) in out.iter_mut().enumerate() {
        *o = rhs[(j + zc - shift) % zc];
    }
}

/// Systematic encoding. The first core parity column is recovered from the
/// sum of the four core rows, the other three by back substitution through
/// the double diagonal, and each extension parity column from its own row.
pub fn ldpc_encode<'a>(code: &'a LiftedLdpcCode, info: &InfoBlock) -> Result<Codeword<'a>> {
    let k = code.k();
    if info.bits.len() != k {
        return Err(Error::LengthMismatch { expected: k, actual: info.bits.len() });
    }
    let zc = code.zc();
    let kb = code.bg().info_columns();
    let rows = code.rows();
    let mut cw = vec![0 as Bit; code.n_full()];
    cw[..k].copy_from_slice(&info.bits);

    let mut lambda = vec![vec![0 as Bit; zc]; 4];
    for (i, l) in lambda.iter_mut().enumerate() {
        for e in rows[i].iter().filter(|e| e.col < kb) {
            xor_rotated(l, &cw[e.col * zc..(e.col + 1) * zc], e.shift);
        }
    }
    let mut sum = vec![0 as Bit; zc];
    for l in &lambda {
        for (s, b) in sum.iter_mut().zip(l) {
            *s ^= b;
        }
    }
    let mut block = vec![0 as Bit; zc];
    unrotate(&sum, code.core_shift(), &mut block);
    cw[kb * zc..(kb + 1) * zc].copy_from_slice(&block);

    let mut rhs = vec![0 as Bit; zc];
    for &(i, target) in code.core_order() {
        rhs.copy_from_slice(&lambda[i]);
        let mut target_shift = 0;
        for e in rows[i].iter().filter(|e| e.col >= kb) {
            if e.col == target {
                target_shift = e.shift;
            } else {
                xor_rotated(&mut rhs, &cw[e.col * zc..(e.col + 1) * zc], e.shift);
            }
        }
        unrotate(&rhs, target_shift, &mut block);
        cw[target * zc..(target + 1) * zc].copy_from_slice(&block);
    }

    for (i, row) in rows.iter().enumerate().skip(4) {
        let target = kb + i;
        rhs.fill(0);
        let mut target_shift = 0;
        for e in row {
            if e.col == target {
                target_shift = e.shift;
            } else {
                xor_rotated(&mut rhs, &cw[e.col * zc..(e.col + 1) * zc], e.shift);
            }
        }
        unrotate(&rhs, target_shift, &mut block);
        cw[target * zc..(target + 1) * zc].copy_from_slice(&block);
    }
    Ok(Codeword { bits: cw, code })
}

/// True iff every lifted check sums to zero. Words of the wrong length are
/// never codewords.
pub fn parity_check(code: &LiftedLdpcCode, bits: &[Bit]) -> bool {
    if bits.len() != code.n_full() {
        return false;
    }
    let zc = code.zc();
    let mut acc = vec![0 as Bit; zc];
    code.rows().iter().all(|row| {
        acc.fill(0);
        for e in row {
            xor_rotated(&mut acc, &bits[e.col * zc..(e.col + 1) * zc], e.shift);
        }
        acc.iter().all(|&b| b == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::{build_code, BaseGraphId, LIFTING_SIZES};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Dense parity check straight from the lifting definition.
    fn dense_syndrome_zero(code: &LiftedLdpcCode, bits: &[Bit]) -> bool {
        let zc = code.zc();
        for row in code.rows() {
            for r in 0..zc {
                let mut s = 0;
                for e in row {
                    s ^= bits[e.col * zc + (r + e.shift) % zc];
                }
                if s != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn random_info(rng: &mut impl Rng, k: usize) -> InfoBlock {
        let bits: Vec<Bit> = (0..k).map(|_| rng.random_range(0..2)).collect();
        InfoBlock::new(&bits, k).unwrap()
    }

    #[test]
    fn zero_info_gives_zero_codeword() {
        let code = build_code(BaseGraphId::BG1, 8).unwrap();
        let cw = ldpc_encode(&code, &InfoBlock::new(&[], code.k()).unwrap()).unwrap();
        assert!(cw.bits.iter().all(|&b| b == 0));
        assert!(parity_check(&code, &cw.bits));
    }

    #[test]
    fn every_lifting_encodes_valid_codewords() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bg in [BaseGraphId::BG1, BaseGraphId::BG2] {
            for sizes in LIFTING_SIZES {
                for &zc in sizes {
                    let code = build_code(bg, zc).unwrap();
                    let info = random_info(&mut rng, code.k());
                    let cw = ldpc_encode(&code, &info).unwrap();
                    assert_eq!(&cw.bits[..code.k()], info.bits());
                    assert!(dense_syndrome_zero(&code, &cw.bits), "{bg} Zc={zc}");
                    assert!(parity_check(&code, &cw.bits));
                }
            }
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let code = build_code(BaseGraphId::BG2, 52).unwrap();
        let a = random_info(&mut rng, code.k());
        let b = random_info(&mut rng, code.k());
        let sum: Vec<Bit> = a.bits().iter().zip(b.bits()).map(|(x, y)| x ^ y).collect();
        let ca = ldpc_encode(&code, &a).unwrap();
        let cb = ldpc_encode(&code, &b).unwrap();
        let cs = ldpc_encode(&code, &InfoBlock::new(&sum, code.k()).unwrap()).unwrap();
        let xor: Vec<Bit> = ca.bits.iter().zip(&cb.bits).map(|(x, y)| x ^ y).collect();
        assert_eq!(cs.bits, xor);
    }

    #[test]
    fn single_flips_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let code = build_code(BaseGraphId::BG2, 2).unwrap();
        let cw = ldpc_encode(&code, &random_info(&mut rng, code.k())).unwrap();
        for i in 0..code.n_full() {
            let mut bits = cw.bits.clone();
            bits[i] ^= 1;
            assert!(!parity_check(&code, &bits), "flip at {i} undetected");
        }
        assert!(parity_check(&code, &vec![0; code.n_full()]));
        assert!(!parity_check(&code, &cw.bits[1..]));
    }

    #[test]
    fn info_block_padding() {
        let info = InfoBlock::new(&[1, 1, 0], 8).unwrap();
        assert_eq!(info.bits(), &[1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(info.filler_count(), 5);
        assert_eq!(info.segment(), &[1, 1, 0]);
        assert!(InfoBlock::new(&[0; 9], 8).is_err());
        let code = build_code(BaseGraphId::BG2, 2).unwrap();
        let short = InfoBlock::new(&[1], 10).unwrap();
        assert!(matches!(ldpc_encode(&code, &short), Err(Error::LengthMismatch { .. })));
    }
}
