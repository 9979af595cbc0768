//! 32-bit word streams exchanged with the accelerator.
//!
//! Raw bits are packed 32 per word, LSB first. LLRs are packed four per
//! word, one sign-extended byte each, lowest byte first. On disk words are
//! little-endian; the debug dump is one hexadecimal word per line.

use super::SoftLlr;
use crate::{Bit, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordKind {
    RawBits,
    Llrs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedWordStream {
    pub kind: WordKind,
    pub words: Vec<u32>,
}

pub fn pack_bit_words(bits: &[Bit]) -> PackedWordStream {
    let mut words = vec![0u32; bits.len().div_ceil(32)];
    for (i, &b) in bits.iter().enumerate() {
        words[i / 32] |= ((b & 1) as u32) << (i % 32);
    }
    PackedWordStream {
        kind: WordKind::RawBits,
        words,
    }
}

pub fn unpack_bit_words(stream: &PackedWordStream, count: usize) -> Result<Vec<Bit>> {
    if stream.kind != WordKind::RawBits {
        return Err(Error::Format("expected a raw-bit stream".into()));
    }
    if count > stream.words.len() * 32 {
        return Err(Error::Format(format!(
            "{count} bits requested from {} words",
            stream.words.len()
        )));
    }
    Ok((0..count)
        .map(|i| ((stream.words[i / 32] >> (i % 32)) & 1) as Bit)
        .collect())
}

/// Packs LLRs four per word; the final word is padded with zero LLRs.
pub fn pack_llr_words(llrs: &[SoftLlr]) -> PackedWordStream {
    let words = llrs
        .chunks(4)
        .map(|chunk| {
            let mut bytes = [0u8; 4];
            for (b, l) in bytes.iter_mut().zip(chunk) {
                *b = l.raw() as u8;
            }
            u32::from_le_bytes(bytes)
        })
        .collect();
    PackedWordStream {
        kind: WordKind::Llrs,
        words,
    }
}

/// Unpacks every byte of an LLR stream, padding included. Bytes that are
/// not a sign-extended value in `[-31, 31]` are rejected.
pub fn unpack_llr_words(stream: &PackedWordStream) -> Result<Vec<SoftLlr>> {
    if stream.kind != WordKind::Llrs {
        return Err(Error::Format("expected an LLR stream".into()));
    }
    let mut out = Vec::with_capacity(stream.words.len() * 4);
    for (w, word) in stream.words.iter().enumerate() {
        for (b, byte) in word.to_le_bytes().into_iter().enumerate() {
            let llr = SoftLlr::from_raw(byte as i8 as i32).ok_or_else(|| {
                Error::Format(format!("byte {b} of word {w} is 0x{byte:02X}, not a 6-bit LLR"))
            })?;
            out.push(llr);
        }
    }
    Ok(out)
}

impl PackedWordStream {
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.words.iter().flat_map(|w| w.to_le_bytes()).collect()
    }

    pub fn from_le_bytes(kind: WordKind, bytes: &[u8]) -> Result<PackedWordStream> {
        if !bytes.len().is_multiple_of(4) {
            return Err(Error::Format(format!(
                "{} bytes is not a whole number of 32-bit words",
                bytes.len()
            )));
        }
        let words = bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Ok(PackedWordStream { kind, words })
    }

    pub fn to_hex_dump(&self) -> String {
        let mut s = String::with_capacity(self.words.len() * 9);
        for w in &self.words {
            s.push_str(&format!("{w:08x}\n"));
        }
        s
    }

    pub fn from_hex_dump(kind: WordKind, text: &str) -> Result<PackedWordStream> {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(n, l)| {
                let digits = l.strip_prefix("0x").unwrap_or(l);
                u32::from_str_radix(digits, 16)
                    .map_err(|_| Error::Format(format!("line {}: bad hex word {l:?}", n + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(PackedWordStream { kind, words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn llr(raw: i32) -> SoftLlr {
        SoftLlr::from_raw(raw).unwrap()
    }

    #[test]
    fn llr_byte_layout() {
        let s = pack_llr_words(&[llr(1), llr(-1), llr(31), llr(-31)]);
        assert_eq!(s.words.len(), 1);
        assert_eq!(s.words[0].to_le_bytes(), [0x01, 0xFF, 0x1F, 0xE1]);
        assert_eq!(s.to_le_bytes(), vec![0x01, 0xFF, 0x1F, 0xE1]);
    }

    #[test]
    fn empty_streams() {
        assert!(pack_llr_words(&[]).words.is_empty());
        assert!(pack_bit_words(&[]).words.is_empty());
    }

    #[test]
    fn bit_layout() {
        let mut bits = vec![0; 32];
        bits[0] = 1;
        assert_eq!(pack_bit_words(&bits).words, vec![1]);
        let mut bits = vec![0; 33];
        bits[32] = 1;
        assert_eq!(pack_bit_words(&bits).words, vec![0, 1]);
    }

    #[test]
    fn malformed_sign_extension() {
        let s = PackedWordStream {
            kind: WordKind::Llrs,
            words: vec![0x0000_4000],
        };
        assert!(matches!(unpack_llr_words(&s), Err(Error::Format(_))));
        let s = PackedWordStream {
            kind: WordKind::Llrs,
            words: vec![0x0000_00E0],
        };
        assert!(unpack_llr_words(&s).is_err(), "-32 is not symmetric");
    }

    #[test]
    fn bit_count_beyond_capacity() {
        let s = pack_bit_words(&[1; 40]);
        assert!(unpack_bit_words(&s, 64).is_ok());
        assert!(unpack_bit_words(&s, 65).is_err());
    }

    #[test]
    fn file_formats() {
        let s = pack_bit_words(&[1, 0, 1, 1]);
        let back = PackedWordStream::from_le_bytes(WordKind::RawBits, &s.to_le_bytes()).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.to_hex_dump(), "0000000d\n");
        let back = PackedWordStream::from_hex_dump(WordKind::RawBits, &s.to_hex_dump()).unwrap();
        assert_eq!(back, s);
        assert!(PackedWordStream::from_le_bytes(WordKind::Llrs, &[1, 2, 3]).is_err());
    }

    proptest! {
        #[test]
        fn llr_round_trip(raws in proptest::collection::vec(-31i32..=31, 0..2000)) {
            let llrs: Vec<SoftLlr> = raws.iter().map(|&r| llr(r)).collect();
            let back = unpack_llr_words(&pack_llr_words(&llrs)).unwrap();
            prop_assert_eq!(&back[..llrs.len()], &llrs[..]);
            prop_assert!(back[llrs.len()..].iter().all(|l| *l == SoftLlr::ZERO));
        }

        #[test]
        fn bit_round_trip(bits in proptest::collection::vec(0u8..=1, 0..2000)) {
            let back = unpack_bit_words(&pack_bit_words(&bits), bits.len()).unwrap();
            prop_assert_eq!(back, bits);
        }
    }
}
