use std::fmt;
use std::ops::Neg;

use crate::Bit;

/// Log-likelihood ratio in the accelerator's 6-bit symmetric format.
///
/// The raw value counts quarters: `raw / 4` is the LLR, so the representable
/// range is `[-7.75, +7.75]`. The two's-complement value -32 never occurs,
/// which keeps negation closed. In memory and on the word interface each
/// value occupies a sign-extended byte.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SoftLlr(i8);

impl SoftLlr {
    pub const MAX_RAW: i8 = 31;
    pub const FRACTIONAL_BITS: u32 = 2;
    pub const ZERO: SoftLlr = SoftLlr(0);
    pub const MAX: SoftLlr = SoftLlr(Self::MAX_RAW);
    pub const MIN: SoftLlr = SoftLlr(-Self::MAX_RAW);

    /// Returns `None` when `raw` lies outside `[-31, 31]`.
    pub fn from_raw(raw: i32) -> Option<SoftLlr> {
        if raw.abs() <= Self::MAX_RAW as i32 {
            Some(SoftLlr(raw as i8))
        } else {
            None
        }
    }

    pub fn saturating_from_raw(raw: i32) -> SoftLlr {
        SoftLlr(raw.clamp(-(Self::MAX_RAW as i32), Self::MAX_RAW as i32) as i8)
    }

    #[inline]
    pub fn raw(self) -> i8 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 4.0
    }

    #[inline]
    pub fn saturating_add(self, other: SoftLlr) -> SoftLlr {
        SoftLlr::saturating_from_raw(self.0 as i32 + other.0 as i32)
    }

    /// Hard decision: 1 iff the LLR is strictly positive.
    #[inline]
    pub fn hard_bit(self) -> Bit {
        (self.0 > 0) as Bit
    }

    pub fn abs(self) -> SoftLlr {
        SoftLlr(self.0.abs())
    }
}

impl Neg for SoftLlr {
    type Output = SoftLlr;

    fn neg(self) -> SoftLlr {
        SoftLlr(-self.0)
    }
}

impl fmt::Debug for SoftLlr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SoftLlr({})", self.value())
    }
}

impl fmt::Display for SoftLlr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Rounds a real LLR to the nearest quarter (ties away from zero) and clamps
/// it to `[-7.75, 7.75]`. NaN maps to zero.
pub fn quantize(value: f64) -> SoftLlr {
    if value.is_nan() {
        return SoftLlr::ZERO;
    }
    let scaled = (value * 4.0).round();
    let limit = SoftLlr::MAX_RAW as f64;
    SoftLlr(scaled.clamp(-limit, limit) as i8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quantizer_examples() {
        assert_eq!(quantize(0.0).raw(), 0);
        assert_eq!(quantize(-1.2).raw(), -5);
        assert_eq!(quantize(100.0).raw(), 31);
        assert_eq!(quantize(-100.0).raw(), -31);
        assert_eq!(quantize(0.125).raw(), 1);
        assert_eq!(quantize(-0.125).raw(), -1);
        assert_eq!(quantize(f64::NAN).raw(), 0);
        assert_eq!(quantize(f64::INFINITY), SoftLlr::MAX);
    }

    #[test]
    fn saturation_at_rails() {
        let a = SoftLlr::from_raw(28).unwrap();
        let b = SoftLlr::from_raw(6).unwrap();
        assert_eq!(a.saturating_add(b).value(), 7.75);
        assert_eq!((-a).saturating_add(-b).value(), -7.75);
        assert_eq!(-SoftLlr::MIN, SoftLlr::MAX);
        assert!(SoftLlr::from_raw(32).is_none());
        assert!(SoftLlr::from_raw(-32).is_none());
    }

    #[test]
    fn hard_decision_convention() {
        assert_eq!(SoftLlr::from_raw(1).unwrap().hard_bit(), 1);
        assert_eq!(SoftLlr::ZERO.hard_bit(), 0);
        assert_eq!(SoftLlr::from_raw(-1).unwrap().hard_bit(), 0);
    }

    proptest! {
        #[test]
        fn quantizer_is_monotone(a in -20.0f64..20.0, b in -20.0f64..20.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(quantize(lo) <= quantize(hi));
        }

        #[test]
        fn quantizer_is_idempotent_on_grid(raw in -31i32..=31) {
            let v = SoftLlr::from_raw(raw).unwrap();
            prop_assert_eq!(quantize(v.value()), v);
        }
    }
}
