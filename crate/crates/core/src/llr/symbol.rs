/// Equalized complex symbol with 16-bit components in Q3.12.
///
/// The representable range per component is `[-8, 8 - 2^-12]`; conversions
/// from real values round to nearest and saturate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EqualizedSymbol {
    pub re: i16,
    pub im: i16,
}

impl EqualizedSymbol {
    pub const FRACTIONAL_BITS: u32 = 12;
    const SCALE: f64 = (1 << Self::FRACTIONAL_BITS) as f64;

    pub fn from_f64(re: f64, im: f64) -> EqualizedSymbol {
        EqualizedSymbol {
            re: to_fixed(re),
            im: to_fixed(im),
        }
    }

    pub fn re_f64(self) -> f64 {
        self.re as f64 / Self::SCALE
    }

    pub fn im_f64(self) -> f64 {
        self.im as f64 / Self::SCALE
    }
}

fn to_fixed(x: f64) -> i16 {
    if x.is_nan() {
        return 0;
    }
    (x * EqualizedSymbol::SCALE)
        .round()
        .clamp(i16::MIN as f64, i16::MAX as f64) as i16
}
