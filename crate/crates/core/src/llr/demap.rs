use super::{EqualizedSymbol, ModulationOrder, SoftLlr};

/// Per-block constants of the piecewise-linear demapper.
///
/// `A` is held as unsigned Q1.15, the level offsets `B`, `C`, `D` in the
/// symbol format (Q3.12) and `1/sigma^2` as unsigned Q8.8, so the
/// per-sample datapath is made of 16-bit adds and two multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DemapperParams {
    order: ModulationOrder,
    a_q15: u16,
    b_q12: i16,
    c_q12: i16,
    d_q12: i16,
    inv_noise_q8: u16,
}

impl DemapperParams {
    /// Builds the constants for `order` and noise variance `sigma2`. The
    /// reciprocal saturates at the top of its format, so `sigma2 = 0` is
    /// allowed.
    pub fn new(order: ModulationOrder, sigma2: f64) -> DemapperParams {
        let inv = if sigma2 > 0.0 { 256.0 / sigma2 } else { f64::INFINITY };
        let inv_noise_q8 = inv.round().clamp(1.0, u16::MAX as f64) as u16;
        Self::with_inv_noise_raw(order, inv_noise_q8)
    }

    pub fn with_inv_noise_raw(order: ModulationOrder, inv_noise_q8: u16) -> DemapperParams {
        let [a, b, c, d] = Self::constants(order);
        let q12 = |x: f64| (x * 4096.0).round() as i16;
        DemapperParams {
            order,
            a_q15: (a * 32768.0).round() as u16,
            b_q12: q12(b),
            c_q12: q12(c),
            d_q12: q12(d),
            inv_noise_q8,
        }
    }

    /// Real-valued `[A, B, C, D]` for a modulation order; unused levels are 0.
    pub fn constants(order: ModulationOrder) -> [f64; 4] {
        let a = 2.0 / order.energy().sqrt();
        match order {
            ModulationOrder::Qpsk => [a, 0.0, 0.0, 0.0],
            ModulationOrder::Qam16 => [a, a, 0.0, 0.0],
            ModulationOrder::Qam64 => [a, 2.0 * a, a, 0.0],
            ModulationOrder::Qam256 => [a, 4.0 * a, 2.0 * a, a],
        }
    }

    pub fn order(&self) -> ModulationOrder {
        self.order
    }

    pub fn inv_noise_raw(&self) -> u16 {
        self.inv_noise_q8
    }

    /// The `1/sigma^2` actually applied after quantization.
    pub fn inv_noise(&self) -> f64 {
        self.inv_noise_q8 as f64 / 256.0
    }
}

#[inline]
fn sat16(x: i32) -> i32 {
    x.clamp(i16::MIN as i32, i16::MAX as i32)
}

/// Arithmetic right shift rounding to nearest, ties away from zero.
#[inline]
fn round_shift(x: i64, shift: u32) -> i64 {
    let half = 1i64 << (shift - 1);
    let neg = x >> 63;
    let mag = ((x ^ neg) - neg + half) >> shift;
    (mag ^ neg) - neg
}

impl DemapperParams {
    #[inline]
    fn scale(&self, stage: i32) -> SoftLlr {
        let weighted = sat16(round_shift(stage as i64 * self.a_q15 as i64, 15) as i32);
        let q20 = weighted as i64 * self.inv_noise_q8 as i64;
        SoftLlr::saturating_from_raw(round_shift(q20, 18) as i32)
    }

    /// Soft bits of one axis: `out[0]` is the sign bit, then the nested
    /// level bits.
    #[inline]
    fn axis(&self, r: i16, out: &mut [SoftLlr]) {
        let r = r as i32;
        out[0] = self.scale(sat16(-r));
        if out.len() == 1 {
            return;
        }
        let t1 = sat16(r.abs() - self.b_q12 as i32);
        out[1] = self.scale(t1);
        if out.len() == 2 {
            return;
        }
        let t2 = sat16(t1.abs() - self.c_q12 as i32);
        out[2] = self.scale(t2);
        if out.len() == 3 {
            return;
        }
        let t3 = sat16(t2.abs() - self.d_q12 as i32);
        out[3] = self.scale(t3);
    }
}

/// Fixed-point max-log LLR estimation with the piecewise-linear
/// approximation. Produces `Q_m` soft bits per symbol in `b_0..b_{Q_m-1}`
/// order, where even bits come from the in-phase component.
pub fn llr_estimate(symbols: &[EqualizedSymbol], params: &DemapperParams) -> Vec<SoftLlr> {
    let q = params.order.bits();
    let half = q / 2;
    let mut out = vec![SoftLlr::ZERO; symbols.len() * q];
    let mut i_axis = [SoftLlr::ZERO; 4];
    let mut q_axis = [SoftLlr::ZERO; 4];
    for (sym, dst) in symbols.iter().zip(out.chunks_exact_mut(q)) {
        params.axis(sym.re, &mut i_axis[..half]);
        params.axis(sym.im, &mut q_axis[..half]);
        for k in 0..half {
            dst[2 * k] = i_axis[k];
            dst[2 * k + 1] = q_axis[k];
        }
    }
    out
}
