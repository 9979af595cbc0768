use super::LiftedLdpcCode;
use crate::llr::SoftLlr;
use crate::{Bit, Error, Result};

/// Internal messages are 8-bit with two fractional bits; the range is kept
/// symmetric so negation never overflows.
const INTERNAL_MAX: i16 = 127;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderOptions {
    pub max_iterations: usize,
    /// Offset subtracted from check-node magnitudes, in quarters.
    pub offset_raw: i16,
}

impl Default for DecoderOptions {
    fn default() -> Self {
        DecoderOptions {
            max_iterations: 8,
            offset_raw: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    ParitySatisfied,
    DecisionsStable,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// Hard decisions on the `K` systematic bits, fillers included.
    pub hard_bits: Vec<Bit>,
    pub iterations_used: usize,
    pub parity_ok: bool,
    pub termination: Termination,
}

#[inline]
fn sat(x: i16) -> i16 {
    x.clamp(-INTERNAL_MAX, INTERNAL_MAX)
}

/// Offset min-sum over one check: `out[i]` has magnitude
/// `max(0, min_{j != i} |q_j| - offset)` and the product of the other signs
/// (zero counts as positive).
pub(crate) fn offset_min_sum(q: &[i16], offset: i16, out: &mut [i16]) {
    let mut min1 = i16::MAX;
    let mut min2 = i16::MAX;
    let mut idx = 0;
    let mut neg = false;
    for (i, &v) in q.iter().enumerate() {
        let a = v.abs();
        if a < min1 {
            min2 = min1;
            min1 = a;
            idx = i;
        } else if a < min2 {
            min2 = a;
        }
        neg ^= v < 0;
    }
    for (i, (o, &v)) in out.iter_mut().zip(q).enumerate() {
        let m = if i == idx { min2 } else { min1 };
        let mag = (m - offset).max(0);
        *o = if neg ^ (v < 0) { -mag } else { mag };
    }
}

#[inline]
fn subtract_sat(dst: &mut [i16], a: &[i16], b: &[i16]) {
    for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
        *d = sat(x - y);
    }
}

#[inline]
fn add_sat(dst: &mut [i16], a: &[i16], b: &[i16]) {
    for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
        *d = sat(x + y);
    }
}

/// Folds one edge's inputs into the running two smallest magnitudes, the
/// position of the smallest and the sign parity.
#[inline]
fn track_minima(q: &[i16], e: i16, min1: &mut [i16], min2: &mut [i16], idx: &mut [i16], sign: &mut [i16]) {
    for r in 0..q.len() {
        let v = q[r];
        let a = v.abs();
        let below = -((a < min1[r]) as i16);
        min2[r] = min2[r].min(a.max(min1[r]));
        min1[r] = min1[r].min(a);
        idx[r] = (e & below) | (idx[r] & !below);
        sign[r] ^= v >> 15;
    }
}

/// Check-node update on soft LLRs.
///
/// The plain sign product is the parity rule when a positive value favors
/// bit 0; [`ldpc_decode`] negates its input to work in that orientation.
///
/// # Panics
///
/// Panics with fewer than two inputs.
pub fn check_node_update(inputs: &[SoftLlr], offset: SoftLlr) -> Vec<SoftLlr> {
    assert!(inputs.len() >= 2, "a check node needs at least two edges");
    let q: Vec<i16> = inputs.iter().map(|l| l.raw() as i16).collect();
    let mut out = vec![0i16; q.len()];
    offset_min_sum(&q, offset.raw() as i16, &mut out);
    out.into_iter()
        .map(|v| SoftLlr::saturating_from_raw(v as i32))
        .collect()
}

/// Row-layered offset min-sum decoding.
///
/// Runs up to `max_iterations` full passes over the block rows. After each
/// pass the `N_full` hard decisions are checked against every parity check,
/// and from the second pass on compared with the previous pass; either
/// condition stops the decoder.
pub fn ldpc_decode(
    code: &LiftedLdpcCode,
    channel: &[SoftLlr],
    opts: &DecoderOptions,
) -> Result<DecodeResult> {
    let n = code.n_full();
    if channel.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: channel.len() });
    }
    assert!(opts.max_iterations >= 1);
    let zc = code.zc();
    let rows = code.rows();
    let max_deg = rows.iter().map(Vec::len).max().unwrap_or(0);

    // check nodes work with positive meaning bit 0
    let mut app: Vec<i16> = channel.iter().map(|l| -(l.raw() as i16)).collect();
    let mut msgs = vec![0i16; code.edge_count() * zc];
    let mut q = vec![0i16; max_deg * zc];
    let mut min1 = vec![0i16; zc];
    let mut min2 = vec![0i16; zc];
    let mut idx = vec![0i16; zc];
    // 0 or -1: parity of negative inputs seen so far
    let mut sign = vec![0i16; zc];
    let mut hard = vec![0 as Bit; n];
    let mut prev = vec![0 as Bit; n];

    let mut termination = Termination::MaxIterations;
    let mut parity_ok = false;
    let mut iterations = 0;
    for iter in 1..=opts.max_iterations {
        iterations = iter;
        let mut edge_base = 0;
        for row in rows {
            let deg = row.len();
            min1.fill(i16::MAX);
            min2.fill(i16::MAX);
            idx.fill(0);
            sign.fill(0);
            for (e, edge) in row.iter().enumerate() {
                let col = &app[edge.col * zc..(edge.col + 1) * zc];
                let r_old = &msgs[(edge_base + e) * zc..(edge_base + e + 1) * zc];
                let q_e = &mut q[e * zc..(e + 1) * zc];
                // q_e[r] = app[col][(r + shift) % zc] - r_old[r]
                let split = zc - edge.shift;
                let (qa, qb) = q_e.split_at_mut(split);
                let (ra, rb) = r_old.split_at(split);
                subtract_sat(qa, &col[edge.shift..], ra);
                subtract_sat(qb, &col[..edge.shift], rb);
                track_minima(q_e, e as i16, &mut min1, &mut min2, &mut idx, &mut sign);
            }
            for (e, edge) in row.iter().enumerate() {
                let q_e = &q[e * zc..(e + 1) * zc];
                let r_msg = &mut msgs[(edge_base + e) * zc..(edge_base + e + 1) * zc];
                for r in 0..zc {
                    let own = -((idx[r] == e as i16) as i16);
                    let m = (min2[r] & own) | (min1[r] & !own);
                    let mag = (m - opts.offset_raw).max(0);
                    let flip = sign[r] ^ (q_e[r] >> 15);
                    r_msg[r] = (mag ^ flip) - flip;
                }
                let col = &mut app[edge.col * zc..(edge.col + 1) * zc];
                let split = zc - edge.shift;
                let (head, tail) = col.split_at_mut(edge.shift);
                add_sat(tail, &q_e[..split], &r_msg[..split]);
                add_sat(head, &q_e[split..], &r_msg[split..]);
            }
            edge_base += deg;
        }

        for (h, &a) in hard.iter_mut().zip(&app) {
            *h = (a < 0) as Bit;
        }
        if super::parity_check(code, &hard) {
            parity_ok = true;
            termination = Termination::ParitySatisfied;
            break;
        }
        if iter > 1 && hard == prev {
            termination = Termination::DecisionsStable;
            break;
        }
        std::mem::swap(&mut hard, &mut prev);
    }
    let decided = if parity_ok || termination == Termination::DecisionsStable {
        &hard
    } else {
        &prev
    };
    Ok(DecodeResult {
        hard_bits: decided[..code.k()].to_vec(),
        iterations_used: iterations,
        parity_ok,
        termination,
    })
}
