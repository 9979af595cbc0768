//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use nrphy::llr::{constellation, ModulationOrder};
use nrphy::Bit;

/// Gold sequence by direct array recurrence, one bit at a time.
pub fn gold_reference(c_init: u32, len: usize) -> Vec<Bit> {
    const NC: usize = 1600;
    let total = NC + len + 31;
    let mut x1 = vec![0u8; total];
    let mut x2 = vec![0u8; total];
    x1[0] = 1;
    for i in 0..31 {
        x2[i] = ((c_init >> i) & 1) as u8;
    }
    for n in 0..total - 31 {
        x1[n + 31] = x1[n + 3] ^ x1[n];
        x2[n + 31] = x2[n + 3] ^ x2[n + 2] ^ x2[n + 1] ^ x2[n];
    }
    (0..len).map(|n| x1[n + NC] ^ x2[n + NC]).collect()
}

/// Offset min-sum written straight from its definition.
pub fn check_node_reference(inputs: &[i32], offset: i32) -> Vec<i32> {
    (0..inputs.len())
        .map(|i| {
            let others = inputs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v);
            let min = others.clone().map(i32::abs).min().unwrap();
            let negative = others.filter(|&v| v < 0).count() % 2 == 1;
            let mag = (min - offset).max(0);
            if negative {
                -mag
            } else {
                mag
            }
        })
        .collect()
}

/// Max-log LLRs by exhaustive search over the constellation:
/// `(min_{b=0} |r-s|^2 - min_{b=1} |r-s|^2) / (2 sigma^2)`, positive
/// favoring 1.
pub fn maxlog_reference(r: (f64, f64), order: ModulationOrder, sigma2: f64) -> Vec<f64> {
    let points = constellation(order);
    let q = order.bits();
    (0..q)
        .map(|k| {
            let (mut d0, mut d1) = (f64::INFINITY, f64::INFINITY);
            for (label, &(x, y)) in points.iter().enumerate() {
                let d = (r.0 - x).powi(2) + (r.1 - y).powi(2);
                if (label >> (q - 1 - k)) & 1 == 1 {
                    d1 = d1.min(d);
                } else {
                    d0 = d0.min(d);
                }
            }
            (d0 - d1) / (2.0 * sigma2)
        })
        .collect()
}
