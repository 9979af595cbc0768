//! Process-wide counters that check soft values at chain stage boundaries.
//!
//! The decode chain feeds every LLR vector it hands from one stage to the
//! next through [`audit_llrs`]. Tests read the counters to confirm the 6-bit
//! range was never left.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::llr::SoftLlr;

static CHECKED: AtomicU64 = AtomicU64::new(0);
static VIOLATIONS: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditCounts {
    pub checked: u64,
    pub violations: u64,
}

pub fn audit_llrs(llrs: &[SoftLlr]) {
    let bad = llrs
        .iter()
        .filter(|l| l.raw().unsigned_abs() > SoftLlr::MAX_RAW as u8)
        .count();
    CHECKED.fetch_add(llrs.len() as u64, Ordering::Relaxed);
    if bad > 0 {
        VIOLATIONS.fetch_add(bad as u64, Ordering::Relaxed);
    }
}

pub fn counts() -> AuditCounts {
    AuditCounts {
        checked: CHECKED.load(Ordering::Relaxed),
        violations: VIOLATIONS.load(Ordering::Relaxed),
    }
}
