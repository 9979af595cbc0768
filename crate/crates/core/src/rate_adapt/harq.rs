use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use super::SoftBuffer;
use crate::ldpc::{BaseGraphId, LiftedLdpcCode};
use crate::llr::SoftLlr;
use crate::{Error, Result};

/// Number of virtual circular buffers carved from the soft-buffer memory.
pub const POOL_SLOTS: usize = 16;
/// Every slot can hold the largest circular buffer (BG1, Zc = 384).
pub const N_CB_MAX: usize = 66 * 384;

/// Owner of a soft buffer: a HARQ process and the code block within its
/// transport block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProcessId {
    pub harq: u16,
    pub block: u16,
}

impl ProcessId {
    pub fn new(harq: u16) -> ProcessId {
        ProcessId { harq, block: 0 }
    }

    pub fn with_block(harq: u16, block: u16) -> ProcessId {
        ProcessId { harq, block }
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.block == 0 {
            write!(f, "{}", self.harq)
        } else {
            write!(f, "{}/{}", self.harq, self.block)
        }
    }
}

/// Code dimensions a slot is bound to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BufferDims {
    pub bg: BaseGraphId,
    pub zc: usize,
    pub n_cb: usize,
    pub filler: Range<usize>,
}

impl BufferDims {
    pub fn new(code: &LiftedLdpcCode, filler: Range<usize>) -> BufferDims {
        BufferDims {
            bg: code.bg(),
            zc: code.zc(),
            n_cb: code.n_cb(),
            filler,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotHandle(usize);

impl SlotHandle {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, Default)]
struct SlotMeta {
    dims: Option<BufferDims>,
    last_use: u64,
}

/// Fixed soft-buffer memory split into up to 16 virtual circular buffers,
/// each bound to at most one HARQ process.
///
/// Free slots are handed out lowest index first. Exhaustion is reported to
/// the caller; nothing is evicted implicitly.
#[derive(Clone, Debug)]
pub struct HarqBufferPool {
    memory: Vec<SoftLlr>,
    meta: Vec<SlotMeta>,
    bindings: BTreeMap<ProcessId, usize>,
    free: Vec<usize>,
    clock: u64,
}

impl Default for HarqBufferPool {
    fn default() -> Self {
        Self::new()
    }
}

impl HarqBufferPool {
    pub fn new() -> HarqBufferPool {
        Self::with_slots(POOL_SLOTS).expect("default slot count is valid")
    }

    /// A pool restricted to `slots` virtual buffers, `1..=16`.
    pub fn with_slots(slots: usize) -> Result<HarqBufferPool> {
        if !(1..=POOL_SLOTS).contains(&slots) {
            return Err(Error::Config(format!("pool size {slots} is not in 1..={POOL_SLOTS}")));
        }
        Ok(HarqBufferPool {
            memory: vec![SoftLlr::ZERO; slots * N_CB_MAX],
            meta: vec![SlotMeta::default(); slots],
            bindings: BTreeMap::new(),
            free: (0..slots).rev().collect(),
            clock: 0,
        })
    }

    pub fn capacity(&self) -> usize {
        self.meta.len()
    }

    pub fn bound_count(&self) -> usize {
        self.bindings.len()
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    pub fn is_bound(&self, pid: ProcessId) -> bool {
        self.bindings.contains_key(&pid)
    }

    /// Binds a zeroed slot for a new packet, or returns the slot already
    /// bound to `pid` for a retransmission. A new packet on a bound process
    /// reuses (and clears) that process's slot.
    pub fn acquire(&mut self, pid: ProcessId, is_new_packet: bool, dims: BufferDims) -> Result<SlotHandle> {
        if dims.n_cb > N_CB_MAX {
            return Err(Error::Config(format!("N_cb {} exceeds slot size {N_CB_MAX}", dims.n_cb)));
        }
        self.clock += 1;
        let slot = match (self.bindings.get(&pid).copied(), is_new_packet) {
            (Some(slot), false) => {
                if self.meta[slot].dims.as_ref() != Some(&dims) {
                    return Err(Error::DimensionMismatch(pid));
                }
                self.meta[slot].last_use = self.clock;
                return Ok(SlotHandle(slot));
            }
            (None, false) => return Err(Error::UnknownProcess(pid)),
            (Some(slot), true) => slot,
            (None, true) => {
                let slot = self.free.pop().ok_or(Error::PoolExhausted(self.capacity()))?;
                self.bindings.insert(pid, slot);
                slot
            }
        };
        let base = slot * N_CB_MAX;
        self.memory[base..base + dims.n_cb].fill(SoftLlr::ZERO);
        self.meta[slot] = SlotMeta {
            dims: Some(dims),
            last_use: self.clock,
        };
        Ok(SlotHandle(slot))
    }

    pub fn release(&mut self, pid: ProcessId) -> Result<()> {
        let slot = self.bindings.remove(&pid).ok_or(Error::UnknownProcess(pid))?;
        self.meta[slot].dims = None;
        // keep handing out low indices first
        let at = self.free.partition_point(|&s| s > slot);
        self.free.insert(at, slot);
        Ok(())
    }

    /// Mutable view of a bound slot, `N_cb` LLRs long.
    pub fn buffer_mut(&mut self, handle: SlotHandle) -> SoftBuffer<'_> {
        let dims = self.meta[handle.0].dims.as_ref().expect("slot is bound");
        let base = handle.0 * N_CB_MAX;
        SoftBuffer {
            filler: dims.filler.clone(),
            llrs: &mut self.memory[base..base + dims.n_cb],
        }
    }

    pub fn buffer(&self, handle: SlotHandle) -> &[SoftLlr] {
        let dims = self.meta[handle.0].dims.as_ref().expect("slot is bound");
        let base = handle.0 * N_CB_MAX;
        &self.memory[base..base + dims.n_cb]
    }

    pub fn last_use(&self, handle: SlotHandle) -> u64 {
        self.meta[handle.0].last_use
    }

    pub fn bound_processes(&self) -> impl Iterator<Item = ProcessId> + '_ {
        self.bindings.keys().copied()
    }
}
