use super::table::BaseGraphTable;
use super::{lifting_set_index, BaseGraphId};
use crate::{Error, Result};

/// A nonzero base-graph entry after lifting: base column and cyclic shift
/// in `[0, Zc)`. Lifted row `r` of the block row connects to lifted column
/// `col * Zc + (r + shift) % Zc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub col: usize,
    pub shift: usize,
}

/// A base graph lifted by `Zc`.
///
/// Lengths: `K = kb * Zc` (kb = 22 or 10), `N_full = columns * Zc` and
/// `N_cb = N_full - 2 * Zc`, the part left after puncturing the first two
/// systematic columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedLdpcCode {
    bg: BaseGraphId,
    zc: usize,
    set_index: usize,
    rows: Vec<Vec<Edge>>,
    /// Net shift of the first core parity column once the four core rows
    /// are summed.
    core_shift: usize,
    /// Core rows in the order they determine the remaining core parity
    /// columns, with the column each one solves.
    core_order: Vec<(usize, usize)>,
}

pub fn build_code(bg: BaseGraphId, zc: usize) -> Result<LiftedLdpcCode> {
    let set_index = lifting_set_index(zc).ok_or(Error::InvalidLiftingSize(zc))?;
    let table = BaseGraphTable::get(bg)?;
    let rows: Vec<Vec<Edge>> = table
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| Edge {
                    col: e.col,
                    shift: e.shifts[set_index] as usize % zc,
                })
                .collect()
        })
        .collect();
    let (core_shift, core_order) = analyze_structure(bg, &rows)?;
    Ok(LiftedLdpcCode {
        bg,
        zc,
        set_index,
        rows,
        core_shift,
        core_order,
    })
}

/// Checks the double-diagonal core plus identity extension layout the
/// encoder relies on.
fn analyze_structure(bg: BaseGraphId, rows: &[Vec<Edge>]) -> Result<(usize, Vec<(usize, usize)>)> {
    let kb = bg.info_columns();
    let bad = |msg: String| Error::Table(format!("{bg}: {msg}"));
    for (i, row) in rows.iter().enumerate().skip(4) {
        let ext: Vec<&Edge> = row.iter().filter(|e| e.col >= kb + 4).collect();
        if ext.len() != 1 || ext[0].col != kb + i {
            return Err(bad(format!("extension row {i} must own exactly column {}", kb + i)));
        }
    }
    let mut first_parity = Vec::new();
    for p in kb..kb + 4 {
        let mut shifts: Vec<usize> = rows[..4]
            .iter()
            .flat_map(|row| row.iter().filter(|e| e.col == p).map(|e| e.shift))
            .collect();
        shifts.sort_unstable();
        let mut net = Vec::new();
        let mut k = 0;
        while k < shifts.len() {
            if k + 1 < shifts.len() && shifts[k] == shifts[k + 1] {
                k += 2;
            } else {
                net.push(shifts[k]);
                k += 1;
            }
        }
        if p == kb {
            first_parity = net;
        } else if !net.is_empty() {
            return Err(bad(format!("core parity column {p} does not cancel in the row sum")));
        }
    }
    if first_parity.len() != 1 {
        return Err(bad("first core parity column must survive the row sum once".into()));
    }
    let mut known = [true, false, false, false];
    let mut order = Vec::new();
    let mut used = [false; 4];
    while order.len() < 4 {
        let next = (0..4).find(|&i| {
            !used[i]
                && rows[i]
                    .iter()
                    .filter(|e| e.col >= kb && !known[e.col - kb])
                    .count()
                    <= 1
        });
        let Some(i) = next else {
            return Err(bad("core parity cannot be solved row by row".into()));
        };
        used[i] = true;
        if let Some(e) = rows[i].iter().find(|e| e.col >= kb && !known[e.col - kb]) {
            known[e.col - kb] = true;
            order.push((i, e.col));
        } else {
            // row fully determined; nothing left to solve
            order.push((i, usize::MAX));
        }
    }
    order.retain(|&(_, c)| c != usize::MAX);
    if known.iter().any(|k| !k) {
        return Err(bad("core parity left undetermined".into()));
    }
    Ok((first_parity[0], order))
}

impl LiftedLdpcCode {
    pub fn bg(&self) -> BaseGraphId {
        self.bg
    }

    pub fn zc(&self) -> usize {
        self.zc
    }

    pub fn set_index(&self) -> usize {
        self.set_index
    }

    pub fn k(&self) -> usize {
        self.bg.info_columns() * self.zc
    }

    pub fn n_full(&self) -> usize {
        self.bg.columns() * self.zc
    }

    pub fn n_cb(&self) -> usize {
        self.n_full() - 2 * self.zc
    }

    pub fn rows(&self) -> &[Vec<Edge>] {
        &self.rows
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub(crate) fn core_shift(&self) -> usize {
        self.core_shift
    }

    pub(crate) fn core_order(&self) -> &[(usize, usize)] {
        &self.core_order
    }
}
