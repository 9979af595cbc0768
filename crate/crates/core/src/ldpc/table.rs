//! Base graph shift tables. The format is described in `data/README.md`.

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use super::BaseGraphId;
use crate::{Error, Result};

/// Directory override for the base graph tables.
pub const TABLE_DIR_ENV: &str = "NRPHY_TABLE_DIR";

const BG1_TEXT: &str = include_str!("../../data/bg1.txt");
const BG2_TEXT: &str = include_str!("../../data/bg2.txt");

/// One nonzero base-graph entry with its per-set shift coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub col: usize,
    pub shifts: [u16; 8],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraphTable {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<TableEntry>>,
}

impl BaseGraphTable {
    pub fn parse(text: &str) -> Result<BaseGraphTable> {
        let mut dims = None;
        let mut entries: Vec<Vec<TableEntry>> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Table(format!("line {}: {msg}", n + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "dims" {
                if fields.len() != 3 || dims.is_some() {
                    return Err(err("malformed dims directive"));
                }
                let r: usize = fields[1].parse().map_err(|_| err("bad row count"))?;
                let c: usize = fields[2].parse().map_err(|_| err("bad column count"))?;
                dims = Some((r, c));
                entries = vec![Vec::new(); r];
                continue;
            }
            let (rows, cols) = dims.ok_or_else(|| err("record before dims"))?;
            if fields.len() != 10 {
                return Err(err("expected row, column and 8 shift values"));
            }
            let nums = fields
                .iter()
                .map(|f| f.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("non-numeric field"))?;
            let (row, col) = (nums[0], nums[1]);
            if row >= rows || col >= cols {
                return Err(err("coordinates outside dims"));
            }
            if entries[row + 1..].iter().any(|r| !r.is_empty()) {
                return Err(err("rows out of order"));
            }
            if entries[row].iter().any(|e| e.col == col) {
                return Err(err("duplicate entry"));
            }
            let mut shifts = [0u16; 8];
            for (s, &v) in shifts.iter_mut().zip(&nums[2..]) {
                *s = u16::try_from(v).map_err(|_| err("shift out of range"))?;
            }
            entries[row].push(TableEntry { col, shifts });
        }
        let (rows, cols) = dims.ok_or_else(|| Error::Table("missing dims directive".into()))?;
        if let Some(r) = entries.iter().position(|r| r.is_empty()) {
            return Err(Error::Table(format!("row {r} has no entries")));
        }
        Ok(BaseGraphTable { rows, cols, entries })
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    fn load(bg: BaseGraphId) -> Result<BaseGraphTable> {
        let name = match bg {
            BaseGraphId::BG1 => "bg1.txt",
            BaseGraphId::BG2 => "bg2.txt",
        };
        let table = match std::env::var_os(TABLE_DIR_ENV) {
            Some(dir) => {
                let path = PathBuf::from(dir).join(name);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
                Self::parse(&text)?
            }
            None => Self::parse(match bg {
                BaseGraphId::BG1 => BG1_TEXT,
                BaseGraphId::BG2 => BG2_TEXT,
            })?,
        };
        if table.rows != bg.rows() || table.cols != bg.columns() {
            return Err(Error::Table(format!(
                "{name} has dims {}x{}, expected {}x{}",
                table.rows,
                table.cols,
                bg.rows(),
                bg.columns()
            )));
        }
        Ok(table)
    }

    /// The table for `bg`, loaded once per process.
    pub fn get(bg: BaseGraphId) -> Result<Arc<BaseGraphTable>> {
        static BG1: OnceLock<Result<Arc<BaseGraphTable>>> = OnceLock::new();
        static BG2: OnceLock<Result<Arc<BaseGraphTable>>> = OnceLock::new();
        let cell = match bg {
            BaseGraphId::BG1 => &BG1,
            BaseGraphId::BG2 => &BG2,
        };
        cell.get_or_init(|| Self::load(bg).map(Arc::new)).clone()
    }
}
