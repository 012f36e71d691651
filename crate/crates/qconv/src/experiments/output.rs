//! CSV serialization: comma-separated, newline-terminated rows, full double
//! precision (17 significant digits), so every emitted value parses back to
//! the identical f64.

use std::fs;
use std::path::Path;

use crate::classical::RealGrid;
use crate::error::{Error, Result};

/// 17 significant digits: exact round-trip for f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_grid_csv(path: &Path, grid: &RealGrid) -> Result<()> {
    let mut out = String::new();
    for r in 0..grid.rows() {
        let row: Vec<String> = (0..grid.cols()).map(|c| fmt_f64(grid.get(r, c))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_grid_csv(path: &Path) -> Result<RealGrid> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| {
                cell.parse::<f64>().map_err(|e| Error::Data {
                    path: path.display().to_string(),
                    reason: format!("bad cell {cell:?}: {e}"),
                })
            })
            .collect::<Result<_>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(Error::Data {
                    path: path.display().to_string(),
                    reason: "ragged rows".into(),
                })
            }
            _ => {}
        }
        values.extend(row);
        rows += 1;
    }
    RealGrid::new(rows, cols.unwrap_or(0), values)
}

/// Header line plus rows of already-formatted cells.
pub fn write_table_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}
