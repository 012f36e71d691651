//! Classical reference implementations used for equivalence testing: plain
//! convolution, its per-window-normalized variant (the exact bridge to the
//! quantum layer's output), and grid comparison statistics.
//!
//! The bridge identity: for a unit-norm filter w and a window with normalized
//! pixel vector x̂, the quantum layer's exact similarity equals (w · x̂)².
//! Per-window normalization is what makes the two sides equal rather than
//! merely correlated, so this module defines both the raw map and the
//! normalized map.

use crate::encoding::{normalize_patch, ImageGrid, Patch};
use crate::error::{Error, Result};

/// Row-major grid of reals; the common currency for maps and CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl RealGrid {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: values.len(),
            });
        }
        Ok(RealGrid { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }
}

/// A convolution filter; weights are row-major hh x ww.
#[derive(Debug, Clone)]
pub struct ClassicalFilter {
    hh: usize,
    ww: usize,
    weights: Vec<f64>,
}

impl ClassicalFilter {
    pub fn new(hh: usize, ww: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != hh * ww {
            return Err(Error::DimensionMismatch {
                expected: hh * ww,
                got: weights.len(),
            });
        }
        Ok(ClassicalFilter { hh, ww, weights })
    }

    pub fn hh(&self) -> usize {
        self.hh
    }

    pub fn ww(&self) -> usize {
        self.ww
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    fn require_unit_norm(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitFilter { norm });
        }
        Ok(())
    }
}

fn traverse<F>(image: &ImageGrid, hh: usize, ww: usize, stride: usize, mut f: F) -> Result<RealGrid>
where
    F: FnMut(&Patch) -> f64,
{
    if stride < 1 {
        return Err(Error::ZeroStride);
    }
    if hh == 0 || ww == 0 || hh > image.height() || ww > image.width() {
        return Err(Error::WindowGeometry {
            hh,
            ww,
            height: image.height(),
            width: image.width(),
        });
    }
    let rows = (image.height() - hh) / stride + 1;
    let cols = (image.width() - ww) / stride + 1;
    let mut values = Vec::with_capacity(rows * cols);
    for wr in 0..rows {
        for wc in 0..cols {
            let r0 = wr * stride;
            let c0 = wc * stride;
            let mut window = Vec::with_capacity(hh * ww);
            for dr in 0..hh {
                for dc in 0..ww {
                    window.push(image.get(r0 + dr, c0 + dc));
                }
            }
            values.push(f(&Patch::new(r0, c0, window)));
        }
    }
    RealGrid::new(rows, cols, values)
}

/// Plain convolution: per window, the dot product of the filter with the raw
/// (unnormalized) pixels, traversed row-major.
pub fn classical_conv(
    image: &ImageGrid,
    filter: &ClassicalFilter,
    stride: usize,
) -> Result<RealGrid> {
    traverse(image, filter.hh, filter.ww, stride, |patch| {
        filter
            .weights
            .iter()
            .zip(&patch.values)
            .map(|(w, x)| w * x)
            .sum()
    })
}

/// Per window: (w · x̂)² with x̂ the normalized pixel vector. This is exactly
/// the similarity the quantum layer reports in exact mode. Degenerate
/// windows mirror the quantum fallback (overlap with the ground state), i.e.
/// the squared first filter weight.
pub fn normalized_similarity_map(
    image: &ImageGrid,
    filter: &ClassicalFilter,
    stride: usize,
) -> Result<RealGrid> {
    filter.require_unit_norm()?;
    traverse(image, filter.hh, filter.ww, stride, |patch| {
        let (unit, _) = normalize_patch(patch);
        let dot: f64 = filter.weights.iter().zip(&unit).map(|(w, x)| w * x).sum();
        dot * dot
    })
}

/// Elementwise error statistics plus Pearson correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonStats {
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    pub pearson_r: f64,
}

pub fn compare_maps(a: &RealGrid, b: &RealGrid) -> Result<ComparisonStats> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::GridShapeMismatch {
            a_rows: a.rows,
            a_cols: a.cols,
            b_rows: b.rows,
            b_cols: b.cols,
        });
    }
    let n = a.values.len() as f64;
    let mut max_abs = 0.0f64;
    let mut sum_abs = 0.0f64;
    for (x, y) in a.values.iter().zip(&b.values) {
        let e = (x - y).abs();
        max_abs = max_abs.max(e);
        sum_abs += e;
    }
    let mean_a: f64 = a.values.iter().sum::<f64>() / n;
    let mean_b: f64 = b.values.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        let dx = x - mean_a;
        let dy = y - mean_b;
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    // Constant grids carry no correlation signal; report 1 for an exact
    // match and 0 otherwise rather than dividing by zero.
    let pearson_r = if var_a < 1e-30 || var_b < 1e-30 {
        if max_abs == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        cov / (var_a.sqrt() * var_b.sqrt())
    };
    Ok(ComparisonStats {
        max_abs_error: max_abs,
        mean_abs_error: sum_abs / n,
        pearson_r,
    })
}
