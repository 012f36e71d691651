//! Classical-to-quantum data loading: window extraction, normalization, and
//! the state-preparation unitary that amplitude-encodes a patch.
//!
//! Patch values are laid out row-major into basis-state indices under the
//! global qubit ordering, so a 4x4 window fills indices 0..16 of a 4-qubit
//! state. The classical oracle flattens windows the same way; the two sides
//! must agree cell-for-cell.
//!
//! All-zero ("degenerate") windows have no normalization. They encode as the
//! ground state |0...0⟩ with the `degenerate` flag set, and downstream
//! feature maps carry the flag through to output metadata.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{StateVector, UnitaryMatrix};

/// Row-major grayscale image with pixels in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    height: usize,
    width: usize,
    pixels: Vec<f64>,
}

impl ImageGrid {
    pub fn new(height: usize, width: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != height * width {
            return Err(Error::DimensionMismatch {
                expected: height * width,
                got: pixels.len(),
            });
        }
        if let Some(&bad) = pixels.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::PixelOutOfRange(bad));
        }
        Ok(ImageGrid {
            height,
            width,
            pixels,
        })
    }

    /// Scale raw bytes by 1/255. Zero bytes stay exactly zero, which is what
    /// degeneracy detection relies on.
    pub fn from_bytes(height: usize, width: usize, bytes: &[u8]) -> Result<Self> {
        let pixels = bytes.iter().map(|&b| f64::from(b) / 255.0).collect();
        Self::new(height, width, pixels)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }
}

/// One window cut from an image; `degenerate` marks an all-zero window.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub origin_row: usize,
    pub origin_col: usize,
    pub values: Vec<f64>,
    pub degenerate: bool,
}

impl Patch {
    pub fn new(origin_row: usize, origin_col: usize, values: Vec<f64>) -> Self {
        let degenerate = values.iter().all(|&v| v == 0.0);
        Patch {
            origin_row,
            origin_col,
            values,
            degenerate,
        }
    }
}

/// A patch together with its amplitude-encoded state.
#[derive(Debug, Clone)]
pub struct EncodedPatch {
    state: StateVector,
    source: Patch,
}

impl EncodedPatch {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn source(&self) -> &Patch {
        &self.source
    }

    pub fn degenerate(&self) -> bool {
        self.source.degenerate
    }

    /// Wrap an arbitrary state as encoded data. Used where the data register
    /// is prepared by something other than a pixel patch (e.g. a uniform
    /// superposition for gradient validation).
    pub fn from_state(state: StateVector) -> Self {
        let dim = state.dim();
        let values: Vec<f64> = state.amplitudes().iter().map(|a| a.re).collect();
        EncodedPatch {
            state,
            source: Patch {
                origin_row: 0,
                origin_col: 0,
                values,
                degenerate: dim == 0,
            },
        }
    }
}

/// Shape of the window grid produced by a given traversal.
pub fn window_grid_shape(
    image: &ImageGrid,
    hh: usize,
    ww: usize,
    stride: usize,
) -> Result<(usize, usize)> {
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
    Ok((rows, cols))
}

/// Cut hh x ww windows in row-major traversal order.
pub fn extract_patches(
    image: &ImageGrid,
    hh: usize,
    ww: usize,
    stride: usize,
) -> Result<Vec<Patch>> {
    if !(hh * ww).is_power_of_two() {
        return Err(Error::NotPowerOfTwo(hh * ww));
    }
    let (rows, cols) = window_grid_shape(image, hh, ww, stride)?;
    let mut patches = Vec::with_capacity(rows * cols);
    for wr in 0..rows {
        for wc in 0..cols {
            let r0 = wr * stride;
            let c0 = wc * stride;
            let mut values = Vec::with_capacity(hh * ww);
            for dr in 0..hh {
                for dc in 0..ww {
                    values.push(image.get(r0 + dr, c0 + dc));
                }
            }
            patches.push(Patch::new(r0, c0, values));
        }
    }
    Ok(patches)
}

/// Unit vector for a patch, plus the degeneracy flag. Degenerate patches get
/// the ground-state fallback [1, 0, ..., 0].
pub fn normalize_patch(patch: &Patch) -> (Vec<f64>, bool) {
    let norm_sqr: f64 = patch.values.iter().map(|v| v * v).sum();
    if patch.degenerate || norm_sqr == 0.0 {
        let mut fallback = vec![0.0; patch.values.len()];
        fallback[0] = 1.0;
        return (fallback, true);
    }
    let norm = norm_sqr.sqrt();
    (patch.values.iter().map(|v| v / norm).collect(), false)
}

/// Build a unitary whose first column is `target`, so that applying it to
/// |0...0⟩ prepares the target vector.
///
/// Uses a Householder reflection through (e0 - target); only the first
/// column is contractual, the rest is whatever completes the basis.
pub fn preparation_unitary(target: &[f64]) -> Result<UnitaryMatrix> {
    let dim = target.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let norm_sqr: f64 = target.iter().map(|v| v * v).sum();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnitNorm {
            norm: norm_sqr.sqrt(),
        });
    }
    // w = e0 - target; H = I - 2 w wᵀ / ‖w‖² maps e0 to target.
    let mut w: Vec<f64> = target.iter().map(|v| -v).collect();
    w[0] += 1.0;
    let w_norm_sqr: f64 = w.iter().map(|v| v * v).sum();
    if w_norm_sqr < 1e-30 {
        return UnitaryMatrix::identity(dim);
    }
    let scale = 2.0 / w_norm_sqr;
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut v = -scale * w[r] * w[c];
            if r == c {
                v += 1.0;
            }
            entries[r * dim + c] = Complex64::new(v, 0.0);
        }
    }
    UnitaryMatrix::new(dim, entries)
}

/// Amplitude-encode a patch: normalize, build the preparation unitary, apply
/// it to the ground state.
pub fn encode_patch(patch: &Patch) -> Result<EncodedPatch> {
    let (unit, _) = normalize_patch(patch);
    let u = preparation_unitary(&unit)?;
    let num_qubits = u.num_qubits();
    let mut state = StateVector::new(num_qubits)?;
    let qubits: Vec<usize> = (0..num_qubits).collect();
    state.apply_unitary(&qubits, &u)?;
    Ok(EncodedPatch {
        state,
        source: patch.clone(),
    })
}
