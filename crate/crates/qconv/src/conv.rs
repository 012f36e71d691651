//! The quantum convolutional forward pass: build the filter state, SWAP-test
//! it against each encoded window, and assemble the feature map.
//!
//! The SWAP test estimates state overlap: with the ancilla read in the Z
//! basis, P(0) = 1/2 + 1/2·|⟨ψ|φ⟩|², so the fidelity estimate is 2·p0 - 1.
//! Register layout is fixed: qubit 0 is the ancilla, qubits 1..=k hold the
//! filter, qubits k+1..=2k hold the data. A filter state over k qubits
//! convolves with k-qubit encoded windows.
//!
//! Windows share no state, so the map evaluates them in parallel; shot
//! sampling uses per-window derived seeds, making results independent of
//! scheduling.

use rayon::prelude::*;

use crate::classical::RealGrid;
use crate::encoding::{encode_patch, extract_patches, window_grid_shape, EncodedPatch, ImageGrid};
use crate::error::{Error, Result};
use crate::rng::seeded_rng;
use crate::state::{MeasurementResult, Mode, StateVector, UnitaryMatrix};

/// Trainable angles of the filter ansatz, indexed (repetition, layer, qubit)
/// with layer 0 = RY and layer 1 = RZ. The flat parameter index used by the
/// gradient machinery runs rep-major: `rep * 2 * nq + layer * nq + qubit`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterParams {
    num_qubits: usize,
    n_reps: usize,
    thetas: Vec<f64>,
}

impl FilterParams {
    pub fn new(num_qubits: usize, n_reps: usize, thetas: Vec<f64>) -> Result<Self> {
        if num_qubits < 1 {
            return Err(Error::AnsatzShape("num_qubits must be >= 1".into()));
        }
        if n_reps < 1 {
            return Err(Error::AnsatzShape("n_reps must be >= 1".into()));
        }
        let expected = 2 * n_reps * num_qubits;
        if thetas.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: thetas.len(),
            });
        }
        Ok(FilterParams {
            num_qubits,
            n_reps,
            thetas,
        })
    }

    pub fn zeros(num_qubits: usize, n_reps: usize) -> Result<Self> {
        Self::new(num_qubits, n_reps, vec![0.0; 2 * n_reps * num_qubits])
    }

    /// Angles drawn uniformly from [-π, π] with a seeded generator.
    pub fn random(num_qubits: usize, n_reps: usize, seed: u64) -> Result<Self> {
        use rand::Rng;
        let mut rng = seeded_rng(seed);
        let thetas = (0..2 * n_reps * num_qubits)
            .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        Self::new(num_qubits, n_reps, thetas)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn n_reps(&self) -> usize {
        self.n_reps
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn theta(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        Ok(self.thetas[index])
    }

    pub fn set_theta(&mut self, index: usize, value: f64) -> Result<()> {
        self.check_index(index)?;
        self.thetas[index] = value;
        Ok(())
    }

    /// Copy with one angle shifted by `delta`.
    pub fn shifted(&self, index: usize, delta: f64) -> Result<Self> {
        self.check_index(index)?;
        let mut out = self.clone();
        out.thetas[index] += delta;
        Ok(out)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.thetas.len() {
            return Err(Error::ParamIndexOutOfRange {
                index,
                count: self.thetas.len(),
            });
        }
        Ok(())
    }

    pub fn ry_theta(&self, rep: usize, qubit: usize) -> f64 {
        self.thetas[rep * 2 * self.num_qubits + qubit]
    }

    pub fn rz_theta(&self, rep: usize, qubit: usize) -> f64 {
        self.thetas[rep * 2 * self.num_qubits + self.num_qubits + qubit]
    }
}

/// How the filter state is produced: a parameterized ansatz or an ideal
/// loading unitary.
#[derive(Debug, Clone)]
pub enum FilterSource {
    Ansatz(FilterParams),
    Ideal(UnitaryMatrix),
}

/// A filter ready for convolution: its source plus the realized state.
#[derive(Debug, Clone)]
pub struct FilterState {
    source: FilterSource,
    realized: StateVector,
}

impl FilterState {
    /// Run the ansatz circuit on |0...0⟩: per repetition, an RY on every
    /// qubit, an RZ on every qubit, then the ascending CNOT chain
    /// q → q+1 (no wrap-around).
    pub fn from_params(params: FilterParams) -> Result<Self> {
        let nq = params.num_qubits;
        let mut state = StateVector::new(nq)?;
        for rep in 0..params.n_reps {
            for q in 0..nq {
                state.apply_ry(q, params.ry_theta(rep, q))?;
            }
            for q in 0..nq {
                state.apply_rz(q, params.rz_theta(rep, q))?;
            }
            for q in 0..nq.saturating_sub(1) {
                state.apply_cnot(q, q + 1)?;
            }
        }
        Ok(FilterState {
            source: FilterSource::Ansatz(params),
            realized: state,
        })
    }

    /// Apply an ideal loading unitary to |0...0⟩.
    pub fn from_unitary(u: UnitaryMatrix) -> Result<Self> {
        let nq = u.num_qubits();
        let mut state = StateVector::new(nq)?;
        let qubits: Vec<usize> = (0..nq).collect();
        state.apply_unitary(&qubits, &u)?;
        Ok(FilterState {
            source: FilterSource::Ideal(u),
            realized: state,
        })
    }

    pub fn source(&self) -> &FilterSource {
        &self.source
    }

    pub fn realized(&self) -> &StateVector {
        &self.realized
    }

    pub fn num_qubits(&self) -> usize {
        self.realized.num_qubits()
    }

    pub fn params(&self) -> Option<&FilterParams> {
        match &self.source {
            FilterSource::Ansatz(p) => Some(p),
            FilterSource::Ideal(_) => None,
        }
    }
}

/// SWAP test between two prepared states of equal width.
///
/// Circuit: ancilla |0⟩, H, one CSWAP per qubit pair, H, read the ancilla.
/// In exact mode the result carries p0 = 1/2 + 1/2·|⟨a|b⟩|² to machine
/// precision.
pub fn swap_test_states(a: &StateVector, b: &StateVector, mode: Mode) -> Result<MeasurementResult> {
    if a.num_qubits() != b.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let k = a.num_qubits();
    let ancilla = StateVector::new(1)?;
    let mut joint = ancilla.tensor(a).tensor(b);
    joint.apply_h(0)?;
    for j in 0..k {
        joint.apply_cswap(0, 1 + j, 1 + k + j)?;
    }
    joint.apply_h(0)?;
    joint.measure(0, mode)
}

/// SWAP test of a filter against an encoded data window.
pub fn swap_test(
    filter: &FilterState,
    data: &EncodedPatch,
    mode: Mode,
) -> Result<MeasurementResult> {
    swap_test_states(filter.realized(), data.state(), mode)
}

/// One feature-map cell: the ancilla zero-probability, the recovered
/// fidelity estimate, and window metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureCell {
    pub p0: f64,
    pub similarity: f64,
    pub degenerate: bool,
    pub shots_used: u64,
}

/// Grid of per-window SWAP-test outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    rows: usize,
    cols: usize,
    cells: Vec<FeatureCell>,
}

impl FeatureMap {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[FeatureCell] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &FeatureCell {
        &self.cells[row * self.cols + col]
    }

    pub fn p0_grid(&self) -> RealGrid {
        RealGrid::new(
            self.rows,
            self.cols,
            self.cells.iter().map(|c| c.p0).collect(),
        )
        .expect("cell count matches shape")
    }

    pub fn similarity_grid(&self) -> RealGrid {
        RealGrid::new(
            self.rows,
            self.cols,
            self.cells.iter().map(|c| c.similarity).collect(),
        )
        .expect("cell count matches shape")
    }

    /// 1.0 where the window was degenerate, 0.0 elsewhere.
    pub fn degenerate_grid(&self) -> RealGrid {
        RealGrid::new(
            self.rows,
            self.cols,
            self.cells
                .iter()
                .map(|c| if c.degenerate { 1.0 } else { 0.0 })
                .collect(),
        )
        .expect("cell count matches shape")
    }
}

fn cell_from(meas: MeasurementResult, degenerate: bool, exact: bool) -> FeatureCell {
    let p0 = meas.p0();
    let raw = 2.0 * p0 - 1.0;
    // Sampling can push the estimate outside [0, 1]; exact mode never does.
    let similarity = if exact { raw } else { raw.clamp(0.0, 1.0) };
    FeatureCell {
        p0,
        similarity,
        degenerate,
        shots_used: meas.shots,
    }
}

/// Encode every window of an image once, for reuse across filters.
pub fn encode_windows(
    image: &ImageGrid,
    hh: usize,
    ww: usize,
    stride: usize,
) -> Result<(Vec<EncodedPatch>, usize, usize)> {
    let (rows, cols) = window_grid_shape(image, hh, ww, stride)?;
    let patches = extract_patches(image, hh, ww, stride)?;
    let encoded: Vec<EncodedPatch> = patches
        .par_iter()
        .map(encode_patch)
        .collect::<Result<_>>()?;
    Ok((encoded, rows, cols))
}

/// Feature map over pre-encoded windows. Window i samples with stream
/// `mode.derive(i)`.
pub fn conv_forward_encoded(
    encoded: &[EncodedPatch],
    rows: usize,
    cols: usize,
    filter: &FilterState,
    mode: Mode,
) -> Result<FeatureMap> {
    if encoded.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            got: encoded.len(),
        });
    }
    let cells: Vec<FeatureCell> = encoded
        .par_iter()
        .enumerate()
        .map(|(i, window)| {
            let meas = swap_test(filter, window, mode.derive(i as u64))?;
            Ok(cell_from(meas, window.degenerate(), mode.is_exact()))
        })
        .collect::<Result<_>>()?;
    Ok(FeatureMap { rows, cols, cells })
}

/// Full forward pass of one filter over an image.
pub fn conv_forward(
    image: &ImageGrid,
    filter: &FilterState,
    hh: usize,
    ww: usize,
    stride: usize,
    mode: Mode,
) -> Result<FeatureMap> {
    let (encoded, rows, cols) = encode_windows(image, hh, ww, stride)?;
    conv_forward_encoded(&encoded, rows, cols, filter, mode)
}

/// Forward pass of several filters over one image; windows are encoded once.
/// Filter f samples with stream `mode.derive(f)` further split per window.
pub fn conv_forward_multi(
    image: &ImageGrid,
    filters: &[FilterState],
    hh: usize,
    ww: usize,
    stride: usize,
    mode: Mode,
) -> Result<Vec<FeatureMap>> {
    let (encoded, rows, cols) = encode_windows(image, hh, ww, stride)?;
    filters
        .iter()
        .enumerate()
        .map(|(f, filter)| {
            conv_forward_encoded(&encoded, rows, cols, filter, mode.derive(f as u64))
        })
        .collect()
}
