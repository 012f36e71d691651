//! Filter/target resolution shared by the experiments: a unit-norm vector
//! from a text file, or a seeded random ansatz.

use std::fs;
use std::path::Path;

use crate::conv::{FilterParams, FilterState};
use crate::encoding::preparation_unitary;
use crate::error::{Error, Result};

/// A filter with both its classical weight vector and quantum state. The two
/// views hold the same unit vector, which is what makes the classical
/// comparison exact.
pub struct ResolvedFilter {
    pub weights: Vec<f64>,
    pub state: FilterState,
    pub warnings: Vec<String>,
}

/// Read a filter vector file: one decimal real per line, `len` lines, unit
/// norm within 1e-6 (renormalized with a warning otherwise).
pub fn read_filter_vector(path: &Path, len: usize) -> Result<(Vec<f64>, bool)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Data {
        path: path.display().to_string(),
        reason: format!("cannot read filter file: {e}"),
    })?;
    let values: Vec<f64> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<f64>().map_err(|e| Error::Data {
                path: path.display().to_string(),
                reason: format!("bad filter value {l:?}: {e}"),
            })
        })
        .collect::<Result<_>>()?;
    if values.len() != len {
        return Err(Error::Data {
            path: path.display().to_string(),
            reason: format!("expected {len} values, found {}", values.len()),
        });
    }
    let norm: f64 = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Data {
            path: path.display().to_string(),
            reason: "filter vector has zero norm".into(),
        });
    }
    if (norm - 1.0).abs() <= 1e-6 {
        // Snap to exact unit norm so the unitary construction accepts it.
        let unit: Vec<f64> = values.iter().map(|v| v / norm).collect();
        Ok((unit, false))
    } else {
        Ok((values.iter().map(|v| v / norm).collect(), true))
    }
}

/// Build a filter from a file vector via the loading unitary.
pub fn filter_from_file(path: &Path, len: usize) -> Result<ResolvedFilter> {
    let (weights, renormalized) = read_filter_vector(path, len)?;
    let state = FilterState::from_unitary(preparation_unitary(&weights)?)?;
    let mut warnings = Vec::new();
    if renormalized {
        warnings.push(format!(
            "filter {} was not unit norm within 1e-6; renormalized",
            path.display()
        ));
    }
    Ok(ResolvedFilter {
        weights,
        state,
        warnings,
    })
}

/// Seeded random filter with real amplitudes: a random-RY ansatz with the
/// phase layer zeroed, so the realized state doubles as a classical weight
/// vector.
pub fn random_real_filter(num_qubits: usize, n_reps: usize, seed: u64) -> Result<ResolvedFilter> {
    let mut params = FilterParams::random(num_qubits, n_reps, seed)?;
    for rep in 0..n_reps {
        for q in 0..num_qubits {
            let rz_index = rep * 2 * num_qubits + num_qubits + q;
            params.set_theta(rz_index, 0.0)?;
        }
    }
    let state = FilterState::from_params(params)?;
    let weights: Vec<f64> = state.realized().amplitudes().iter().map(|a| a.re).collect();
    debug_assert!(state
        .realized()
        .amplitudes()
        .iter()
        .all(|a| a.im.abs() < 1e-12));
    Ok(ResolvedFilter {
        weights,
        state,
        warnings: Vec::new(),
    })
}
