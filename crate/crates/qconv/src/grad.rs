//! Derivative machinery for the filter ansatz: the parameter-shift rule, the
//! host-side chain rule over windows, and the ancilla-scaled routine that
//! injects an upstream gradient into the circuit itself.
//!
//! # The ancilla-scaled routine
//!
//! A second ancilla Q_Anc is rotated to cos(θ_β/2)|0⟩ + sin(θ_β/2)|1⟩ and
//! then CNOT-ed into the SWAP-test ancilla (Q_Anc as control). Conditioning
//! on the control branch flips the SWAP readout with probability
//! β² = sin²(θ_β/2), so the readout becomes
//!
//! ```text
//! P(Q_SWAP = 0) = 1/2 + (1/2 - β²) · F
//! ```
//!
//! an affine function of the fidelity F whose slope is exactly the injected
//! value d = 1/2 - β². Choosing θ_β = 2·arcsin(√(1/2 - d)) therefore scales
//! the two-point gradient difference by d on-device: the constant 1/2 cancels
//! and the shifted-readout difference equals d times the plain
//! parameter-shift gradient.
//!
//! Q_Anc's own marginal stays cos²(θ_β/2) regardless of F; the F-dependence
//! lives on the SWAP qubit, which is the one read out. [`ancilla_scaled_readout`]
//! exposes both marginals so that stays pinned by tests.
//!
//! Register layout: qubit 0 = SWAP ancilla, 1..=k filter, k+1..=2k data,
//! 2k+1 = Q_Anc.

use std::f64::consts::FRAC_PI_2;

use crate::conv::{swap_test, FilterParams, FilterState};
use crate::encoding::EncodedPatch;
use crate::error::{Error, Result};
use crate::state::{MeasurementResult, Mode, StateVector};

/// Per-window upstream gradients dL/dO, range-mapped into [-0.5, 0.5].
///
/// The original values are kept alongside the applied scale so callers can
/// multiply computed gradients back to the caller's scale.
#[derive(Debug, Clone, PartialEq)]
pub struct UpstreamGradient {
    raw: Vec<f64>,
    mapped: Vec<f64>,
    scale: f64,
}

impl UpstreamGradient {
    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn mapped(&self) -> &[f64] {
        &self.mapped
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.mapped.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapped.is_empty()
    }

    /// Undo the range mapping on a gradient computed from mapped values.
    pub fn unmap(&self, grad: f64) -> f64 {
        grad * self.scale
    }
}

/// Map raw upstream gradients into the representable range [-0.5, 0.5].
///
/// Identity when everything already fits; otherwise every value is divided
/// by 2·max|raw| and the scale is recorded.
pub fn range_map_upstream(raw: &[f64]) -> UpstreamGradient {
    let max_abs = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs <= 0.5 {
        return UpstreamGradient {
            raw: raw.to_vec(),
            mapped: raw.to_vec(),
            scale: 1.0,
        };
    }
    let scale = 2.0 * max_abs;
    UpstreamGradient {
        raw: raw.to_vec(),
        mapped: raw.iter().map(|v| v / scale).collect(),
        scale,
    }
}

/// The RY angle that injects a given upstream value: β² = 1/2 - dl_do with
/// θ_β = 2·arcsin(√β²), so the readout slope 1/2 - β² equals dl_do.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaAngle {
    pub theta_beta: f64,
    pub dl_do: f64,
    pub beta_sq: f64,
}

/// Build the injection angle for an upstream value in [-0.5, 0.5].
pub fn theta_beta(dl_do: f64) -> Result<AncillaAngle> {
    if !(-0.5..=0.5).contains(&dl_do) {
        return Err(Error::UpstreamOutOfRange(dl_do));
    }
    let beta_sq = 0.5 - dl_do;
    let angle = 2.0 * beta_sq.sqrt().asin();
    Ok(AncillaAngle {
        theta_beta: angle,
        dl_do,
        beta_sq,
    })
}

/// Readout p0 of the SWAP test between the realized ansatz and a data state.
fn swap_p0(params: &FilterParams, data: &EncodedPatch, mode: Mode) -> Result<f64> {
    let filter = FilterState::from_params(params.clone())?;
    Ok(swap_test(&filter, data, mode)?.p0())
}

/// Parameter-shift gradient of the SWAP-test readout with respect to one
/// ansatz angle: 1/2·(p0(θ+π/2) - p0(θ-π/2)).
///
/// For RY/RZ-generated parameters this is the readout's true derivative, not
/// an approximation.
pub fn param_shift_grad(
    params: &FilterParams,
    index: usize,
    data: &EncodedPatch,
    mode: Mode,
) -> Result<f64> {
    param_shift_grad_with_shift(params, index, data, mode, FRAC_PI_2)
}

/// Two-point rule with a tunable shift; the π/2 default is the exact one.
/// Shifted evaluations use distinct derived sampling streams.
pub fn param_shift_grad_with_shift(
    params: &FilterParams,
    index: usize,
    data: &EncodedPatch,
    mode: Mode,
    shift: f64,
) -> Result<f64> {
    params.check_index(index)?;
    let plus = swap_p0(&params.shifted(index, shift)?, data, mode.derive(0))?;
    let minus = swap_p0(&params.shifted(index, -shift)?, data, mode.derive(1))?;
    Ok(0.5 * (plus - minus))
}

/// Host-side chain rule: sum over windows of dL/dO_j times that window's
/// parameter-shift gradient. This is the post-processed reference the
/// circuit-injected route is validated against.
pub fn chain_grad_host(
    upstream: &UpstreamGradient,
    params: &FilterParams,
    patches: &[EncodedPatch],
    index: usize,
    mode: Mode,
) -> Result<f64> {
    if upstream.len() != patches.len() {
        return Err(Error::UpstreamLengthMismatch {
            upstream: upstream.len(),
            windows: patches.len(),
        });
    }
    params.check_index(index)?;
    let mut total = 0.0;
    for (j, (dl, patch)) in upstream.mapped().iter().zip(patches).enumerate() {
        let g = param_shift_grad(params, index, patch, mode.derive(j as u64))?;
        total += dl * g;
    }
    Ok(total)
}

/// Marginals of the ancilla-scaled circuit in exact mode: the SWAP readout
/// qubit and the injection control qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaReadout {
    /// P(Q_SWAP = 0) = 1/2 + (1/2 - β²)·F.
    pub swap_p0: f64,
    /// P(Q_Anc = 0) = cos²(θ_β/2), independent of F.
    pub control_p0: f64,
}

fn ancilla_scaled_joint(
    a: &StateVector,
    b: &StateVector,
    angle: &AncillaAngle,
) -> Result<StateVector> {
    if a.num_qubits() != b.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let k = a.num_qubits();
    let control = 2 * k + 1;
    let swap_anc = StateVector::new(1)?;
    let ctl_anc = StateVector::new(1)?;
    let mut joint = swap_anc.tensor(a).tensor(b).tensor(&ctl_anc);
    joint.apply_ry(control, angle.theta_beta)?;
    joint.apply_h(0)?;
    for j in 0..k {
        joint.apply_cswap(0, 1 + j, 1 + k + j)?;
    }
    joint.apply_h(0)?;
    joint.apply_cnot(control, 0)?;
    Ok(joint)
}

/// Ancilla-scaled SWAP test between two prepared states, read on the SWAP
/// qubit. Exact contract: p0 = 1/2 + (1/2 - β²)·F.
pub fn ancilla_scaled_probability_states(
    a: &StateVector,
    b: &StateVector,
    angle: &AncillaAngle,
    mode: Mode,
) -> Result<MeasurementResult> {
    let joint = ancilla_scaled_joint(a, b, angle)?;
    joint.measure(0, mode)
}

/// Run the SWAP test with the injection ancilla entangled in, and read the
/// SWAP qubit.
pub fn ancilla_scaled_probability(
    filter: &FilterState,
    data: &EncodedPatch,
    angle: &AncillaAngle,
    mode: Mode,
) -> Result<MeasurementResult> {
    ancilla_scaled_probability_states(filter.realized(), data.state(), angle, mode)
}

/// Exact marginals of both ancillas after the scaled circuit.
pub fn ancilla_scaled_readout_states(
    a: &StateVector,
    b: &StateVector,
    angle: &AncillaAngle,
) -> Result<AncillaReadout> {
    let k = a.num_qubits();
    let joint = ancilla_scaled_joint(a, b, angle)?;
    Ok(AncillaReadout {
        swap_p0: joint.prob_zero(0)?,
        control_p0: joint.prob_zero(2 * k + 1)?,
    })
}

/// Exact marginals for a filter/data pair.
pub fn ancilla_scaled_readout(
    filter: &FilterState,
    data: &EncodedPatch,
    angle: &AncillaAngle,
) -> Result<AncillaReadout> {
    ancilla_scaled_readout_states(filter.realized(), data.state(), angle)
}

/// Gradient with the upstream value absorbed on-device:
/// 1/4·(p0_anc(θ+π/2) - p0_anc(θ-π/2)).
///
/// In exact mode this equals `dl_do × param_shift_grad` identically; the
/// constant 1/2 offsets cancel in the difference.
pub fn entangled_grad(
    dl_do: f64,
    params: &FilterParams,
    index: usize,
    data: &EncodedPatch,
    mode: Mode,
) -> Result<f64> {
    params.check_index(index)?;
    let angle = theta_beta(dl_do)?;
    let eval = |p: FilterParams, m: Mode| -> Result<f64> {
        let filter = FilterState::from_params(p)?;
        Ok(ancilla_scaled_probability(&filter, data, &angle, m)?.p0())
    };
    let plus = eval(params.shifted(index, FRAC_PI_2)?, mode.derive(0))?;
    let minus = eval(params.shifted(index, -FRAC_PI_2)?, mode.derive(1))?;
    Ok(0.25 * (plus - minus))
}

/// Central-difference oracle on the exact SWAP-test readout.
pub fn finite_diff_grad(
    params: &FilterParams,
    index: usize,
    data: &EncodedPatch,
    epsilon: f64,
) -> Result<f64> {
    if epsilon <= 0.0 {
        return Err(Error::NonPositiveEpsilon(epsilon));
    }
    params.check_index(index)?;
    let plus = swap_p0(&params.shifted(index, epsilon)?, data, Mode::Exact)?;
    let minus = swap_p0(&params.shifted(index, -epsilon)?, data, Mode::Exact)?;
    Ok((plus - minus) / (2.0 * epsilon))
}

/// Side-by-side estimates of one derivative via the three routes.
///
/// Which derivative the columns hold depends on the producing experiment:
/// the gradient checker reports per-window dO/dθ (entangled route divided by
/// the injected upstream value), the backpropagation validation reports
/// dL/dθ with the upstream value absorbed by each route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientRecord {
    pub param_index: usize,
    /// 0 means exact evaluation.
    pub shots: u64,
    pub param_shift: f64,
    pub entangled: f64,
    pub finite_diff: f64,
    /// |param_shift - entangled|.
    pub abs_error: f64,
}

impl GradientRecord {
    pub fn new(
        param_index: usize,
        shots: u64,
        param_shift: f64,
        entangled: f64,
        finite_diff: f64,
    ) -> Self {
        GradientRecord {
            param_index,
            shots,
            param_shift,
            entangled,
            finite_diff,
            abs_error: (param_shift - entangled).abs(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GradientReport {
    pub records: Vec<GradientRecord>,
}

impl GradientReport {
    pub fn max_abs_error(&self) -> f64 {
        self.records.iter().fold(0.0, |m, r| m.max(r.abs_error))
    }

    /// Median of |param_shift - entangled| over records with this shot count.
    pub fn median_abs_error_at(&self, shots: u64) -> Option<f64> {
        let mut errs: Vec<f64> = self
            .records
            .iter()
            .filter(|r| r.shots == shots)
            .map(|r| r.abs_error)
            .collect();
        if errs.is_empty() {
            return None;
        }
        errs.sort_by(|a, b| a.partial_cmp(b).expect("errors are finite"));
        Some(errs[errs.len() / 2])
    }
}
