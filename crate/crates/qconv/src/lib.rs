//! Quantum convolutional layer on a dense statevector simulator.
//!
//! A filter is a small quantum state (parameterized ansatz or ideal loading
//! unitary); an image is windowed into amplitude-encoded patches; the layer's
//! output per window is the SWAP-test overlap between filter and patch. The
//! crate provides the full stack around that idea:
//!
//! - [`state`] — statevector simulation: gates, exact marginals, seeded
//!   sampling.
//! - [`encoding`] — window extraction, normalization, state preparation.
//! - [`conv`] — the filter ansatz, SWAP tests, and feature maps.
//! - [`grad`] — parameter-shift gradients, the host-side chain rule, and the
//!   ancilla-scaled routine that injects upstream gradients on-device.
//! - [`training`] — fitting an ansatz to a target state.
//! - [`classical`] — exact classical references for equivalence testing.
//! - [`mnist`] — IDX image loading.
//! - [`experiments`] — the reproducible experiment runners behind the CLI.
//!
//! Everything sampled is seeded and stream-split, so identical seeds give
//! byte-identical results at any thread count. Start with the `examples/`
//! directory: each one is a runnable walkthrough of one capability.
//!
//! ```
//! use qconv::encoding::{encode_patch, Patch};
//! use qconv::state::Mode;
//! use qconv::{param_shift_grad, swap_test, FilterParams, FilterState};
//!
//! // A random 4-qubit filter and one amplitude-encoded 4x4 window.
//! let params = FilterParams::random(4, 2, 42)?;
//! let filter = FilterState::from_params(params.clone())?;
//! let window = encode_patch(&Patch::new(0, 0, vec![0.25; 16]))?;
//!
//! // Forward: the ancilla reads 0 with probability 1/2 + 1/2·F.
//! let readout = swap_test(&filter, &window, Mode::Exact)?;
//! let similarity = 2.0 * readout.exact_p0 - 1.0;
//! assert!((0.0..=1.0).contains(&similarity));
//!
//! // Backward: the exact derivative of the readout for one ansatz angle.
//! let gradient = param_shift_grad(&params, 0, &window, Mode::Exact)?;
//! assert!(gradient.is_finite());
//! # Ok::<(), qconv::Error>(())
//! ```

pub mod classical;
pub mod conv;
pub mod encoding;
pub mod error;
pub mod experiments;
pub mod grad;
pub mod mnist;
pub mod rng;
pub mod state;
pub mod training;

#[cfg(test)]
pub(crate) mod testkit;

pub use classical::{
    classical_conv, compare_maps, normalized_similarity_map, ClassicalFilter, ComparisonStats,
    RealGrid,
};
pub use conv::{
    conv_forward, conv_forward_multi, swap_test, swap_test_states, FeatureCell, FeatureMap,
    FilterParams, FilterSource, FilterState,
};
pub use encoding::{
    encode_patch, extract_patches, normalize_patch, preparation_unitary, EncodedPatch, ImageGrid,
    Patch,
};
pub use error::{Error, Result};
pub use grad::{
    ancilla_scaled_probability, ancilla_scaled_probability_states, ancilla_scaled_readout,
    ancilla_scaled_readout_states, chain_grad_host, entangled_grad, finite_diff_grad,
    param_shift_grad, range_map_upstream, theta_beta, AncillaAngle, AncillaReadout, GradientRecord,
    GradientReport, UpstreamGradient,
};
pub use state::{MeasurementResult, Mode, StateVector, UnitaryMatrix, MAX_QUBITS};
pub use training::{
    state_fidelity_loss, train_filter, TrainingConfig, TrainingTrajectory, TrajectoryPoint,
};
