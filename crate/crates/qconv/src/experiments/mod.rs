//! Experiment orchestration: configuration, the runners behind the CLI
//! subcommands, and plot-ready CSV serialization.
//!
//! Every run is deterministic for a fixed master seed. Distinct uses of
//! randomness (filter draw, per-image sampling, per-iteration sampling, ...)
//! derive their own child seeds from named streams, so outputs do not depend
//! on evaluation order or thread count.

pub mod config;
pub mod output;

mod backprop;
mod filters;
mod forward;
mod gradcheck;
mod learning;

pub use backprop::{run_backprop_validation, uniform_data, BackpropArtifacts, SHOT_SCHEDULE};
pub use config::{ExperimentConfig, FilterSourceSpec, Overrides, ShotsSpec};
pub use filters::{filter_from_file, random_real_filter, read_filter_vector, ResolvedFilter};
pub use forward::{run_forward_experiment, ForwardArtifacts, ForwardStats, ImageArtifacts};
pub use gradcheck::{run_gradcheck, GradcheckArtifacts};
pub use learning::{run_state_learning, LearningArtifacts, TRAINED_DEPTHS};

// Named seed streams off the master seed.
const STREAM_FILTER: u64 = 0xF1;
const STREAM_TARGET: u64 = 0xF2;
const STREAM_PARAMS: u64 = 0xF3;
const STREAM_DATA: u64 = 0xF4;
const STREAM_IMAGE_BASE: u64 = 0x1000;
const STREAM_TRAIN_BASE: u64 = 0x2000;
const STREAM_SCHEDULE_BASE: u64 = 0x3000;
