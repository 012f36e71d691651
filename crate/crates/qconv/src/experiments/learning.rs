//! State-learning experiment: train ansatz depths n = 1..3 against one
//! target state and emit a trajectory CSV per depth plus a final summary.

use std::fs;
use std::path::PathBuf;

use crate::conv::{FilterParams, FilterState};
use crate::error::Result;
use crate::rng::derive_seed;
use crate::training::{train_filter, TrainingConfig, TrainingTrajectory};

use super::config::{ExperimentConfig, FilterSourceSpec, ShotsSpec};
use super::filters::filter_from_file;
use super::output::{fmt_f64, write_table_csv};
use super::{STREAM_TARGET, STREAM_TRAIN_BASE};

pub const TRAINED_DEPTHS: [usize; 3] = [1, 2, 3];

pub struct LearningArtifacts {
    pub target: FilterState,
    pub trajectories: Vec<(usize, TrainingTrajectory)>,
    pub warnings: Vec<String>,
    pub written: Vec<PathBuf>,
}

pub fn run_state_learning(config: &ExperimentConfig) -> Result<LearningArtifacts> {
    let (hh, ww) = config.window;
    let mut warnings = Vec::new();
    let target = match &config.filter_source {
        FilterSourceSpec::File(path) => {
            let resolved = filter_from_file(path, hh * ww)?;
            warnings.extend(resolved.warnings);
            resolved.state
        }
        FilterSourceSpec::Random => {
            // A deep random ansatz stands in for a classically-trained state.
            let params = FilterParams::random(
                config.window_qubits(),
                3,
                derive_seed(config.seed, STREAM_TARGET),
            )?;
            FilterState::from_params(params)?
        }
    };

    fs::create_dir_all(&config.output_dir)?;
    let mut written = Vec::new();
    let mut trajectories = Vec::new();
    let mut summary_rows = Vec::new();

    for &n_reps in &TRAINED_DEPTHS {
        let mode = match config.shots {
            ShotsSpec::Exact => crate::state::Mode::Exact,
            ShotsSpec::Count(_) => config.mode_for_stream(STREAM_TRAIN_BASE + n_reps as u64),
        };
        let training = TrainingConfig::new(n_reps)
            .with_learning_rate(config.learning_rate)
            .with_max_iters(config.max_iters)
            .with_seed(derive_seed(config.seed, STREAM_TRAIN_BASE + n_reps as u64))
            .with_target_fidelity(config.target_fidelity)
            .with_mode(mode);
        let trajectory = train_filter(&target, &training)?;

        let path = config.output_dir.join(format!("train_n{n_reps}.csv"));
        let rows: Vec<Vec<String>> = trajectory
            .points
            .iter()
            .map(|p| vec![p.iter.to_string(), fmt_f64(p.fidelity), fmt_f64(p.loss)])
            .collect();
        write_table_csv(&path, &["iter", "fidelity", "loss"], &rows)?;
        written.push(path);

        summary_rows.push(vec![
            n_reps.to_string(),
            fmt_f64(trajectory.final_fidelity),
            fmt_f64(trajectory.points.last().map(|p| p.loss).unwrap_or(f64::NAN)),
            trajectory.iterations().to_string(),
            trajectory.converged.to_string(),
        ]);
        trajectories.push((n_reps, trajectory));
    }

    let summary_path = config.output_dir.join("learning_summary.csv");
    write_table_csv(
        &summary_path,
        &[
            "n_reps",
            "final_fidelity",
            "final_loss",
            "iterations",
            "converged",
        ],
        &summary_rows,
    )?;
    written.push(summary_path);

    Ok(LearningArtifacts {
        target,
        trajectories,
        warnings,
        written,
    })
}
