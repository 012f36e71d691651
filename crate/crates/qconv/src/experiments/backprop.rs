//! Backpropagation validation: inject a fixed upstream value into the
//! circuit via the scaled ancilla, and compare the resulting gradients with
//! the host-side chain rule across a shot schedule. The data register holds
//! the uniform superposition over all basis states.

use std::fs;
use std::path::PathBuf;

use crate::conv::FilterParams;
use crate::encoding::{encode_patch, EncodedPatch, Patch};
use crate::error::Result;
use crate::grad::{
    chain_grad_host, entangled_grad, finite_diff_grad, range_map_upstream, GradientRecord,
    GradientReport,
};
use crate::rng::derive_seed;
use crate::state::Mode;

use super::config::ExperimentConfig;
use super::output::{fmt_f64, write_table_csv};
use super::{STREAM_PARAMS, STREAM_SCHEDULE_BASE};

/// Shot schedule used for the validation runs; `None` is exact mode.
pub const SHOT_SCHEDULE: [Option<u64>; 4] = [Some(100), Some(1000), Some(10_000), None];

pub struct BackpropArtifacts {
    pub report: GradientReport,
    pub dl_do_raw: f64,
    pub dl_do_mapped: f64,
    pub scale: f64,
    pub written: Vec<PathBuf>,
}

/// The uniform superposition as an encoded window: an all-ones patch
/// normalizes to 1/√n everywhere.
pub fn uniform_data(hh: usize, ww: usize) -> Result<EncodedPatch> {
    encode_patch(&Patch::new(0, 0, vec![1.0; hh * ww]))
}

pub fn run_backprop_validation(config: &ExperimentConfig) -> Result<BackpropArtifacts> {
    let (hh, ww) = config.window;
    let params = FilterParams::random(
        config.window_qubits(),
        config.reps,
        derive_seed(config.seed, STREAM_PARAMS),
    )?;
    let data = uniform_data(hh, ww)?;

    // Out-of-range upstream values are mapped in, with the scale recorded.
    let upstream = range_map_upstream(&[config.dl_do]);
    let mapped = upstream.mapped()[0];

    let mut records = Vec::with_capacity(SHOT_SCHEDULE.len() * params.len());
    for (rank, budget) in SHOT_SCHEDULE.iter().enumerate() {
        let stream = |method: u64, index: usize| -> Mode {
            match budget {
                None => Mode::Exact,
                Some(count) => Mode::Shots {
                    count: *count,
                    seed: derive_seed(
                        derive_seed(config.seed, STREAM_SCHEDULE_BASE + rank as u64),
                        (method << 32) | index as u64,
                    ),
                },
            }
        };
        for index in 0..params.len() {
            let host = chain_grad_host(
                &upstream,
                &params,
                std::slice::from_ref(&data),
                index,
                stream(0, index),
            )?;
            let entangled = entangled_grad(mapped, &params, index, &data, stream(1, index))?;
            let oracle = mapped * finite_diff_grad(&params, index, &data, 1e-5)?;
            records.push(GradientRecord::new(
                index,
                budget.unwrap_or(0),
                host,
                entangled,
                oracle,
            ));
        }
    }
    let report = GradientReport { records };

    fs::create_dir_all(&config.output_dir)?;
    let mut written = Vec::new();

    let report_path = config.output_dir.join("backprop_report.csv");
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| {
            vec![
                if r.shots == 0 {
                    "exact".to_string()
                } else {
                    r.shots.to_string()
                },
                r.param_index.to_string(),
                fmt_f64(r.param_shift),
                fmt_f64(r.entangled),
                fmt_f64(r.finite_diff),
                fmt_f64(r.abs_error),
            ]
        })
        .collect();
    write_table_csv(
        &report_path,
        &[
            "shots",
            "param",
            "param_shift",
            "entangled",
            "finite_diff",
            "abs_error",
        ],
        &rows,
    )?;
    written.push(report_path);

    let summary_path = config.output_dir.join("backprop_summary.csv");
    let exact_max = report
        .records
        .iter()
        .filter(|r| r.shots == 0)
        .fold(0.0f64, |m, r| m.max(r.abs_error));
    write_table_csv(
        &summary_path,
        &["key", "value"],
        &[
            vec!["seed".into(), config.seed.to_string()],
            vec!["reps".into(), config.reps.to_string()],
            vec!["qubits".into(), config.window_qubits().to_string()],
            vec!["dl_do_raw".into(), fmt_f64(config.dl_do)],
            vec!["dl_do_mapped".into(), fmt_f64(mapped)],
            vec!["scale".into(), fmt_f64(upstream.scale())],
            vec!["exact_max_abs_error".into(), fmt_f64(exact_max)],
        ],
    )?;
    written.push(summary_path);

    Ok(BackpropArtifacts {
        report,
        dl_do_raw: config.dl_do,
        dl_do_mapped: mapped,
        scale: upstream.scale(),
        written,
    })
}
