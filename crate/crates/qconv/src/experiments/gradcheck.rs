//! Gradient cross-check: per parameter, the parameter-shift derivative, the
//! finite-difference oracle, and the derivative recovered from the
//! ancilla-scaled route (its output divided by the injected upstream value).

use std::fs;
use std::path::PathBuf;

use rand::Rng;

use crate::conv::FilterParams;
use crate::encoding::{encode_patch, Patch};
use crate::error::{Error, Result};
use crate::grad::{
    entangled_grad, finite_diff_grad, param_shift_grad, range_map_upstream, GradientRecord,
    GradientReport,
};
use crate::rng::{derive_seed, seeded_rng};
use crate::state::Mode;

use super::config::{ExperimentConfig, ShotsSpec};
use super::output::{fmt_f64, write_table_csv};
use super::{STREAM_DATA, STREAM_PARAMS};

pub struct GradcheckArtifacts {
    pub report: GradientReport,
    pub written: Vec<PathBuf>,
}

pub fn run_gradcheck(config: &ExperimentConfig) -> Result<GradcheckArtifacts> {
    if config.dl_do == 0.0 {
        return Err(Error::Config(
            "gradcheck needs a nonzero dl_do to recover the derivative".into(),
        ));
    }
    let (hh, ww) = config.window;
    let params = FilterParams::random(
        config.window_qubits(),
        config.reps,
        derive_seed(config.seed, STREAM_PARAMS),
    )?;
    let mut rng = seeded_rng(derive_seed(config.seed, STREAM_DATA));
    let pixels: Vec<f64> = (0..hh * ww).map(|_| rng.random::<f64>()).collect();
    let data = encode_patch(&Patch::new(0, 0, pixels))?;

    let upstream = range_map_upstream(&[config.dl_do]);
    let mapped = upstream.mapped()[0];
    let shots = match config.shots {
        ShotsSpec::Exact => 0,
        ShotsSpec::Count(n) => n,
    };

    let records = (0..params.len())
        .map(|index| {
            let mode = |method: u64| match config.shots {
                ShotsSpec::Exact => Mode::Exact,
                ShotsSpec::Count(count) => Mode::Shots {
                    count,
                    seed: derive_seed(config.seed, (method << 32) | index as u64),
                },
            };
            let ps = param_shift_grad(&params, index, &data, mode(0))?;
            let recovered = entangled_grad(mapped, &params, index, &data, mode(1))? / mapped;
            let fd = finite_diff_grad(&params, index, &data, 1e-5)?;
            Ok(GradientRecord::new(index, shots, ps, recovered, fd))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = GradientReport { records };

    fs::create_dir_all(&config.output_dir)?;
    let path = config.output_dir.join("gradcheck_report.csv");
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
        &path,
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

    Ok(GradcheckArtifacts {
        report,
        written: vec![path],
    })
}
