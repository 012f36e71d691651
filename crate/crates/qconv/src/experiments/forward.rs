//! Forward-pass experiment: convolve one filter over a batch of images and
//! emit, per image, the raw classical map, the normalized-similarity oracle
//! map, the exact quantum map, the sampled quantum map, and comparison
//! statistics.

use std::fs;
use std::path::PathBuf;

use crate::classical::{
    classical_conv, compare_maps, normalized_similarity_map, ClassicalFilter, ComparisonStats,
    RealGrid,
};
use crate::conv::{conv_forward_encoded, encode_windows, FeatureMap};
use crate::error::{Error, Result};
use crate::mnist::load_mnist;
use crate::state::Mode;

use super::config::{ExperimentConfig, FilterSourceSpec, ShotsSpec};
use super::filters::{filter_from_file, random_real_filter, ResolvedFilter};
use super::output::{fmt_f64, write_grid_csv, write_table_csv};
use super::{STREAM_FILTER, STREAM_IMAGE_BASE};

#[derive(Debug, Clone)]
pub struct ForwardStats {
    pub exact_vs_oracle: ComparisonStats,
    pub classical_vs_exact_pearson: f64,
    pub sampled_vs_exact: Option<ComparisonStats>,
    pub degenerate_cells: usize,
}

pub struct ImageArtifacts {
    pub index: usize,
    pub classical: RealGrid,
    pub oracle: RealGrid,
    pub exact: FeatureMap,
    pub sampled: Option<FeatureMap>,
    pub stats: ForwardStats,
}

pub struct ForwardArtifacts {
    pub images: Vec<ImageArtifacts>,
    pub filter_weights: Vec<f64>,
    pub warnings: Vec<String>,
    pub written: Vec<PathBuf>,
}

pub fn run_forward_experiment(config: &ExperimentConfig) -> Result<ForwardArtifacts> {
    let dataset = config
        .dataset_path
        .as_ref()
        .ok_or_else(|| Error::Config("forward requires a dataset path".into()))?;
    let set = load_mnist(dataset, config.image_count)?;
    let (hh, ww) = config.window;

    let ResolvedFilter {
        weights,
        state: filter,
        warnings,
    } = match &config.filter_source {
        FilterSourceSpec::File(path) => filter_from_file(path, hh * ww)?,
        FilterSourceSpec::Random => random_real_filter(
            config.window_qubits(),
            config.reps,
            crate::rng::derive_seed(config.seed, STREAM_FILTER),
        )?,
    };
    let classical_filter = ClassicalFilter::new(hh, ww, weights.clone())?;

    fs::create_dir_all(&config.output_dir)?;
    let mut written = Vec::new();

    // Record the resolved filter in the same one-value-per-line format the
    // tool accepts as input.
    let filter_path = config.output_dir.join("filter.txt");
    let filter_text: String = weights.iter().map(|w| fmt_f64(*w) + "\n").collect();
    fs::write(&filter_path, filter_text)?;
    written.push(filter_path);

    let mut images = Vec::with_capacity(set.count());
    let mut summary_rows = Vec::with_capacity(set.count());
    for (i, img) in set.images.iter().enumerate() {
        let classical = classical_conv(img, &classical_filter, config.stride)?;
        let oracle = normalized_similarity_map(img, &classical_filter, config.stride)?;

        let (encoded, rows, cols) = encode_windows(img, hh, ww, config.stride)?;
        let exact = conv_forward_encoded(&encoded, rows, cols, &filter, Mode::Exact)?;
        let sampled = match config.shots {
            ShotsSpec::Exact => None,
            ShotsSpec::Count(_) => {
                let mode = config.mode_for_stream(STREAM_IMAGE_BASE + i as u64);
                Some(conv_forward_encoded(&encoded, rows, cols, &filter, mode)?)
            }
        };

        let exact_similarity = exact.similarity_grid();
        let exact_vs_oracle = compare_maps(&exact_similarity, &oracle)?;
        let classical_vs_exact = compare_maps(&classical, &exact_similarity)?;
        let sampled_vs_exact = sampled
            .as_ref()
            .map(|s| compare_maps(&s.p0_grid(), &exact.p0_grid()))
            .transpose()?;
        let degenerate_cells = exact.cells().iter().filter(|c| c.degenerate).count();

        let prefix = |kind: &str| config.output_dir.join(format!("image_{i:02}_{kind}.csv"));
        write_grid_csv(&prefix("classical"), &classical)?;
        write_grid_csv(&prefix("oracle"), &oracle)?;
        write_grid_csv(&prefix("quantum_exact"), &exact_similarity)?;
        if let Some(s) = &sampled {
            write_grid_csv(&prefix("quantum_shots"), &s.similarity_grid())?;
        }
        write_grid_csv(&prefix("degenerate"), &exact.degenerate_grid())?;
        written.push(prefix("classical"));
        written.push(prefix("oracle"));
        written.push(prefix("quantum_exact"));
        if sampled.is_some() {
            written.push(prefix("quantum_shots"));
        }
        written.push(prefix("degenerate"));

        summary_rows.push(vec![
            i.to_string(),
            fmt_f64(exact_vs_oracle.max_abs_error),
            fmt_f64(exact_vs_oracle.mean_abs_error),
            fmt_f64(exact_vs_oracle.pearson_r),
            fmt_f64(classical_vs_exact.pearson_r),
            sampled_vs_exact
                .map(|s| fmt_f64(s.max_abs_error))
                .unwrap_or_default(),
            sampled_vs_exact
                .map(|s| fmt_f64(s.pearson_r))
                .unwrap_or_default(),
            degenerate_cells.to_string(),
        ]);

        images.push(ImageArtifacts {
            index: i,
            classical,
            oracle,
            exact,
            sampled,
            stats: ForwardStats {
                exact_vs_oracle,
                classical_vs_exact_pearson: classical_vs_exact.pearson_r,
                sampled_vs_exact,
                degenerate_cells,
            },
        });
    }

    let summary_path = config.output_dir.join("summary.csv");
    write_table_csv(
        &summary_path,
        &[
            "image",
            "exact_oracle_max_abs_error",
            "exact_oracle_mean_abs_error",
            "exact_oracle_pearson",
            "classical_exact_pearson",
            "shots_exact_max_abs_error",
            "shots_exact_pearson",
            "degenerate_cells",
        ],
        &summary_rows,
    )?;
    written.push(summary_path);

    Ok(ForwardArtifacts {
        images,
        filter_weights: weights,
        warnings,
        written,
    })
}
