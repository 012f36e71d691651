//! Experiment configuration: defaults, TOML config file, CLI overrides, in
//! that precedence order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::state::Mode;

/// Shot budget for circuit readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotsSpec {
    Exact,
    Count(u64),
}

/// Where the filter (or training target) vector comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterSourceSpec {
    /// Plain text file, one amplitude per line, unit norm within 1e-6.
    File(PathBuf),
    /// Seeded random ansatz.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset_path: Option<PathBuf>,
    pub image_count: usize,
    pub filter_source: FilterSourceSpec,
    pub shots: ShotsSpec,
    pub stride: usize,
    pub window: (usize, usize),
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Ansatz depth for gradient experiments and random filters.
    pub reps: usize,
    /// Upstream gradient injected by the backpropagation experiments.
    pub dl_do: f64,
    pub learning_rate: f64,
    pub max_iters: usize,
    pub target_fidelity: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset_path: None,
            image_count: 16,
            filter_source: FilterSourceSpec::Random,
            shots: ShotsSpec::Count(10_000),
            stride: 1,
            window: (4, 4),
            seed: 7,
            output_dir: PathBuf::from("out"),
            reps: 1,
            dl_do: 0.3,
            learning_rate: 0.5,
            max_iters: 500,
            target_fidelity: 0.99,
        }
    }
}

impl ExperimentConfig {
    /// Defaults, then the config file (if given), then CLI overrides.
    pub fn resolve(config_file: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = config_file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))?;

        if let Some(v) = file.dataset_path {
            self.dataset_path = Some(PathBuf::from(v));
        }
        if let Some(v) = file.image_count {
            self.image_count = v;
        }
        if let Some(v) = file.filter_file {
            self.filter_source = FilterSourceSpec::File(PathBuf::from(v));
        }
        if let Some(v) = file.shots {
            self.shots = v.into_spec()?;
        }
        if let Some(v) = file.stride {
            self.stride = v;
        }
        if let Some([hh, ww]) = file.window {
            self.window = (hh, ww);
        }
        if let Some(v) = file.seed {
            self.seed = v;
        }
        if let Some(v) = file.output_dir {
            self.output_dir = PathBuf::from(v);
        }
        if let Some(v) = file.reps {
            self.reps = v;
        }
        if let Some(v) = file.dl_do {
            self.dl_do = v;
        }
        if let Some(v) = file.learning_rate {
            self.learning_rate = v;
        }
        if let Some(v) = file.max_iters {
            self.max_iters = v;
        }
        if let Some(v) = file.target_fidelity {
            self.target_fidelity = v;
        }
        Ok(())
    }

    fn apply_overrides(&mut self, ov: &Overrides) {
        if let Some(v) = &ov.dataset_path {
            self.dataset_path = Some(v.clone());
        }
        if let Some(v) = ov.image_count {
            self.image_count = v;
        }
        if let Some(v) = &ov.filter_file {
            self.filter_source = FilterSourceSpec::File(v.clone());
        }
        if let Some(v) = ov.shots {
            self.shots = ShotsSpec::Count(v);
        }
        if ov.exact {
            self.shots = ShotsSpec::Exact;
        }
        if let Some(v) = ov.stride {
            self.stride = v;
        }
        if let Some(v) = ov.seed {
            self.seed = v;
        }
        if let Some(v) = &ov.output_dir {
            self.output_dir = v.clone();
        }
        if let Some(v) = ov.reps {
            self.reps = v;
        }
        if let Some(v) = ov.dl_do {
            self.dl_do = v;
        }
        if let Some(v) = ov.learning_rate {
            self.learning_rate = v;
        }
        if let Some(v) = ov.max_iters {
            self.max_iters = v;
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (hh, ww) = self.window;
        if hh == 0 || ww == 0 || !(hh * ww).is_power_of_two() {
            return Err(Error::Config(format!(
                "window {hh}x{ww} must cover a power-of-two pixel count"
            )));
        }
        if self.stride < 1 {
            return Err(Error::Config("stride must be >= 1".into()));
        }
        if let ShotsSpec::Count(0) = self.shots {
            return Err(Error::Config("shots must be >= 1 (or use exact)".into()));
        }
        if self.reps < 1 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        if self.learning_rate <= 0.0 {
            return Err(Error::Config("learning-rate must be > 0".into()));
        }
        if !(self.target_fidelity > 0.0 && self.target_fidelity <= 1.0) {
            return Err(Error::Config("target-fidelity must be in (0, 1]".into()));
        }
        Ok(())
    }

    /// Qubits per register for the configured window.
    pub fn window_qubits(&self) -> usize {
        (self.window.0 * self.window.1).trailing_zeros() as usize
    }

    /// Readout mode on a named stream of the master seed.
    pub fn mode_for_stream(&self, stream: u64) -> Mode {
        match self.shots {
            ShotsSpec::Exact => Mode::Exact,
            ShotsSpec::Count(count) => Mode::Shots {
                count,
                seed: derive_seed(self.seed, stream),
            },
        }
    }
}

/// CLI flag overrides; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub dataset_path: Option<PathBuf>,
    pub image_count: Option<usize>,
    pub filter_file: Option<PathBuf>,
    pub shots: Option<u64>,
    pub exact: bool,
    pub stride: Option<usize>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub reps: Option<usize>,
    pub dl_do: Option<f64>,
    pub learning_rate: Option<f64>,
    pub max_iters: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    dataset_path: Option<String>,
    image_count: Option<usize>,
    filter_file: Option<String>,
    shots: Option<ShotsValue>,
    stride: Option<usize>,
    window: Option<[usize; 2]>,
    seed: Option<u64>,
    output_dir: Option<String>,
    reps: Option<usize>,
    dl_do: Option<f64>,
    learning_rate: Option<f64>,
    max_iters: Option<usize>,
    target_fidelity: Option<f64>,
}

/// `shots = 10000` or `shots = "exact"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ShotsValue {
    Count(u64),
    Keyword(String),
}

impl ShotsValue {
    fn into_spec(self) -> Result<ShotsSpec> {
        match self {
            ShotsValue::Count(n) => Ok(ShotsSpec::Count(n)),
            ShotsValue::Keyword(s) if s == "exact" => Ok(ShotsSpec::Exact),
            ShotsValue::Keyword(s) => Err(Error::Config(format!(
                "shots must be a count or \"exact\", got \"{s}\""
            ))),
        }
    }
}
