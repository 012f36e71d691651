//! Thin CLI over the experiment runners. All real work lives in the library;
//! see the `examples/` directory for programmatic use.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qconv::experiments::{
    run_backprop_validation, run_forward_experiment, run_gradcheck, run_state_learning,
    ExperimentConfig, Overrides,
};

#[derive(Parser)]
#[command(
    name = "qconv",
    version,
    about = "SWAP-test quantum convolution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for every sampled quantity.
    #[arg(long)]
    seed: Option<u64>,
    /// Shots per circuit readout.
    #[arg(long)]
    shots: Option<u64>,
    /// Use exact probabilities instead of sampling.
    #[arg(long)]
    exact: bool,
    /// Output directory for CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Convolve a filter over MNIST images; emit classical, oracle, and
    /// quantum feature maps with comparison statistics.
    Forward {
        #[command(flatten)]
        common: CommonArgs,
        /// MNIST IDX image file (required).
        #[arg(long)]
        dataset: Option<PathBuf>,
        /// Number of images to process.
        #[arg(long)]
        images: Option<usize>,
        /// Filter vector file (one value per line); random if omitted.
        #[arg(long)]
        filter_file: Option<PathBuf>,
        /// Window stride.
        #[arg(long)]
        stride: Option<usize>,
    },
    /// Compare circuit-injected backpropagation against the host-side chain
    /// rule across a shot schedule.
    BackpropValidate {
        #[command(flatten)]
        common: CommonArgs,
        /// Upstream gradient value to inject.
        #[arg(long)]
        dl_do: Option<f64>,
        /// Ansatz depth.
        #[arg(long)]
        reps: Option<usize>,
    },
    /// Train ansatz depths n = 1..3 against a target state.
    TrainFilter {
        #[command(flatten)]
        common: CommonArgs,
        /// Target vector file; a random deep ansatz if omitted.
        #[arg(long)]
        filter_file: Option<PathBuf>,
        /// Gradient-descent learning rate.
        #[arg(long)]
        lr: Option<f64>,
        /// Iteration budget per depth.
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Cross-check parameter-shift, finite-difference, and ancilla-recovered
    /// gradients.
    Gradcheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Upstream value used to drive the ancilla route.
        #[arg(long)]
        dl_do: Option<f64>,
        /// Ansatz depth.
        #[arg(long)]
        reps: Option<usize>,
    },
}

fn overrides(common: &CommonArgs) -> Overrides {
    Overrides {
        seed: common.seed,
        shots: common.shots,
        exact: common.exact,
        output_dir: common.out.clone(),
        ..Default::default()
    }
}

fn run(cli: Cli) -> qconv::Result<()> {
    match cli.command {
        Command::Forward {
            common,
            dataset,
            images,
            filter_file,
            stride,
        } => {
            let mut ov = overrides(&common);
            ov.dataset_path = dataset;
            ov.image_count = images;
            ov.filter_file = filter_file;
            ov.stride = stride;
            let config = ExperimentConfig::resolve(common.config.as_deref(), &ov)?;
            let artifacts = run_forward_experiment(&config)?;
            for w in &artifacts.warnings {
                eprintln!("warning: {w}");
            }
            for img in &artifacts.images {
                println!(
                    "image {:02}: exact-vs-oracle max |err| = {:.3e}, classical pearson = {:.4}, degenerate windows = {}",
                    img.index,
                    img.stats.exact_vs_oracle.max_abs_error,
                    img.stats.classical_vs_exact_pearson,
                    img.stats.degenerate_cells
                );
            }
            println!(
                "wrote {} files to {}",
                artifacts.written.len(),
                config.output_dir.display()
            );
        }
        Command::BackpropValidate {
            common,
            dl_do,
            reps,
        } => {
            let mut ov = overrides(&common);
            ov.dl_do = dl_do;
            ov.reps = reps;
            let config = ExperimentConfig::resolve(common.config.as_deref(), &ov)?;
            let artifacts = run_backprop_validation(&config)?;
            if artifacts.scale != 1.0 {
                println!(
                    "dl_do {} mapped to {} (scale {})",
                    artifacts.dl_do_raw, artifacts.dl_do_mapped, artifacts.scale
                );
            }
            for shots in [Some(100u64), Some(1000), Some(10_000), None] {
                let key = shots.unwrap_or(0);
                let label = shots.map_or("exact".into(), |s| s.to_string());
                if let Some(median) = artifacts.report.median_abs_error_at(key) {
                    println!("shots {label:>6}: median |entangled - host| = {median:.3e}");
                }
            }
            println!(
                "wrote {} files to {}",
                artifacts.written.len(),
                config.output_dir.display()
            );
        }
        Command::TrainFilter {
            common,
            filter_file,
            lr,
            max_iters,
        } => {
            let mut ov = overrides(&common);
            ov.filter_file = filter_file;
            ov.learning_rate = lr;
            ov.max_iters = max_iters;
            let config = ExperimentConfig::resolve(common.config.as_deref(), &ov)?;
            let artifacts = run_state_learning(&config)?;
            for w in &artifacts.warnings {
                eprintln!("warning: {w}");
            }
            for (n, traj) in &artifacts.trajectories {
                println!(
                    "n = {n}: final fidelity {:.6} after {} iterations (converged: {})",
                    traj.final_fidelity,
                    traj.iterations(),
                    traj.converged
                );
            }
            println!(
                "wrote {} files to {}",
                artifacts.written.len(),
                config.output_dir.display()
            );
        }
        Command::Gradcheck {
            common,
            dl_do,
            reps,
        } => {
            let mut ov = overrides(&common);
            ov.dl_do = dl_do;
            ov.reps = reps;
            let config = ExperimentConfig::resolve(common.config.as_deref(), &ov)?;
            let artifacts = run_gradcheck(&config)?;
            println!(
                "{} parameters checked, max |param_shift - recovered| = {:.3e}",
                artifacts.report.records.len(),
                artifacts.report.max_abs_error()
            );
            println!(
                "wrote {} files to {}",
                artifacts.written.len(),
                config.output_dir.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version output exits cleanly; usage errors exit 1.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
