//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). Scales match the reference
//! experiments: 16 images, 4x4 windows, stride 1, 10000 shots, an upstream
//! value of 0.3, and ansatz depths 1..3.

mod common;

use std::time::Instant;

use qconv::classical::{normalized_similarity_map, ClassicalFilter};
use qconv::conv::{FilterParams, FilterState};
use qconv::encoding::{encode_patch, Patch};
use qconv::experiments::{
    run_forward_experiment, run_state_learning, ExperimentConfig, FilterSourceSpec, Overrides,
    ShotsSpec,
};
use qconv::grad::{
    ancilla_scaled_probability_states, ancilla_scaled_readout_states, entangled_grad,
    finite_diff_grad, param_shift_grad, theta_beta,
};
use qconv::rng::{derive_seed, seeded_rng};
use qconv::state::{Mode, StateVector};
use qconv::swap_test_states;
use qconv::training::{train_filter, TrainingConfig};

use num_complex::Complex64;
use rand::Rng;

fn report(criterion: &str, pass: bool, detail: String) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn random_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut rng = seeded_rng(seed);
    let dim = 1usize << num_qubits;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| {
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt();
            Complex64::new(
                r * (std::f64::consts::TAU * u2).cos(),
                r * (std::f64::consts::TAU * u2).sin(),
            )
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps).unwrap()
}

fn random_patch_data(seed: u64) -> qconv::EncodedPatch {
    let mut rng = seeded_rng(seed);
    let values: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
    encode_patch(&Patch::new(0, 0, values)).unwrap()
}

fn forward_config(dir: &std::path::Path, dataset: std::path::PathBuf) -> ExperimentConfig {
    let mut config = ExperimentConfig::resolve(None, &Overrides::default()).unwrap();
    config.dataset_path = Some(dataset);
    config.image_count = 16;
    config.window = (4, 4);
    config.stride = 1;
    config.shots = ShotsSpec::Count(10_000);
    config.seed = 20_220_901;
    config.filter_source = FilterSourceSpec::Random;
    config.output_dir = dir.to_path_buf();
    config
}

/// Criterion 1: over 1000 random 4-qubit state pairs, the SWAP-test readout
/// equals 1/2 + 1/2·F within 1e-12, in under 10 seconds.
#[test]
fn criterion_1_swap_test_law() {
    let start = Instant::now();
    let mut max_dev = 0.0f64;
    for i in 0..1000u64 {
        let a = random_state(4, derive_seed(0xC1, 2 * i));
        let b = random_state(4, derive_seed(0xC1, 2 * i + 1));
        let expected = 0.5 + 0.5 * a.fidelity(&b).unwrap();
        let got = swap_test_states(&a, &b, Mode::Exact).unwrap().exact_p0;
        max_dev = max_dev.max((got - expected).abs());
    }
    let elapsed = start.elapsed();
    let pass = max_dev < 1e-12 && elapsed.as_secs_f64() < 10.0;
    report(
        "1 (SWAP-test law)",
        pass,
        format!(
            "max |Δ| = {max_dev:.2e} over 1000 pairs in {:.2} s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "max deviation {max_dev:.3e}, elapsed {elapsed:?}");
}

/// Criterion 2: 16 images at full scale, exact-mode similarity equals the
/// classical normalized similarity map to 1e-10 on all 10,000 cells, in
/// under 2 minutes single-threaded.
///
/// Criterion 3 rides on the same artifacts: at 10000 shots per window, at
/// least 99% of cells lie within the 4-sigma binomial band of exact p0.
#[test]
fn criteria_2_and_3_forward_equivalence_and_shot_noise() {
    let tmp = tempfile::tempdir().unwrap();
    let dataset = common::write_synthetic_dataset(tmp.path(), 0xDA7A, 16);
    let config = forward_config(&tmp.path().join("out"), dataset);

    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    let artifacts = single.install(|| run_forward_experiment(&config)).unwrap();
    let elapsed = start.elapsed();

    // Criterion 2: equivalence against the classical oracle.
    let filter = ClassicalFilter::new(4, 4, artifacts.filter_weights.clone()).unwrap();
    let set = qconv::mnist::load_mnist(config.dataset_path.as_ref().unwrap(), 16).unwrap();
    let mut cells = 0usize;
    let mut max_err = 0.0f64;
    for img in &artifacts.images {
        let oracle = normalized_similarity_map(&set.images[img.index], &filter, 1).unwrap();
        for r in 0..25 {
            for c in 0..25 {
                let err = (img.exact.get(r, c).similarity - oracle.get(r, c)).abs();
                max_err = max_err.max(err);
                cells += 1;
            }
        }
    }
    let pass2 = cells == 10_000 && max_err < 1e-10 && elapsed.as_secs_f64() < 120.0;
    report(
        "2 (forward equivalence, 16 images)",
        pass2,
        format!(
            "max |Δ| = {max_err:.2e} over {cells} cells in {:.2} s single-threaded",
            elapsed.as_secs_f64()
        ),
    );

    // Criterion 3: shot-noise band.
    let mut in_band = 0usize;
    let mut total = 0usize;
    for img in &artifacts.images {
        let sampled = img.sampled.as_ref().expect("shots mode");
        for (s, e) in sampled.cells().iter().zip(img.exact.cells()) {
            let band = 4.0 * (e.p0 * (1.0 - e.p0) / 10_000.0).sqrt();
            if (s.p0 - e.p0).abs() <= band {
                in_band += 1;
            }
            total += 1;
        }
    }
    let fraction = in_band as f64 / total as f64;
    let pass3 = total == 10_000 && fraction >= 0.99;
    report(
        "3 (shot-noise band, 10000 shots)",
        pass3,
        format!(
            "{in_band}/{total} cells within 4σ ({:.3}%)",
            fraction * 100.0
        ),
    );

    assert!(
        pass2,
        "max error {max_err:.3e}, cells {cells}, elapsed {elapsed:?}"
    );
    assert!(pass3, "{fraction} of cells within band");
}

/// Criterion 4: parameter shift matches central finite differences at
/// eps = 1e-5 within 1e-6 for every parameter, depths 1..3, 20 random seeds.
#[test]
fn criterion_4_parameter_shift_exactness() {
    let mut max_dev = 0.0f64;
    let mut checked = 0usize;
    for n_reps in 1..=3usize {
        for seed in 0..20u64 {
            let params =
                FilterParams::random(4, n_reps, derive_seed(0xC4, seed * 10 + n_reps as u64))
                    .unwrap();
            let data = random_patch_data(derive_seed(0xC4DA, seed * 10 + n_reps as u64));
            for index in 0..params.len() {
                let ps = param_shift_grad(&params, index, &data, Mode::Exact).unwrap();
                let fd = finite_diff_grad(&params, index, &data, 1e-5).unwrap();
                max_dev = max_dev.max((ps - fd).abs());
                checked += 1;
            }
        }
    }
    let pass = max_dev < 1e-6;
    report(
        "4 (parameter-shift exactness)",
        pass,
        format!("max |ps - fd| = {max_dev:.2e} over {checked} gradients"),
    );
    assert!(pass, "max deviation {max_dev:.3e}");
}

/// Criterion 5: the equivalence theorem — the circuit-injected gradient
/// equals dl_do times the parameter-shift gradient within 1e-10, for the
/// five reference upstream values, all parameters, depths 1..3.
#[test]
fn criterion_5_entangled_backprop_equivalence() {
    let mut max_dev = 0.0f64;
    let mut checked = 0usize;
    for n_reps in 1..=3usize {
        let params = FilterParams::random(4, n_reps, derive_seed(0xC5, n_reps as u64)).unwrap();
        let data = random_patch_data(derive_seed(0xC5DA, n_reps as u64));
        for &dl in &[-0.5, -0.3, 0.0, 0.3, 0.5] {
            for index in 0..params.len() {
                let ent = entangled_grad(dl, &params, index, &data, Mode::Exact).unwrap();
                let ps = param_shift_grad(&params, index, &data, Mode::Exact).unwrap();
                max_dev = max_dev.max((ent - dl * ps).abs());
                checked += 1;
            }
        }
    }
    let pass = max_dev < 1e-10;
    report(
        "5 (entangled-backprop equivalence)",
        pass,
        format!("max |ent - dl·ps| = {max_dev:.2e} over {checked} checks"),
    );
    assert!(pass, "max deviation {max_dev:.3e}");
}

/// Criterion 6: regressing the scaled readout against fidelity over 50
/// random pairs gives slope 1/2 - β² and intercept 1/2 within 1e-10 for
/// β² in {0, 0.2, 0.5, 0.8, 1}; the control ancilla's own marginal is
/// fidelity-independent within 1e-12.
#[test]
fn criterion_6_affine_calibration() {
    let mut max_slope_dev = 0.0f64;
    let mut max_intercept_dev = 0.0f64;
    let mut max_control_spread = 0.0f64;
    for (bi, &beta_sq) in [0.0, 0.2, 0.5, 0.8, 1.0].iter().enumerate() {
        let angle = theta_beta(0.5 - beta_sq).unwrap();
        let mut xs = Vec::with_capacity(50);
        let mut ys = Vec::with_capacity(50);
        let mut controls = Vec::with_capacity(50);
        for i in 0..50u64 {
            let a = random_state(4, derive_seed(0xC6, bi as u64 * 1000 + 2 * i));
            let b = random_state(4, derive_seed(0xC6, bi as u64 * 1000 + 2 * i + 1));
            xs.push(a.fidelity(&b).unwrap());
            ys.push(
                ancilla_scaled_probability_states(&a, &b, &angle, Mode::Exact)
                    .unwrap()
                    .exact_p0,
            );
            controls.push(
                ancilla_scaled_readout_states(&a, &b, &angle)
                    .unwrap()
                    .control_p0,
            );
        }
        let n = xs.len() as f64;
        let mean_x: f64 = xs.iter().sum::<f64>() / n;
        let mean_y: f64 = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mean_x) * (y - mean_y))
            .sum();
        let var: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
        let slope = cov / var;
        let intercept = mean_y - slope * mean_x;
        max_slope_dev = max_slope_dev.max((slope - (0.5 - beta_sq)).abs());
        max_intercept_dev = max_intercept_dev.max((intercept - 0.5).abs());

        let lo = controls.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = controls.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        max_control_spread = max_control_spread.max(hi - lo);
    }
    let pass = max_slope_dev < 1e-10 && max_intercept_dev < 1e-10 && max_control_spread < 1e-12;
    report(
        "6 (affine calibration)",
        pass,
        format!(
            "slope dev {max_slope_dev:.2e}, intercept dev {max_intercept_dev:.2e}, control spread {max_control_spread:.2e}"
        ),
    );
    assert!(pass);
}

/// Criterion 7: the injection angle satisfies sin²(θ_β/2) = 1/2 - d within
/// 1e-12 across the upstream range, and d = 0 maps to exactly π/2.
#[test]
fn criterion_7_theta_beta_contract() {
    let mut max_dev = 0.0f64;
    for i in 0..=100 {
        let d = -0.5 + i as f64 / 100.0;
        let angle = theta_beta(d).unwrap();
        let s = (angle.theta_beta / 2.0).sin();
        max_dev = max_dev.max((s * s - (0.5 - d)).abs());
    }
    let mid = theta_beta(0.0).unwrap().theta_beta;
    let mid_dev = (mid - std::f64::consts::FRAC_PI_2).abs();
    let pass = max_dev < 1e-12 && mid_dev < 1e-15;
    report(
        "7 (theta-beta contract)",
        pass,
        format!("max |sin²(θ/2) - (1/2 - d)| = {max_dev:.2e}; θ(0) = π/2 + {mid_dev:.1e}"),
    );
    assert!(pass);
}

/// Criterion 8: ten seeded runs against random depth-3 targets in exact mode
/// at lr = 0.5 and at most 500 iterations; depth 3 reaches fidelity 0.99 in
/// at least 8 of 10 runs, every loss stays in [0, 0.5], under 5 minutes.
#[test]
fn criterion_8_state_learning() {
    let start = Instant::now();
    let mut converged = 0usize;
    let mut losses_in_range = true;
    let mut finals = Vec::with_capacity(10);
    for run in 0..10u64 {
        let target = FilterState::from_params(
            FilterParams::random(4, 3, derive_seed(7, 0xACC0 + run)).unwrap(),
        )
        .unwrap();
        let config = TrainingConfig::new(3)
            .with_learning_rate(0.5)
            .with_max_iters(500)
            .with_seed(derive_seed(7, 0xACC1 + run))
            .with_target_fidelity(0.99);
        let traj = train_filter(&target, &config).unwrap();
        if traj.final_fidelity >= 0.99 {
            converged += 1;
        }
        losses_in_range &= traj
            .points
            .iter()
            .all(|p| p.loss >= 0.0 && p.loss <= 0.5 + 1e-12);
        finals.push(traj.final_fidelity);
    }
    let elapsed = start.elapsed();
    let pass = converged >= 8 && losses_in_range && elapsed.as_secs_f64() < 300.0;
    report(
        "8 (state learning, n=3)",
        pass,
        format!(
            "{converged}/10 runs reached F ≥ 0.99 in {:.1} s; finals: {}",
            elapsed.as_secs_f64(),
            finals
                .iter()
                .map(|f| format!("{f:.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );
    assert!(
        pass,
        "{converged}/10 converged, losses_in_range = {losses_in_range}, elapsed {elapsed:?}"
    );
}

/// Criterion 9: reruns of the forward (criteria 2 and 3) and state-learning
/// (criterion 8) experiments with identical seeds produce byte-identical
/// output files, including across thread counts.
#[test]
fn criterion_9_deterministic_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    // The same dataset and seeds as criteria 2 and 3, at full scale.
    let dataset = common::write_synthetic_dataset(tmp.path(), 0xDA7A, 16);

    // Forward experiment: default pool, then again, then a 1-thread pool.
    let mut runs = Vec::new();
    for (label, threads) in [("a", 0usize), ("b", 0), ("c", 1)] {
        let config = forward_config(&tmp.path().join(format!("fwd_{label}")), dataset.clone());
        if threads == 0 {
            run_forward_experiment(&config).unwrap();
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_forward_experiment(&config)).unwrap();
        }
        runs.push(config.output_dir);
    }
    common::assert_dirs_identical(&runs[0], &runs[1]);
    common::assert_dirs_identical(&runs[0], &runs[2]);

    // State learning twice at the full criterion-8 scale.
    let mut dirs = Vec::new();
    for label in ["t1", "t2"] {
        let mut config = ExperimentConfig::resolve(None, &Overrides::default()).unwrap();
        config.output_dir = tmp.path().join(label);
        config.shots = ShotsSpec::Exact;
        config.seed = 7;
        run_state_learning(&config).unwrap();
        dirs.push(config.output_dir);
    }
    common::assert_dirs_identical(&dirs[0], &dirs[1]);

    // And one of criterion 8's own runs, bitwise.
    let target =
        FilterState::from_params(FilterParams::random(4, 3, derive_seed(7, 0xACC0)).unwrap())
            .unwrap();
    let config = TrainingConfig::new(3)
        .with_seed(derive_seed(7, 0xACC1))
        .with_target_fidelity(0.99);
    let first = train_filter(&target, &config).unwrap();
    let second = train_filter(&target, &config).unwrap();
    assert_eq!(first, second);
    for (a, b) in first.points.iter().zip(&second.points) {
        assert_eq!(a.loss.to_bits(), b.loss.to_bits());
    }

    report(
        "9 (byte-identical reruns)",
        true,
        "forward x3 (incl. 1-thread pool) and learning x2 outputs identical; trajectories bitwise equal".into(),
    );
}
