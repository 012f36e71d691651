//! Training shallow ansatz circuits to mimic a target filter state.
//!
//! Draws a random depth-3 target, then trains depths 1..3 on the SWAP-test
//! loss and prints each trajectory. Deeper circuits track the target better.
//!
//! ```bash
//! cargo run --release --example train_filter
//! ```

use qconv::{train_filter, FilterParams, FilterState, TrainingConfig};

fn main() -> qconv::Result<()> {
    let target = FilterState::from_params(FilterParams::random(4, 3, 2024)?)?;

    for n_reps in 1..=3 {
        let config = TrainingConfig::new(n_reps)
            .with_seed(15)
            .with_max_iters(400);
        let trajectory = train_filter(&target, &config)?;
        println!(
            "n = {n_reps}: {} parameters, final fidelity {:.6} after {} iterations (converged: {})",
            2 * 4 * n_reps,
            trajectory.final_fidelity,
            trajectory.iterations(),
            trajectory.converged
        );
        for point in trajectory
            .points
            .iter()
            .step_by(usize::max(1, trajectory.points.len() / 8))
        {
            println!(
                "    iter {:>4}: loss {:.6}  fidelity {:.6}",
                point.iter, point.loss, point.fidelity
            );
        }
    }
    println!(
        "\n(loss = 1 - p0 of the SWAP test against the target; exact mode keeps it in [0, 0.5])"
    );
    Ok(())
}
