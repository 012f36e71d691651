//! Amplitude-encoding an image window.
//!
//! Normalizes a 4x4 patch, builds the preparation unitary whose first column
//! is that vector, applies it to |0000⟩, and verifies the round trip. Also
//! shows what happens to an all-black window.
//!
//! ```bash
//! cargo run --example amplitude_encoding
//! ```

use qconv::encoding::{encode_patch, normalize_patch, preparation_unitary, Patch};
use qconv::state::StateVector;

fn main() -> qconv::Result<()> {
    // A bright diagonal stripe on a dark window.
    let mut pixels = vec![0.05; 16];
    for i in 0..4 {
        pixels[i * 4 + i] = 0.9;
    }
    let patch = Patch::new(0, 0, pixels);
    let (unit, degenerate) = normalize_patch(&patch);
    println!("normalized patch (degenerate = {degenerate}):");
    for row in unit.chunks(4) {
        println!(
            "  {}",
            row.iter()
                .map(|v| format!("{v:.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    let u = preparation_unitary(&unit)?;
    println!(
        "preparation unitary: dim {}, deviation from unitarity {:.2e}",
        u.dim(),
        u.unitarity_deviation()
    );

    let mut state = StateVector::new(4)?;
    state.apply_unitary(&[0, 1, 2, 3], &u)?;
    let max_err = state
        .amplitudes()
        .iter()
        .zip(&unit)
        .map(|(a, t)| (a.re - t).abs().max(a.im.abs()))
        .fold(0.0f64, f64::max);
    println!("U|0000⟩ reproduces the patch vector to {max_err:.2e}");

    let encoded = encode_patch(&patch)?;
    println!(
        "encode_patch agrees: fidelity with lifted vector = {:.12}",
        encoded.state().fidelity(&StateVector::from_amplitudes(
            unit.iter()
                .map(|&v| num_complex::Complex64::new(v, 0.0))
                .collect()
        )?)?
    );

    // Degenerate window: falls back to the ground state, flagged.
    let black = encode_patch(&Patch::new(0, 0, vec![0.0; 16]))?;
    println!(
        "all-black window: degenerate = {}, state = |0000⟩ (amp[0] = {:.1})",
        black.degenerate(),
        black.state().amplitudes()[0].re
    );
    Ok(())
}
