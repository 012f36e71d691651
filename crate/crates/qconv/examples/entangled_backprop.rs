//! Injecting an upstream gradient into the circuit.
//!
//! A second ancilla, rotated by θ_β = 2·arcsin(√(1/2 - d)) and CNOT-ed into
//! the SWAP readout, rescales the readout to 1/2 + d·F. The two-point
//! gradient difference then comes out multiplied by d on-device — no host
//! multiplication needed.
//!
//! ```bash
//! cargo run --example entangled_backprop
//! ```

use qconv::encoding::{encode_patch, Patch};
use qconv::grad::{
    ancilla_scaled_readout, chain_grad_host, entangled_grad, param_shift_grad, range_map_upstream,
    theta_beta,
};
use qconv::state::Mode;
use qconv::{FilterParams, FilterState};

fn main() -> qconv::Result<()> {
    // The injection angle: β² = 1/2 - d, so the readout slope equals d.
    println!("upstream d |  θ_β      |  β²");
    for &d in &[-0.5, -0.3, 0.0, 0.3, 0.5] {
        let angle = theta_beta(d)?;
        println!("{d:>10} | {:.6} | {:.3}", angle.theta_beta, angle.beta_sq);
    }

    // Affine readout: scan fidelity by rotating the data state.
    let params = FilterParams::random(4, 1, 5)?;
    let filter = FilterState::from_params(params.clone())?;
    let angle = theta_beta(0.3)?;
    println!("\nreadout against fidelity (d = 0.3 → slope 0.3, intercept 0.5):");
    for i in 0..4 {
        let pixels: Vec<f64> = (0..16).map(|p| 0.1 + 0.2 * ((p + i) % 5) as f64).collect();
        let data = encode_patch(&Patch::new(0, 0, pixels))?;
        let f = filter.realized().fidelity(data.state())?;
        let readout = qconv::ancilla_scaled_probability(&filter, &data, &angle, Mode::Exact)?;
        let marginals = ancilla_scaled_readout(&filter, &data, &angle)?;
        println!(
            "  F = {f:.6} → p0 = {:.6} (predicted {:.6}); control marginal {:.6} (F-independent)",
            readout.exact_p0,
            0.5 + 0.3 * f,
            marginals.control_p0
        );
    }

    // The equivalence theorem: the injected gradient equals d times the
    // plain parameter-shift gradient, for every parameter.
    let data = encode_patch(&Patch::new(0, 0, vec![1.0; 16]))?; // uniform superposition
    let upstream = range_map_upstream(&[0.3]);
    println!("\nparam | d × param-shift | entangled route | host chain rule");
    for index in 0..params.len() {
        let ps = param_shift_grad(&params, index, &data, Mode::Exact)?;
        let ent = entangled_grad(0.3, &params, index, &data, Mode::Exact)?;
        let host = chain_grad_host(
            &upstream,
            &params,
            std::slice::from_ref(&data),
            index,
            Mode::Exact,
        )?;
        println!("{index:>5} | {:+.12} | {ent:+.12} | {host:+.12}", 0.3 * ps);
    }

    // Out-of-range upstream values get mapped in, and the scale recovers them.
    let wide = range_map_upstream(&[2.0, -4.0]);
    println!(
        "\nrange mapping [2, -4] → {:?} (multiply gradients back by {})",
        wide.mapped(),
        wide.scale()
    );
    Ok(())
}
