//! A full forward pass: convolve a filter state over an image with SWAP
//! tests and compare the feature map against the classical oracle.
//!
//! ```bash
//! cargo run --example feature_map
//! ```

use qconv::classical::{compare_maps, normalized_similarity_map, ClassicalFilter};
use qconv::conv::{conv_forward, FilterState};
use qconv::encoding::{preparation_unitary, ImageGrid};
use qconv::state::Mode;

fn main() -> qconv::Result<()> {
    // 12x12 image: a bright square on a black background; the corners stay
    // fully black so some windows are degenerate.
    let mut pixels = vec![0.0; 144];
    for r in 4..8 {
        for c in 4..8 {
            pixels[r * 12 + c] = 0.8;
        }
    }
    let image = ImageGrid::new(12, 12, pixels)?;

    // Edge-detector-ish filter: top half positive, bottom half negative.
    let mut weights = vec![0.0; 16];
    for c in 0..4 {
        weights[c] = 0.35;
        weights[12 + c] = -0.35;
    }
    let norm: f64 = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    weights.iter_mut().for_each(|w| *w /= norm);

    let filter = FilterState::from_unitary(preparation_unitary(&weights)?)?;
    let map = conv_forward(&image, &filter, 4, 4, 1, Mode::Exact)?;
    println!(
        "feature map {}x{} (similarity = squared overlap per window):",
        map.rows(),
        map.cols()
    );
    for r in 0..map.rows() {
        let row: Vec<String> = (0..map.cols())
            .map(|c| {
                let cell = map.get(r, c);
                if cell.degenerate {
                    "  .  ".into()
                } else {
                    format!("{:.3}", cell.similarity)
                }
            })
            .collect();
        println!("  {}", row.join(" "));
    }
    println!("(dots mark degenerate all-black windows)");

    // The classical bridge: per window, (w · x̂)² equals the quantum output.
    let oracle = normalized_similarity_map(&image, &ClassicalFilter::new(4, 4, weights)?, 1)?;
    let stats = compare_maps(&map.similarity_grid(), &oracle)?;
    println!(
        "classical equivalence: max |Δ| = {:.2e}, pearson = {:.6}",
        stats.max_abs_error, stats.pearson_r
    );

    // Sampled map at 10000 shots for comparison.
    let sampled = conv_forward(
        &image,
        &filter,
        4,
        4,
        1,
        Mode::Shots {
            count: 10_000,
            seed: 3,
        },
    )?;
    let noise = compare_maps(&sampled.p0_grid(), &map.p0_grid())?;
    println!(
        "10000-shot map vs exact: max |Δp0| = {:.2e}, pearson = {:.6}",
        noise.max_abs_error, noise.pearson_r
    );
    Ok(())
}
