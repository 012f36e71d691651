//! Shared helpers for integration tests: deterministic MNIST-like images
//! (bright blobs on a black background, byte-quantized) and file utilities.

// Each integration-test target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::Rng;

use qconv::encoding::ImageGrid;
use qconv::rng::{derive_seed, seeded_rng};

/// Byte-quantized blob images: corners stay exactly zero like real digit
/// scans, so degenerate windows occur.
pub fn synthetic_images(seed: u64, count: usize) -> Vec<ImageGrid> {
    (0..count)
        .map(|i| {
            let mut rng = seeded_rng(derive_seed(seed, i as u64));
            let blobs: Vec<(f64, f64, f64, f64)> = (0..rng.random_range(2..5))
                .map(|_| {
                    (
                        rng.random_range(9.0..19.0), // center row
                        rng.random_range(9.0..19.0), // center col
                        rng.random_range(1.5..3.0),  // sigma
                        rng.random_range(0.6..1.0),  // amplitude
                    )
                })
                .collect();
            let bytes: Vec<u8> = (0..28 * 28)
                .map(|p| {
                    let (r, c) = ((p / 28) as f64, (p % 28) as f64);
                    let v: f64 = blobs
                        .iter()
                        .map(|(br, bc, sigma, amp)| {
                            let d2 = (r - br).powi(2) + (c - bc).powi(2);
                            amp * (-d2 / (2.0 * sigma * sigma)).exp()
                        })
                        .sum();
                    (v.min(1.0) * 255.0).round() as u8
                })
                .collect();
            ImageGrid::from_bytes(28, 28, &bytes).expect("bytes are in range")
        })
        .collect()
}

/// Write a synthetic IDX dataset and return its path.
pub fn write_synthetic_dataset(dir: &Path, seed: u64, count: usize) -> std::path::PathBuf {
    let path = dir.join("images.idx");
    qconv::mnist::write_idx_images(&path, &synthetic_images(seed, count)).unwrap();
    path
}

/// All regular files in a directory, keyed by file name.
pub fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            out.insert(
                entry.file_name().to_string_lossy().into_owned(),
                fs::read(entry.path()).unwrap(),
            );
        }
    }
    out
}

/// Byte-level equality of two output directories.
pub fn assert_dirs_identical(a: &Path, b: &Path) {
    let ca = dir_contents(a);
    let cb = dir_contents(b);
    assert_eq!(
        ca.keys().collect::<Vec<_>>(),
        cb.keys().collect::<Vec<_>>(),
        "file sets differ"
    );
    for (name, bytes) in &ca {
        assert_eq!(bytes, &cb[name], "file {name} differs");
    }
}
