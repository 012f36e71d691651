//! Deterministic seed derivation for parallel sampling streams.
//!
//! Every sampled quantity in the crate draws from a `ChaCha8Rng` seeded with a
//! value derived from a master seed and a stream index. Window evaluations,
//! shifted gradient evaluations, and training iterations each get their own
//! stream, so results do not depend on evaluation order or thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derive a child seed from a master seed and a stream index.
///
/// Uses the splitmix64 finalizer; not cryptographic, just well-separated
/// deterministic streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        ^ index
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(0x243f_6a88_85a3_08d3);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The generator used for all sampling in this crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
