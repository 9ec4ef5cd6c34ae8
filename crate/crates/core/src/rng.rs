//! Deterministic seeding. Every random choice in the crate flows from one
//! user seed through [`derive_seed`], so runs are reproducible and parallel
//! work can draw from independent streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GtRng = ChaCha8Rng;

/// Mixes a parent seed with a stream label (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from(seed: u64) -> GtRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn stream_rng(seed: u64, stream: u64) -> GtRng {
    rng_from(derive_seed(seed, stream))
}
