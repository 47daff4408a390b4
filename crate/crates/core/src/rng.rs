//! Deterministic random streams.
//!
//! Every random routine takes an explicit `&mut impl Rng`; nothing reads global state. The
//! helpers here build the ChaCha8 streams the CLI and the verification harnesses use, and
//! derive independent substreams from a master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream seeded directly from a 64-bit seed.
pub fn seeded(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for substream `index` of master seed `seed`.
///
/// `mix(seed, index) = splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub fn substream(seed: u64, index: u64) -> StreamRng {
    seeded(substream_seed(seed, index))
}
