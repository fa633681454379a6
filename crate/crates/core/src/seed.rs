//! Seed derivation.
//!
//! Per-trial seeds come from a counter-based mix of the master seed: trial `t`
//! uses `splitmix64(master ^ splitmix64(t + 1))`. Trials can therefore run in
//! any order, or in parallel, and still draw identical realizations. The
//! per-trial generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! which is specified bit-for-bit and platform independent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial.wrapping_add(1)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
