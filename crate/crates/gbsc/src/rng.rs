//! Seed derivation for deterministic parallel work.
//!
//! Every randomized stage owns a single `u64` seed; independent child tasks
//! (chains, per-candidate post-processing, per-instance experiment runs) get
//! seeds split from it by index so results never depend on scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives the seed for child task `index` from `master`.
///
/// SplitMix64 finalizer over the (master, index) pair: cheap, stateless, and
/// avalanching, so adjacent indices produce unrelated streams.
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The deterministic generator used throughout the crate.
pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
