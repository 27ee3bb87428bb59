//! Seeded, counter-based random streams.
//!
//! Every sampler takes an explicit `(seed, stream)` pair. ChaCha is a
//! counter-mode generator, so independent streams can be handed to parallel
//! workers and reruns stay bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point in the axis-aligned box `[lo, hi]`.
pub fn uniform_in_box<R: Rng>(rng: &mut R, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    lo.iter().zip(hi).map(|(l, h)| l + (h - l) * rng.random::<f64>()).collect()
}

/// Uniform point in `center + [-half, half]^n`.
pub fn uniform_in_cube<R: Rng>(rng: &mut R, center: &[f64], half: f64) -> Vec<f64> {
    center.iter().map(|c| c + half * (2.0 * rng.random::<f64>() - 1.0)).collect()
}
