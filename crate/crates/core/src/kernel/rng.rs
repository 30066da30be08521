//! Seeded randomness. Every sampler in the crate draws from a ChaCha8 stream
//! so runs are reproducible across platforms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type DhRng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> DhRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-sample seed derived from a master seed (splitmix64 finaliser).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian(rng: &mut DhRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn uniform(rng: &mut DhRng) -> f64 {
    rng.random::<f64>()
}

/// Matrix of independent standard complex Gaussians.
pub fn complex_gaussian(rng: &mut DhRng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    // column-major fill order is part of the determinism contract
    DMatrix::from_fn(rows, cols, |_, _| {
        let re = gaussian(rng);
        let im = gaussian(rng);
        Complex64::new(re, im)
    })
}
