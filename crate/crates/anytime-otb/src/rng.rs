//! Seeded, stream-splittable randomness.
//!
//! Every experiment seed derives independent ChaCha8 streams: one for problem
//! generation (random rotations, synthetic data) and one for gradient noise.
//! The counter-based construction makes trials reproducible bit for bit and
//! lets sweeps run seeds in parallel without shared state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::Vector;

/// Stream id for problem-instance generation.
pub const STREAM_PROBLEM: u64 = 0;
/// Stream id for gradient-oracle noise.
pub const STREAM_NOISE: u64 = 1;

/// The run RNG: ChaCha8, seeded per trial, one independent stream per role.
pub type RunRng = ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> RunRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One standard normal draw (Box-Muller, cosine branch).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Vector of iid standard normal coordinates.
pub fn normal_vector(rng: &mut impl Rng, dim: usize) -> Vector {
    let coords = (0..dim).map(|_| standard_normal(rng)).collect();
    Vector::new(coords).expect("normal draws are finite")
}

/// Uniform draw on the sphere of the given radius (centered at the origin).
pub fn sample_sphere(rng: &mut impl Rng, dim: usize, radius: f64) -> Vector {
    if radius == 0.0 {
        return Vector::zeros(dim);
    }
    loop {
        let g = normal_vector(rng, dim);
        let norm = g.norm();
        if norm > 1e-12 {
            return g.scaled(radius / norm);
        }
    }
}

/// Uniform draw from the ball of the given radius (centered at the origin).
pub fn sample_ball(rng: &mut impl Rng, dim: usize, radius: f64) -> Vector {
    let r = radius * rng.random::<f64>().powf(1.0 / dim as f64);
    sample_sphere(rng, dim, r)
}
