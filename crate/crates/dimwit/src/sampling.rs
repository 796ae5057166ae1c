//! Seeded random streams and the samplers the simulator is built on.
//!
//! All randomness in the crate flows through ChaCha8, a counter-based stream
//! cipher RNG: a stream is fully determined by its 64-bit seed, so every
//! consumer derives an independent stream per restart or per measurement
//! setting and results are reproducible bit for bit.

use rand_chacha::rand_core::{RngCore, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

/// Poisson means above this are sampled from the normal approximation.
pub const POISSON_NORMAL_APPROX_MIN_MEAN: f64 = 1e4;
/// Sequential inversion is applied to Poisson chunks of at most this mean
/// (exp(-500) is still representable in f64, so the recursion cannot
/// underflow).
const POISSON_INVERSION_CHUNK: f64 = 500.0;
/// Binomial trial counts at or above this are sampled from the normal
/// approximation with continuity correction; below, per-trial Bernoulli.
pub const BINOMIAL_NORMAL_APPROX_MIN_TRIALS: u64 = 100_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in (0, 1], using the top 53 bits of one u64.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (((rng.next_u64() >> 11) + 1) as f64) * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller (the sine twin is discarded).
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Poisson sample with the given mean.
pub fn poisson(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    assert!(mean.is_finite() && mean >= 0.0, "Poisson mean must be finite and nonnegative");
    if mean == 0.0 {
        return 0;
    }
    if mean > POISSON_NORMAL_APPROX_MIN_MEAN {
        let z = standard_normal(rng);
        let x = mean + mean.sqrt() * z;
        return x.round().max(0.0) as u64;
    }
    // Poisson additivity: split into chunks small enough for inversion.
    let chunks = (mean / POISSON_INVERSION_CHUNK).ceil().max(1.0) as u64;
    let chunk_mean = mean / chunks as f64;
    (0..chunks).map(|_| poisson_inversion(rng, chunk_mean)).sum()
}

/// Sequential-search inversion, valid for small means.
fn poisson_inversion(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    let u = uniform(rng);
    let mut p = (-mean).exp();
    let mut cdf = p;
    let mut k = 0u64;
    // The cap only guards against floating-point stalls in the far tail.
    let cap = (mean + 20.0 * mean.sqrt() + 50.0) as u64;
    while u > cdf && k < cap {
        k += 1;
        p *= mean / k as f64;
        cdf += p;
    }
    k
}

/// Binomial sample over `n` trials with success probability `p`.
pub fn binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    assert!(p.is_finite(), "binomial probability must be finite");
    let p = p.clamp(0.0, 1.0);
    if n == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return n;
    }
    if n >= BINOMIAL_NORMAL_APPROX_MIN_TRIALS {
        let mean = n as f64 * p;
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        let z = standard_normal(rng);
        // continuity correction: round to the nearest integer
        let x = (mean + sd * z + 0.5).floor();
        return (x.max(0.0) as u64).min(n);
    }
    (0..n).filter(|_| uniform(rng) <= p).count() as u64
}
