use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{ReadoutError, ReadoutStats};

/// Shots per RNG stream. Fixed so results do not depend on thread count.
const CHUNK: u64 = 1 << 16;
/// Stream offset for the parameter-noise draws.
const NOISE_STREAM: u64 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomodyneEstimate {
    pub samples: u64,
    pub correct: u64,
    pub fidelity: f64,
    /// Binomial standard error of `fidelity`.
    pub std_error: f64,
}

impl HomodyneEstimate {
    fn from_counts(samples: u64, correct: u64) -> Self {
        let f = correct as f64 / samples as f64;
        Self { samples, correct, fidelity: f, std_error: (f * (1.0 - f) / samples as f64).sqrt() }
    }

    pub fn infidelity(&self) -> f64 {
        (self.samples - self.correct) as f64 / self.samples as f64
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Counts correct sign assignments over `n` shots. `mean(z)` gives the signal
/// mean for a shot given the noise draw `z` from the second stream.
fn count(n: u64, seed: u64, sigma: f64, s: f64, mean: impl Fn(f64) -> f64 + Sync, noisy: bool) -> u64 {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(n - c * CHUNK);
            let mut sig = rng(seed, c);
            let mut par = rng(seed, NOISE_STREAM | c);
            let mut ok = 0u64;
            for _ in 0..len {
                let z: f64 = if noisy { par.sample(StandardNormal) } else { 0.0 };
                let x = s * mean(z) + sigma * sig.sample::<f64, _>(StandardNormal);
                let outcome = if x > 0.0 { 1.0 } else { -1.0 };
                ok += (outcome == s) as u64;
            }
            ok
        })
        .sum()
}

fn check(sigma: f64, n: u64) -> Result<(), ReadoutError> {
    if !(sigma > 0.0) || n == 0 {
        return Err(ReadoutError::InvalidParams("need sigma > 0 and at least one sample".into()));
    }
    Ok(())
}

/// Gaussian integrated signals with mean `s mu` and deviation `sigma`,
/// assigned by their sign. Deterministic in `seed` for any thread count.
pub fn sample_homodyne(mu: f64, sigma: f64, s: i8, n: u64, seed: u64) -> Result<HomodyneEstimate, ReadoutError> {
    check(sigma, n)?;
    let s = match s {
        1 => 1.0,
        -1 => -1.0,
        _ => return Err(ReadoutError::InvalidParams(format!("qubit sign must be +1 or -1, got {s}"))),
    };
    Ok(HomodyneEstimate::from_counts(n, count(n, seed, sigma, s, |_| mu, false)))
}

/// Like [`sample_homodyne`] for the `+1` state, with the coupling of each
/// shot scaled by `1 + level z`, `z` standard normal. Only this QND-preserving
/// amplitude noise is modelled; the signal draws match `sample_homodyne`
/// exactly so `level = 0` reproduces it.
pub fn parameter_noise_fidelity(
    base: &ReadoutStats,
    level: f64,
    n: u64,
    seed: u64,
) -> Result<HomodyneEstimate, ReadoutError> {
    check(base.sigma, n)?;
    if !(level >= 0.0) {
        return Err(ReadoutError::InvalidParams("fluctuation level must be >= 0".into()));
    }
    // mu is proportional to |g|
    let mu = base.mu;
    let correct = count(n, seed, base.sigma, 1.0, |z| mu * (1.0 + level * z).abs(), level > 0.0);
    Ok(HomodyneEstimate::from_counts(n, correct))
}
