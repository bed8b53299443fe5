//! Rejection sampling and moment-based fitting.
//!
//! Random numbers come from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. Shard `k` of a sharded draw uses the same seed with
//! `set_stream(k)`; the unsharded sampler is shard 0. A uniform double is
//! `(next_u64() >> 11) · 2⁻⁵³`. Each proposal consumes two doubles: the
//! angle `2π·u1`, then the acceptance variate `u2`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::density::{cdf, unnormalized};
use crate::error::{QcError, Result};
use crate::params::QCParams;
use crate::spectral::{project_to_feasible, qc_from_moments, TrigMoments};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub angles: Vec<Angle>,
    pub seed: u64,
    pub params_used: QCParams,
    /// Number of uniform proposals drawn, accepted or not.
    pub proposals: u64,
}

impl SampleBatch {
    pub fn acceptance_rate(&self) -> f64 {
        self.angles.len() as f64 / self.proposals as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: QCParams,
    pub raw_moments: TrigMoments,
    /// Moments after projection (and perturbation, if any) that `params` reproduces.
    pub fitted_moments: TrigMoments,
    pub projected: bool,
    pub shrink_factor: f64,
    /// Set when the degenerate-factor retry was needed.
    pub perturbed: bool,
    /// Other tuples with the same density, if any.
    pub alternatives: Vec<QCParams>,
}

/// Empirical CDF against the model CDF at 32 model quantiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub max_deviation: f64,
    /// `1.63 / √n`, the 1% critical value.
    pub threshold: f64,
    pub pass: bool,
}

/// Number of quantile levels used by [`goodness_of_fit`].
pub const GOF_LEVELS: usize = 32;

/// Perturbation applied to `c1` when the projected moments have no QC factor.
pub const RETRY_PERTURBATION: f64 = 1e-9;

fn uniform01(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Envelope constant `M = (1 + r1 + r2)² / (1 + r1² + r2²)` bounding `2π·f`.
pub fn envelope(params: &QCParams) -> f64 {
    let s = 1.0 + params.r1 + params.r2;
    s * s / params.energy()
}

fn draw(params: &QCParams, n: usize, rng: &mut ChaCha20Rng) -> (Vec<Angle>, u64) {
    let poly = unnormalized(params);
    let bound = envelope(params) * params.energy();
    let mut out = Vec::with_capacity(n);
    let mut proposals = 0u64;
    while out.len() < n {
        let theta = TAU * uniform01(rng);
        let u = uniform01(rng);
        proposals += 1;
        if u * bound < poly.eval(theta) {
            out.push(Angle::new(theta));
        }
    }
    (out, proposals)
}

fn stream_rng(seed: u64, shard: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// `n` independent draws by rejection from the uniform proposal.
pub fn sample(params: &QCParams, n: usize, seed: u64) -> Result<SampleBatch> {
    sample_sharded(params, n, seed, 1)
}

/// Parallel sampling over `shards` threads.
///
/// Shard `k` draws `n / shards` values (the first `n % shards` shards draw
/// one extra) from stream `k`; results are concatenated in shard order, so
/// the output depends only on `(params, n, seed, shards)`.
pub fn sample_sharded(
    params: &QCParams,
    n: usize,
    seed: u64,
    shards: usize,
) -> Result<SampleBatch> {
    if n == 0 {
        return Err(QcError::InvalidCount);
    }
    let shards = shards.clamp(1, n);
    let sizes: Vec<usize> = (0..shards)
        .map(|k| n / shards + usize::from(k < n % shards))
        .collect();
    let parts: Vec<(Vec<Angle>, u64)> = if shards == 1 {
        vec![draw(params, n, &mut stream_rng(seed, 0))]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = sizes
                .iter()
                .enumerate()
                .map(|(k, &size)| {
                    s.spawn(move || draw(params, size, &mut stream_rng(seed, k as u64)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    let mut angles = Vec::with_capacity(n);
    let mut proposals = 0;
    for (a, p) in parts {
        angles.extend(a);
        proposals += p;
    }
    Ok(SampleBatch {
        angles,
        seed,
        params_used: *params,
        proposals,
    })
}

pub fn empirical_moments(angles: &[Angle]) -> Result<TrigMoments> {
    if angles.is_empty() {
        return Err(QcError::EmptySample);
    }
    let n = angles.len() as f64;
    let (s1, s2) = angles.iter().fold(
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        |(a, b), t| {
            (
                a + Complex64::from_polar(1.0, t.value()),
                b + Complex64::from_polar(1.0, 2.0 * t.value()),
            )
        },
    );
    Ok(TrigMoments::new(s1 / n, s2 / n))
}

/// Method-of-moments fit through projection and spectral factorization.
///
/// If the projected moments only admit factors with a vanishing middle
/// coefficient, `c1` is moved by [`RETRY_PERTURBATION`] in the direction
/// `arg(c2)/2` and the factorization is retried once.
pub fn fit(angles: &[Angle]) -> Result<FitResult> {
    if angles.is_empty() {
        return Err(QcError::EmptySample);
    }
    if angles.len() < 5 {
        return Err(QcError::TooFewObservations(angles.len()));
    }
    let raw = empirical_moments(angles)?;
    let proj = project_to_feasible(&raw);
    let mut target = proj.moments;
    let mut perturbed = false;
    let fact = match qc_from_moments(&target) {
        Ok(f) => f,
        Err(QcError::NotRepresentableAsQC) => {
            let dir = target.c2.arg() / 2.0;
            target.c1 += Complex64::from_polar(RETRY_PERTURBATION, dir);
            perturbed = true;
            qc_from_moments(&target).map_err(|_| QcError::Unfittable)?
        }
        Err(_) => return Err(QcError::Unfittable),
    };
    Ok(FitResult {
        params: fact.params,
        raw_moments: raw,
        fitted_moments: target,
        projected: proj.shrink_factor < 1.0,
        shrink_factor: proj.shrink_factor,
        perturbed,
        alternatives: fact.candidates[1..].to_vec(),
    })
}

fn quantile(params: &QCParams, level: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, TAU);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if cdf(params, Angle::new(mid), Angle::ZERO) < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Compares the empirical CDF (origin 0) with [`cdf`] at the levels
/// `k / 33`, `k = 1..=32`.
pub fn goodness_of_fit(params: &QCParams, angles: &[Angle]) -> Result<GofReport> {
    if angles.is_empty() {
        return Err(QcError::EmptySample);
    }
    let mut sorted: Vec<f64> = angles.iter().map(|a| a.value()).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let max_deviation = (1..=GOF_LEVELS)
        .map(|k| {
            let level = k as f64 / (GOF_LEVELS + 1) as f64;
            let q = quantile(params, level);
            let below = sorted.partition_point(|&t| t <= q) as f64;
            (below / n - level).abs()
        })
        .fold(0.0, f64::max);
    let threshold = 1.63 / n.sqrt();
    Ok(GofReport {
        max_deviation,
        threshold,
        pass: max_deviation < threshold,
    })
}
