//! Monte Carlo oracles over uniformly sampled points of `B^{2n}(r0)`.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`). Samples are drawn in
//! fixed-size chunks; chunk `c` uses the generator seeded with `seed` and
//! switched to stream `c`. Per-chunk mean/variance accumulators are merged in
//! chunk order, so an estimate depends only on `(parameters, samples, seed)`
//! and not on how many worker threads ran.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Open01, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorial, rational_to_f64, Rational};
use crate::error::{Error, Result};
use crate::moments::check_moment_params;
use crate::morphism::{embed_ball_to_cpn, trace_action, BallPoint};

pub const CHUNK_SIZE: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean - exact| / std_error`; infinite when the error is zero but the
    /// mean is off.
    pub fn sigma_distance(&self, exact: f64) -> f64 {
        let diff = (self.mean - exact).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    fn scaled(self, factor: f64) -> McEstimate {
        McEstimate {
            mean: self.mean * factor,
            std_error: self.std_error * factor.abs(),
            ..self
        }
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * self.count as f64 * other.count as f64 / count as f64;
        Moments { count, mean, m2 }
    }
}

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Uniform point of the open ball `B^{2n}(r0)` as `2n` real coordinates:
/// normalized Gaussian direction, radius `r0 * U^{1/(2n)}`.
pub fn sample_ball<R: Rng + ?Sized>(n: u32, r0: f64, rng: &mut R) -> Vec<f64> {
    let dim = 2 * n as usize;
    loop {
        let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let u: f64 = Open01.sample(rng);
        let scale = r0 * u.powf(1.0 / dim as f64) / norm;
        x.iter_mut().for_each(|v| *v *= scale);
        // rounding can push U^{1/2n} to exactly 1
        if x.iter().map(|v| v * v).sum::<f64>() < r0 * r0 {
            return x;
        }
    }
}

/// Mean and standard error of `integrand` over uniform points of `B^{2n}(r0)`.
pub fn estimate_over_ball<F>(n: u32, r0: f64, samples: u64, seed: u64, integrand: F) -> McEstimate
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let total = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let len = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            let mut acc = Moments::default();
            for _ in 0..len {
                acc.push(integrand(&sample_ball(n, r0, &mut rng)));
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let variance = if total.count > 1 {
        total.m2 / (total.count - 1) as f64
    } else {
        0.0
    };
    McEstimate {
        mean: total.mean,
        std_error: (variance / total.count as f64).sqrt(),
        samples: total.count,
        seed,
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 1 {
        return Err(Error::out_of_range("samples", samples, "samples >= 1"));
    }
    Ok(())
}

fn factorial_f64(n: u32) -> f64 {
    rational_to_f64(&Rational::from_integer(factorial(n)))
}

/// `Vol(B^{2n}(r0)) = pi^n r0^{2n} / n!`
pub fn ball_volume(n: u32, r0: f64) -> f64 {
    PI.powi(n as i32) * r0.powi(2 * n as i32) / factorial_f64(n)
}

/// Estimate of `int_{B^{2n}(r0)} (|z_1|^2 + ... + |z_l|^2)^k dvol`.
pub fn mc_ball_moment(
    n: u32,
    l: u32,
    k: u32,
    r0: f64,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_moment_params(n, l, k)?;
    check_samples(samples)?;
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::out_of_range("r0", r0, "r0 > 0"));
    }
    let coords = 2 * l as usize;
    let est = estimate_over_ball(n, r0, samples, seed, |x| {
        x[..coords]
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            .powi(k as i32)
    });
    Ok(est.scaled(ball_volume(n, r0)))
}

fn embedded_trace(n: u32, k: u32, x: &[f64]) -> f64 {
    let z = BallPoint::from_real(x).expect("sampled inside the unit ball");
    trace_action(n, k, &embed_ball_to_cpn(&z)).expect("embedded points avoid the hyperplane")
}

/// Average over `CP^n` of the enclosed trace volume, computed on the dense
/// embedded unit ball. Estimates `q(n, k) pi^k / k!`.
pub fn mc_cpn_average(n: u32, k: u32, samples: u64, seed: u64) -> Result<McEstimate> {
    crate::morphism::cpn_coefficient(n, k)?;
    check_samples(samples)?;
    Ok(estimate_over_ball(n, 1.0, samples, seed, |x| {
        embedded_trace(n, k, x)
    }))
}

/// Blow-up average: integral over the unit ball minus the integral over
/// `B^{2n}(rho)`, divided by `pi^n (1 - rho^{2n}) / n!`.
pub fn mc_blowup_average(n: u32, k: u32, rho: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    crate::morphism::cpn_coefficient(n, k)?;
    check_samples(samples)?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::out_of_range("rho", rho, "0 < rho < 1"));
    }
    let rho_sqr = rho * rho;
    let est = estimate_over_ball(n, 1.0, samples, seed, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 < rho_sqr {
            0.0
        } else {
            embedded_trace(n, k, x)
        }
    });
    Ok(est.scaled(1.0 / (1.0 - rho_sqr.powi(n as i32))))
}
