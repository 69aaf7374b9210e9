//! Monte Carlo oracle built on the exact terminal law.
//!
//! The SDE solution is sampled directly — no time discretization —
//! because `S_T = (S_0 + α/σ) exp((r - σ²/2) T + σ √T Z) - (α/σ) e^{rT}`
//! holds exactly for a standard normal Z. Negative terminal prices are
//! retained, not floored; flooring would bias the estimator against the
//! closed form it exists to check.
//!
//! # Reproducibility
//!
//! Draws come from the ChaCha8 counter-based stream cipher. Work is split
//! into fixed chunks of 2^14 sample units; chunk `c` reads ChaCha stream `c`
//! of the seed, so the draw sequence is a function of `(seed, unit index)`
//! alone. Partial sums are combined in chunk order, making every estimate
//! bit-identical across thread counts and between the `parallel` feature and
//! the sequential fallback. Normals are produced by inverting Φ: Acklam's
//! rational approximation of the normal quantile polished with one Halley
//! step against this crate's Φ/φ kernel, so each unit consumes exactly one
//! 64-bit word of the stream.

#![allow(clippy::excessive_precision)]

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::norm;
use crate::pricing::OptionKind;

/// Sample-unit count per ChaCha stream; fixed so chunking is independent of
/// the executing thread count.
const CHUNK: u64 = 1 << 14;

/// Monte Carlo run configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    /// Total simulated paths (antithetic runs pair them two by two).
    pub paths: u64,
    /// Seed for the ChaCha8 draw stream.
    pub seed: u64,
    /// Pair each draw z with -z and average the two payoffs.
    pub antithetic: bool,
}

/// A Monte Carlo estimate with its sampling error.
///
/// `std_error` is the sample standard deviation of the independent sample
/// units divided by the square root of their count; with antithetic pairing
/// the unit is a pair average, so the divisor is `paths / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub paths: u64,
    pub seed: u64,
}

/// Precomputed constants of the exact terminal law.
#[derive(Clone, Copy, Debug)]
struct TerminalLaw {
    /// S_0 + α/σ
    scale: f64,
    /// (r - σ²/2) T
    drift: f64,
    /// σ √T
    vol: f64,
    /// (α/σ) e^{rT}
    shift: f64,
}

impl TerminalLaw {
    fn new(params: &ModelParams) -> Self {
        let a = params.alpha() / params.sigma();
        TerminalLaw {
            scale: params.s0() + a,
            drift: (params.rate() - 0.5 * params.sigma() * params.sigma()) * params.maturity(),
            vol: params.sigma() * params.maturity().sqrt(),
            shift: a * (params.rate() * params.maturity()).exp(),
        }
    }

    #[inline]
    fn terminal(&self, z: f64) -> f64 {
        self.scale * (self.drift + self.vol * z).exp() - self.shift
    }
}

/// Maps each standard-normal draw to a terminal price through the exact
/// solution of the SDE. Outputs may be negative when α ≠ 0.
pub fn simulate_terminal(params: &ModelParams, normals: &[f64]) -> Vec<f64> {
    let law = TerminalLaw::new(params);
    normals.iter().map(|&z| law.terminal(z)).collect()
}

/// A uniform in the open interval (0, 1) from one 64-bit word: 52 random
/// bits offset by half a lattice step, so both endpoints are excluded
/// exactly (no rounding up to 1.0 at the top of the range).
#[inline]
fn uniform_open01(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
}

// Acklam's rational approximation to the normal quantile (absolute relative
// error below 1.15e-9 on its own), used as the starting point for one Halley
// step against the crate's Φ/φ.
const ACKLAM_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ACKLAM_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ACKLAM_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ACKLAM_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const ACKLAM_SPLIT: f64 = 0.02425;

/// Φ⁻¹(p) for p in (0, 1): Acklam's approximation plus one Halley
/// refinement, accurate to a couple of ulps.
fn inv_norm_cdf(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    let x = if p < ACKLAM_SPLIT {
        let q = (-2.0 * p.ln()).sqrt();
        (((((ACKLAM_C[0] * q + ACKLAM_C[1]) * q + ACKLAM_C[2]) * q + ACKLAM_C[3]) * q
            + ACKLAM_C[4])
            * q
            + ACKLAM_C[5])
            / ((((ACKLAM_D[0] * q + ACKLAM_D[1]) * q + ACKLAM_D[2]) * q + ACKLAM_D[3]) * q + 1.0)
    } else if p > 1.0 - ACKLAM_SPLIT {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -((((((ACKLAM_C[0] * q + ACKLAM_C[1]) * q + ACKLAM_C[2]) * q + ACKLAM_C[3]) * q
            + ACKLAM_C[4])
            * q
            + ACKLAM_C[5])
            / ((((ACKLAM_D[0] * q + ACKLAM_D[1]) * q + ACKLAM_D[2]) * q + ACKLAM_D[3]) * q + 1.0))
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((ACKLAM_A[0] * r + ACKLAM_A[1]) * r + ACKLAM_A[2]) * r + ACKLAM_A[3]) * r
            + ACKLAM_A[4])
            * r
            + ACKLAM_A[5])
            * q
            / (((((ACKLAM_B[0] * r + ACKLAM_B[1]) * r + ACKLAM_B[2]) * r + ACKLAM_B[3]) * r
                + ACKLAM_B[4])
                * r
                + 1.0)
    };
    // Halley step: triples the correct digits, landing at f64 precision.
    let err = norm::cdf(x) - p;
    let u = err / norm::pdf(x);
    x - u / (1.0 + 0.5 * x * u)
}

#[inline]
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    inv_norm_cdf(uniform_open01(rng.next_u64()))
}

fn mc_estimate<G>(config: &McConfig, sequential: bool, sample: G) -> Result<McEstimate>
where
    G: Fn(f64) -> f64 + Sync,
{
    if config.paths == 0 {
        return Err(Error::NoPaths);
    }
    if config.antithetic && !config.paths.is_multiple_of(2) {
        return Err(Error::OddAntitheticPaths {
            paths: config.paths,
        });
    }
    let units = if config.antithetic {
        config.paths / 2
    } else {
        config.paths
    };
    let n_chunks = units.div_ceil(CHUNK) as usize;
    let seed = config.seed;
    let antithetic = config.antithetic;
    let chunk_sums = |c: usize| -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let lo = c as u64 * CHUNK;
        let hi = (lo + CHUNK).min(units);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in lo..hi {
            let z = standard_normal(&mut rng);
            let v = if antithetic {
                0.5 * (sample(z) + sample(-z))
            } else {
                sample(z)
            };
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    };
    let partials: Vec<(f64, f64)> = if sequential {
        (0..n_chunks).map(chunk_sums).collect()
    } else {
        crate::exec::map_indexed(n_chunks, chunk_sums)
    };
    let (mut total, mut total_sq) = (0.0, 0.0);
    for (s, ss) in partials {
        total += s;
        total_sq += ss;
    }
    let n = units as f64;
    let mean = total / n;
    let std_error = if units > 1 {
        (((total_sq - n * mean * mean) / (n - 1.0)).max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        paths: config.paths,
        seed: config.seed,
    })
}

fn price_sample(params: &ModelParams, strike: f64, kind: OptionKind) -> impl Fn(f64) -> f64 {
    let law = TerminalLaw::new(params);
    let discount = (-params.rate() * params.maturity()).exp();
    move |z| {
        let s_t = law.terminal(z);
        let payoff = match kind {
            OptionKind::Call => (s_t - strike).max(0.0),
            OptionKind::Put => (strike - s_t).max(0.0),
        };
        discount * payoff
    }
}

/// Discounted-payoff Monte Carlo estimate of the option premium.
pub fn mc_price(
    params: &ModelParams,
    strike: crate::model::Strike,
    kind: OptionKind,
    config: &McConfig,
) -> Result<McEstimate> {
    mc_estimate(config, false, price_sample(params, strike.value(), kind))
}

/// [`mc_price`] forced onto the sequential execution path. Bit-identical to
/// the parallel result by construction; kept public for benchmarking the two
/// against each other.
pub fn mc_price_sequential(
    params: &ModelParams,
    strike: crate::model::Strike,
    kind: OptionKind,
    config: &McConfig,
) -> Result<McEstimate> {
    mc_estimate(config, true, price_sample(params, strike.value(), kind))
}

/// Estimate of `E[e^{-rT} S_T]`, which the martingale property pins at S_0.
pub fn mc_discounted_spot(params: &ModelParams, config: &McConfig) -> Result<McEstimate> {
    let law = TerminalLaw::new(params);
    let discount = (-params.rate() * params.maturity()).exp();
    mc_estimate(config, false, move |z| discount * law.terminal(z))
}

/// Simulates whole trajectories on a requested time grid by evaluating the
/// exact solution on a forward-constructed Brownian path (independent
/// increments `W_{t+Δ} - W_t ~ N(0, Δ)`; no discretization error at the grid
/// points). Returns one row per path, one column per time.
///
/// Path `p` draws from ChaCha stream `p` (stream `p/2` with the sign flipped
/// for odd `p` when `antithetic` is set), so any subset of paths is
/// reproducible in isolation.
pub fn simulate_paths(
    params: &ModelParams,
    times: &[f64],
    n_paths: u64,
    seed: u64,
    antithetic: bool,
) -> Result<Vec<Vec<f64>>> {
    if n_paths == 0 {
        return Err(Error::NoPaths);
    }
    if antithetic && !n_paths.is_multiple_of(2) {
        return Err(Error::OddAntitheticPaths { paths: n_paths });
    }
    if times.is_empty()
        || times.iter().any(|t| !t.is_finite())
        || times[0] < 0.0
        || times.windows(2).any(|w| w[1] <= w[0])
        || *times.last().unwrap() > params.maturity()
    {
        return Err(Error::BadTimeGrid);
    }
    let a = params.alpha() / params.sigma();
    let scale = params.s0() + a;
    let half_var = params.rate() - 0.5 * params.sigma() * params.sigma();
    let sigma = params.sigma();
    let rate = params.rate();
    let times_owned: Vec<f64> = times.to_vec();
    let rows = crate::exec::map_indexed(n_paths as usize, move |p| {
        let (stream, sign) = if antithetic {
            ((p / 2) as u64, if p % 2 == 0 { 1.0 } else { -1.0 })
        } else {
            (p as u64, 1.0)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut w = 0.0;
        let mut prev_t = 0.0;
        let mut row = Vec::with_capacity(times_owned.len());
        for &t in &times_owned {
            if t > prev_t {
                let dt = t - prev_t;
                w += dt.sqrt() * sign * standard_normal(&mut rng);
                prev_t = t;
            }
            row.push(scale * (half_var * t + sigma * w).exp() - a * (rate * t).exp());
        }
        row
    });
    Ok(rows)
}
