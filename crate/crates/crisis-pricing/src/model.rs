//! Model parameters, validity domain and the d-functions.
//!
//! The underlying follows the crisis diffusion
//!
//! ```text
//! dS_t = r S_t dt + (σ S_t + α e^{rt}) dW_t
//! ```
//!
//! whose exact solution is
//! `S_t = (S_0 + α/σ) exp((r - σ²/2) t + σ W_t) - (α/σ) e^{rt}`.
//! With α = 0 this is the lognormal Black-Scholes dynamic; α ≠ 0 shifts the
//! diffusion coefficient additively and breaks lognormality (negative
//! prices become reachable).
//!
//! The standardized log-moneyness pair at time t is
//!
//! ```text
//! d1 = [ ln( (S_t + (α/σ) e^{rt}) / (K + (α/σ) e^{rT}) ) + (r + σ²/2) τ ] / (σ √τ)
//! d2 = d1 - σ √τ,        τ = T - t
//! ```
//!
//! This module also carries the symbolic partial derivatives of d1/d2 in σ
//! and τ that the second-order sensitivities are assembled from. Both are
//! derived holding S_t, t, K, r, α fixed; the τ-derivative varies the
//! maturity T, so the `e^{rT}` inside the log ratio moves with τ while
//! `e^{rt}` stays put. Each partial is verified against Richardson finite
//! differences in the tests.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::norm;

/// Operations refuse to evaluate closer to expiry than this (years).
pub const MIN_TAU: f64 = 1e-12;

/// The five constants defining the market: initial level, short rate,
/// volatility, crisis coefficient and maturity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    s0: f64,
    rate: f64,
    sigma: f64,
    alpha: f64,
    maturity: f64,
}

impl ModelParams {
    /// Validates and builds a parameter set.
    ///
    /// Requires `s0 > 0`, `sigma > 0`, `maturity > 0`, finiteness of every
    /// field and of `e^{r T}`, and positivity of the shifted initial level
    /// `s0 + alpha/sigma` (the log argument of d1 at t = 0).
    pub fn new(s0: f64, rate: f64, sigma: f64, alpha: f64, maturity: f64) -> Result<Self> {
        ensure_positive("s0", s0)?;
        ensure_finite("rate", rate)?;
        ensure_positive("sigma", sigma)?;
        ensure_finite("alpha", alpha)?;
        ensure_positive("maturity", maturity)?;
        ensure_finite("exp(rate * maturity)", (rate * maturity).exp())?;
        let shifted = s0 + alpha / sigma;
        if shifted <= 0.0 {
            return Err(Error::ShiftedSpot { value: shifted });
        }
        Ok(ModelParams {
            s0,
            rate,
            sigma,
            alpha,
            maturity,
        })
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }
    pub fn rate(&self) -> f64 {
        self.rate
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn maturity(&self) -> f64 {
        self.maturity
    }

    /// Same parameters with a bumped initial level (re-validated).
    pub fn with_s0(&self, s0: f64) -> Result<Self> {
        Self::new(s0, self.rate, self.sigma, self.alpha, self.maturity)
    }
    /// Same parameters with a bumped rate (re-validated).
    pub fn with_rate(&self, rate: f64) -> Result<Self> {
        Self::new(self.s0, rate, self.sigma, self.alpha, self.maturity)
    }
    /// Same parameters with a bumped volatility (re-validated).
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.s0, self.rate, sigma, self.alpha, self.maturity)
    }
    /// Same parameters with a bumped crisis coefficient (re-validated).
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.s0, self.rate, self.sigma, alpha, self.maturity)
    }
    /// Same parameters with a bumped maturity (re-validated).
    pub fn with_maturity(&self, maturity: f64) -> Result<Self> {
        Self::new(self.s0, self.rate, self.sigma, self.alpha, maturity)
    }
}

/// Evaluation point: calendar time `t` and observed spot `S_t`.
///
/// The spot may be negative (the model admits negative excursions when
/// α ≠ 0); what must stay positive is the shifted spot, which is checked
/// wherever the d-functions are evaluated because it depends on the
/// parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarketState {
    t: f64,
    spot: f64,
}

impl MarketState {
    /// Validates finiteness and `t >= 0`. The upper bound `t < T` and the
    /// shifted-spot positivity are enforced at evaluation time, where the
    /// parameters are known.
    pub fn new(t: f64, spot: f64) -> Result<Self> {
        ensure_finite("t", t)?;
        ensure_finite("spot", spot)?;
        if t < 0.0 {
            return Err(Error::TimeOutOfRange { t });
        }
        Ok(MarketState { t, spot })
    }

    /// Builds a state without the `t >= 0` window check.
    ///
    /// Finite-difference harnesses probing the calendar-time derivative at
    /// t = 0 need to evaluate the closed form at slightly negative times;
    /// the formulas extend analytically and all other domain checks still
    /// apply at evaluation.
    pub fn extrapolating(t: f64, spot: f64) -> Self {
        debug_assert!(t.is_finite() && spot.is_finite());
        MarketState { t, spot }
    }

    pub fn t(&self) -> f64 {
        self.t
    }
    pub fn spot(&self) -> f64 {
        self.spot
    }

    /// Same time, different spot.
    pub fn with_spot(&self, spot: f64) -> Result<Self> {
        ensure_finite("spot", spot)?;
        Ok(MarketState { t: self.t, spot })
    }
}

/// A strictly positive strike.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strike(f64);

impl Strike {
    pub fn new(k: f64) -> Result<Self> {
        ensure_positive("strike", k)?;
        Ok(Strike(k))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The standardized log-moneyness pair and the time to maturity it was
/// computed for. `d1 - d2 = σ √τ` holds by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DPair {
    pub d1: f64,
    pub d2: f64,
    pub tau: f64,
}

/// Everything the pricing and sensitivity formulas share, computed once per
/// evaluation point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EvalContext {
    pub d1: f64,
    pub d2: f64,
    pub tau: f64,
    pub sqrt_tau: f64,
    /// e^{r t}
    pub growth_t: f64,
    /// e^{-r τ}
    pub discount: f64,
    /// S_t + (α/σ) e^{rt}
    pub shifted_spot: f64,
    /// K e^{-rτ} + (α/σ) e^{rt}
    pub shifted_strike_pv: f64,
    /// K + (α/σ) e^{rT}
    pub shifted_strike: f64,
    pub cdf_d1: f64,
    pub cdf_d2: f64,
    pub pdf_d1: f64,
    pub pdf_d2: f64,
    pub spot: f64,
    pub strike: f64,
    pub t: f64,
    pub rate: f64,
    pub sigma: f64,
    pub alpha: f64,
}

pub(crate) fn context(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
) -> Result<EvalContext> {
    let tau = params.maturity - state.t;
    if tau < MIN_TAU || tau.is_nan() {
        return Err(Error::Maturity { tau });
    }
    let a = params.alpha / params.sigma;
    let growth_t = (params.rate * state.t).exp();
    let growth_mat = (params.rate * params.maturity).exp();
    let shifted_spot = state.spot + a * growth_t;
    if shifted_spot <= 0.0 {
        return Err(Error::ShiftedSpot {
            value: shifted_spot,
        });
    }
    let shifted_strike = strike.value() + a * growth_mat;
    if shifted_strike <= 0.0 {
        return Err(Error::ShiftedStrike {
            value: shifted_strike,
        });
    }
    let sqrt_tau = tau.sqrt();
    let d1 = ((shifted_spot / shifted_strike).ln()
        + (params.rate + 0.5 * params.sigma * params.sigma) * tau)
        / (params.sigma * sqrt_tau);
    let d2 = d1 - params.sigma * sqrt_tau;
    let discount = (-params.rate * tau).exp();
    Ok(EvalContext {
        d1,
        d2,
        tau,
        sqrt_tau,
        growth_t,
        discount,
        shifted_spot,
        shifted_strike_pv: strike.value() * discount + a * growth_t,
        shifted_strike,
        cdf_d1: norm::cdf(d1),
        cdf_d2: norm::cdf(d2),
        pdf_d1: norm::pdf(d1),
        pdf_d2: norm::pdf(d2),
        spot: state.spot,
        strike: strike.value(),
        t: state.t,
        rate: params.rate,
        sigma: params.sigma,
        alpha: params.alpha,
    })
}

/// The pair (d1, d2) at the given evaluation point. With t = 0 and
/// `spot = s0` this reproduces the time-0 formulas.
pub fn d_pair(params: ModelParams, state: MarketState, strike: Strike) -> Result<DPair> {
    let ctx = context(params, state, strike)?;
    Ok(DPair {
        d1: ctx.d1,
        d2: ctx.d2,
        tau: ctx.tau,
    })
}

pub(crate) fn d1_dsigma_from(ctx: &EvalContext) -> f64 {
    let sigma = ctx.sigma;
    -ctx.d1 / sigma
        + ctx.sqrt_tau
        + ctx.alpha / (sigma * sigma * sigma * ctx.sqrt_tau)
            * ctx.growth_t
            * (ctx.spot - ctx.strike * ctx.discount)
            / (ctx.shifted_strike_pv * ctx.shifted_spot)
}

pub(crate) fn d1_dtau_from(ctx: &EvalContext) -> f64 {
    let sigma = ctx.sigma;
    -ctx.d1 / (2.0 * ctx.tau) + (ctx.rate + 0.5 * sigma * sigma) / (sigma * ctx.sqrt_tau)
        - ctx.alpha * ctx.rate / (sigma * sigma * ctx.sqrt_tau) * ctx.growth_t
            / ctx.shifted_strike_pv
}

/// ∂d1/∂σ holding S_t, t, T, K, r and α fixed. The α/σ terms inside the log
/// ratio depend on σ, which produces the α/σ³ correction beyond the
/// Black-Scholes limit `-d1/σ + √τ`.
pub fn d1_dsigma(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    Ok(d1_dsigma_from(&context(params, state, strike)?))
}

/// ∂d2/∂σ = ∂d1/∂σ - √τ.
pub fn d2_dsigma(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    let ctx = context(params, state, strike)?;
    Ok(d1_dsigma_from(&ctx) - ctx.sqrt_tau)
}

/// ∂d1/∂τ holding t, S_t, σ, r, α and K fixed while the maturity T varies,
/// so the `e^{rT}` inside the log ratio moves with τ.
pub fn d1_dtau(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    Ok(d1_dtau_from(&context(params, state, strike)?))
}

/// ∂d2/∂τ = ∂d1/∂τ - σ/(2√τ).
pub fn d2_dtau(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    let ctx = context(params, state, strike)?;
    Ok(d1_dtau_from(&ctx) - 0.5 * params.sigma() / ctx.sqrt_tau)
}
