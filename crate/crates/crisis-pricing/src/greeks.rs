//! First- and second-order price sensitivities.
//!
//! First order: Δ = ∂C/∂S, Γ = ∂²C/∂S², Θ = ∂C/∂t, ρ = ∂C/∂r, ν = ∂C/∂σ.
//! Second order: Vanna = ∂²C/∂S∂σ, Volga = ∂²C/∂σ², Vega bleed = ∂²C/∂T∂σ,
//! Strike gamma = ∂²C/∂K².
//!
//! Every formula here is the symbolic derivative of the implemented price,
//! with each r- and t-channel (discounting, drift, the e^{rt} and e^{rT}
//! factors multiplying α/σ) accounted for. Most of the cross terms collapse
//! through the ratio identity
//!
//! ```text
//! φ(d2) (K e^{-rτ} + (α/σ) e^{rt}) = φ(d1) (S_t + (α/σ) e^{rt})
//! ```
//!
//! which holds because d1² - d2² = 2(ln(A/B) + rτ) for the shifted spot A
//! and shifted strike B. Volga and Vega bleed are assembled from the
//! σ- and τ-partials of d1/d2 in the model module — one tested source of
//! truth per partial. Θ is the calendar-time derivative ∂C/∂t at fixed
//! spot, in per-year units; any per-day presentation is left to callers.
//!
//! Where the reference text prints inconsistent variants of a formula, this
//! module implements the variant that survives finite-difference
//! adjudication; the [`crate::ledger`] module records every flagged variant
//! with its verdict.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    context, d1_dsigma_from, d1_dtau_from, EvalContext, MarketState, ModelParams, Strike,
};
use crate::pricing::{price_from, OptionKind, Price};

/// One option's premium together with all first- and second-order
/// sensitivities at that point. Gamma, vega, vanna, volga, vega bleed and
/// strike gamma are kind-independent; price, delta, theta and rho are not.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreekLadder {
    pub price: Price,
    /// ∂C/∂S (dimensionless)
    pub delta: f64,
    /// ∂²C/∂S² (per currency unit)
    pub gamma: f64,
    /// ∂C/∂t (per year)
    pub theta: f64,
    /// ∂C/∂r (per unit rate)
    pub rho: f64,
    /// ∂C/∂σ (per unit volatility)
    pub vega: f64,
    /// ∂²C/∂S∂σ
    pub vanna: f64,
    /// ∂²C/∂σ²
    pub volga: f64,
    /// ∂²C/∂T∂σ
    pub vega_bleed: f64,
    /// ∂²C/∂K²
    pub strike_gamma: f64,
}

pub(crate) fn delta_from(ctx: &EvalContext, kind: OptionKind) -> f64 {
    match kind {
        OptionKind::Call => ctx.cdf_d1,
        OptionKind::Put => ctx.cdf_d1 - 1.0,
    }
}

/// `σ S_t + α e^{rt}`, the diffusion coefficient at the evaluation point.
pub(crate) fn diffusion_from(ctx: &EvalContext) -> f64 {
    ctx.sigma * ctx.spot + ctx.alpha * ctx.growth_t
}

pub(crate) fn gamma_from(ctx: &EvalContext) -> Result<f64> {
    let diffusion = diffusion_from(ctx);
    if diffusion <= 0.0 {
        return Err(Error::DegenerateDiffusion { value: diffusion });
    }
    Ok(ctx.pdf_d1 / (diffusion * ctx.sqrt_tau))
}

pub(crate) fn theta_from(ctx: &EvalContext, kind: OptionKind) -> f64 {
    let diffusion = diffusion_from(ctx);
    let call = -diffusion * ctx.pdf_d1 / (2.0 * ctx.sqrt_tau)
        - ctx.rate * ctx.strike * ctx.discount * ctx.cdf_d2
        + ctx.rate * ctx.alpha / ctx.sigma * ctx.growth_t * (ctx.cdf_d1 - ctx.cdf_d2);
    match kind {
        OptionKind::Call => call,
        OptionKind::Put => call + ctx.rate * ctx.strike * ctx.discount,
    }
}

pub(crate) fn rho_from(ctx: &EvalContext, kind: OptionKind) -> f64 {
    // All d-channel terms cancel through the ratio identity because
    // ∂d1/∂r = ∂d2/∂r; what survives are the explicit e^{rt} and discount
    // factors.
    let call = ctx.tau * ctx.strike * ctx.discount * ctx.cdf_d2
        + ctx.alpha * ctx.t / ctx.sigma * ctx.growth_t * (ctx.cdf_d1 - ctx.cdf_d2);
    match kind {
        OptionKind::Call => call,
        OptionKind::Put => call - ctx.tau * ctx.strike * ctx.discount,
    }
}

pub(crate) fn vega_from(ctx: &EvalContext) -> f64 {
    ctx.alpha / (ctx.sigma * ctx.sigma) * ctx.growth_t * (ctx.cdf_d2 - ctx.cdf_d1)
        + ctx.pdf_d1 * ctx.shifted_spot * ctx.sqrt_tau
}

pub(crate) fn vanna_from(ctx: &EvalContext, gamma: f64) -> f64 {
    ctx.alpha / (ctx.sigma * ctx.sigma)
        * ctx.growth_t
        * gamma
        * (ctx.spot - ctx.strike * ctx.discount)
        / ctx.shifted_strike_pv
        + ctx.pdf_d1 / ctx.sigma * (ctx.sigma * ctx.sqrt_tau - ctx.d1)
}

pub(crate) fn volga_from(ctx: &EvalContext, d1_dsigma: f64) -> f64 {
    let sigma = ctx.sigma;
    let d2_dsigma = d1_dsigma - ctx.sqrt_tau;
    let prefactor = ctx.alpha / (sigma * sigma) * ctx.growth_t;
    -2.0 * ctx.alpha / (sigma * sigma * sigma) * ctx.growth_t * (ctx.cdf_d2 - ctx.cdf_d1)
        + prefactor * (ctx.pdf_d2 * d2_dsigma - ctx.pdf_d1 * d1_dsigma)
        + ctx.sqrt_tau * ctx.pdf_d1 * (-prefactor - ctx.d1 * ctx.shifted_spot * d1_dsigma)
}

pub(crate) fn vega_bleed_from(ctx: &EvalContext, d1_dtau: f64) -> f64 {
    let d2_dtau = d1_dtau - 0.5 * ctx.sigma / ctx.sqrt_tau;
    ctx.alpha / (ctx.sigma * ctx.sigma)
        * ctx.growth_t
        * (ctx.pdf_d2 * d2_dtau - ctx.pdf_d1 * d1_dtau)
        + ctx.sqrt_tau * ctx.pdf_d1 * ctx.shifted_spot * (0.5 / ctx.tau - ctx.d1 * d1_dtau)
}

pub(crate) fn strike_delta_from(ctx: &EvalContext, kind: OptionKind) -> f64 {
    // ∂C/∂K = -e^{-rτ} Φ(d2); the d-derivative terms cancel by the ratio
    // identity since ∂d1/∂K = ∂d2/∂K.
    match kind {
        OptionKind::Call => -ctx.discount * ctx.cdf_d2,
        OptionKind::Put => ctx.discount * (1.0 - ctx.cdf_d2),
    }
}

pub(crate) fn strike_gamma_from(ctx: &EvalContext) -> f64 {
    ctx.discount * ctx.pdf_d2 / (ctx.sigma * ctx.sqrt_tau * ctx.shifted_strike)
}

/// Δ: Φ(d1) for calls, Φ(d1) - 1 for puts.
pub fn delta(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
) -> Result<f64> {
    Ok(delta_from(&context(params, state, strike)?, kind))
}

/// Γ = φ(d1) / ((σ S_t + α e^{rt}) √τ), identical for calls and puts.
pub fn gamma(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    gamma_from(&context(params, state, strike)?)
}

/// Θ = ∂C/∂t at fixed spot, per year. A put's theta exceeds the call's by
/// `r K e^{-rτ}`.
pub fn theta(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
) -> Result<f64> {
    Ok(theta_from(&context(params, state, strike)?, kind))
}

/// ρ = ∂C/∂r, with every r-channel (discount, drift, e^{rt}, e^{rT})
/// accounted for. A put's rho is the call's less `τ K e^{-rτ}`.
pub fn rho(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
) -> Result<f64> {
    Ok(rho_from(&context(params, state, strike)?, kind))
}

/// ν = (α/σ²) e^{rt} (Φ(d2) - Φ(d1)) + φ(d1) (S_t + (α/σ) e^{rt}) √τ,
/// identical for calls and puts.
pub fn vega(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    Ok(vega_from(&context(params, state, strike)?))
}

/// Vanna = ∂²C/∂S∂σ. Equals ∂ν/∂S and, by Schwarz symmetry, ∂Δ/∂σ.
pub fn vanna(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    let ctx = context(params, state, strike)?;
    let g = gamma_from(&ctx)?;
    Ok(vanna_from(&ctx, g))
}

/// Volga = ∂²C/∂σ², assembled from the σ-partials of d1/d2.
pub fn volga(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    let ctx = context(params, state, strike)?;
    let d1s = d1_dsigma_from(&ctx);
    Ok(volga_from(&ctx, d1s))
}

/// Vega bleed = ∂²C/∂T∂σ (maturity varies, calendar time fixed), assembled
/// from the τ-partials of d1/d2.
pub fn vega_bleed(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    let ctx = context(params, state, strike)?;
    let d1t = d1_dtau_from(&ctx);
    Ok(vega_bleed_from(&ctx, d1t))
}

/// ∂C/∂K = -e^{-rτ} Φ(d2) for calls, e^{-rτ} Φ(-d2) for puts.
pub fn strike_delta(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
) -> Result<f64> {
    Ok(strike_delta_from(&context(params, state, strike)?, kind))
}

/// Strike gamma = ∂²C/∂K² = e^{-rτ} φ(d2) / (σ √τ (K + (α/σ) e^{rT})),
/// proportional to the risk-neutral density of S_T at K.
pub fn strike_gamma(params: ModelParams, state: MarketState, strike: Strike) -> Result<f64> {
    Ok(strike_gamma_from(&context(params, state, strike)?))
}

/// All sensitivities from a single shared d-function evaluation. Field for
/// field, the result is bit-identical to the individual operations.
pub fn ladder(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
) -> Result<GreekLadder> {
    let ctx = context(params, state, strike)?;
    let gamma = gamma_from(&ctx)?;
    let d1s = d1_dsigma_from(&ctx);
    let d1t = d1_dtau_from(&ctx);
    Ok(GreekLadder {
        price: Price::from_raw(price_from(&ctx, kind)),
        delta: delta_from(&ctx, kind),
        gamma,
        theta: theta_from(&ctx, kind),
        rho: rho_from(&ctx, kind),
        vega: vega_from(&ctx),
        vanna: vanna_from(&ctx, gamma),
        volga: volga_from(&ctx, d1s),
        vega_bleed: vega_bleed_from(&ctx, d1t),
        strike_gamma: strike_gamma_from(&ctx),
    })
}
