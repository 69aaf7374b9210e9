//! Independent Black-Scholes reference ladder.
//!
//! The α → 0 limit of the crisis model is the lognormal Black-Scholes
//! dynamic, so the classical closed forms serve as an exact reference there.
//! Everything here is written from the textbook formulas with its own d1/d2
//! computation — no code is shared with the crisis-model evaluation path
//! beyond the standard-normal kernel — so agreement between the two is
//! evidence, not tautology.

use crate::error::{ensure_finite, ensure_positive, Result};
use crate::greeks::GreekLadder;
use crate::norm;
use crate::pricing::{OptionKind, Price};

/// Classical Black-Scholes premium and full sensitivity ladder.
///
/// Theta is the calendar-time derivative ∂C/∂t (per year) and vega bleed is
/// ∂²C/∂T∂σ, matching the conventions of [`crate::greeks`].
pub fn bs_oracle_ladder(
    s0: f64,
    strike: f64,
    rate: f64,
    sigma: f64,
    maturity: f64,
    kind: OptionKind,
) -> Result<GreekLadder> {
    ensure_positive("s0", s0)?;
    ensure_positive("strike", strike)?;
    ensure_finite("rate", rate)?;
    ensure_positive("sigma", sigma)?;
    ensure_positive("maturity", maturity)?;

    let sqrt_t = maturity.sqrt();
    let d1 = ((s0 / strike).ln() + (rate + 0.5 * sigma * sigma) * maturity) / (sigma * sqrt_t);
    let d2 = d1 - sigma * sqrt_t;
    let discount = (-rate * maturity).exp();
    let nd1 = norm::cdf(d1);
    let nd2 = norm::cdf(d2);
    let pd1 = norm::pdf(d1);
    let pd2 = norm::pdf(d2);

    let call = s0 * nd1 - strike * discount * nd2;
    let (price, delta, theta, rho) = match kind {
        OptionKind::Call => (
            call,
            nd1,
            -s0 * pd1 * sigma / (2.0 * sqrt_t) - rate * strike * discount * nd2,
            maturity * strike * discount * nd2,
        ),
        OptionKind::Put => (
            call + strike * discount - s0,
            nd1 - 1.0,
            -s0 * pd1 * sigma / (2.0 * sqrt_t) + rate * strike * discount * (1.0 - nd2),
            -maturity * strike * discount * (1.0 - nd2),
        ),
    };

    let vega = s0 * pd1 * sqrt_t;
    // ∂d1/∂T with the strike held fixed.
    let d1_dmat = (rate + 0.5 * sigma * sigma) / (sigma * sqrt_t) - d1 / (2.0 * maturity);
    Ok(GreekLadder {
        price: Price::from_raw(price),
        delta,
        gamma: pd1 / (s0 * sigma * sqrt_t),
        theta,
        rho,
        vega,
        vanna: -pd1 * d2 / sigma,
        volga: vega * d1 * d2 / sigma,
        vega_bleed: s0 * pd1 * (0.5 / sqrt_t - sqrt_t * d1 * d1_dmat),
        strike_gamma: discount * pd2 / (strike * sigma * sqrt_t),
    })
}
