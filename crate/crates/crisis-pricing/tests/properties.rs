//! Property tests over randomly drawn valid market configurations.

use proptest::prelude::*;

use crisis_pricing::{
    call_price, d_pair, delta, gamma, ladder, put_price, strike_gamma, MarketState, ModelParams,
    OptionKind, Strike,
};

#[derive(Debug, Clone, Copy)]
struct Setup {
    params: ModelParams,
    state: MarketState,
    strike: Strike,
}

/// Draws parameters inside the model's validity region: α is scaled so the
/// shifted spot, shifted strike and diffusion coefficient all stay positive.
fn setups() -> impl Strategy<Value = Setup> {
    (
        20.0f64..200.0, // s0
        -0.05f64..0.15, // rate
        0.05f64..0.8,   // sigma
        -0.5f64..0.5,   // alpha as a fraction of sigma * min(s0, k)
        0.1f64..3.0,    // maturity
        0.0f64..0.9,    // t as a fraction of maturity
        0.5f64..1.5,    // moneyness
        0.7f64..1.3,    // spot drift away from s0
    )
        .prop_filter_map(
            "inside the model domain",
            |(s0, rate, sigma, alpha_frac, maturity, t_frac, moneyness, spot_frac)| {
                let k = s0 * moneyness;
                let alpha = alpha_frac * sigma * s0.min(k);
                let t = t_frac * maturity;
                let spot = s0 * spot_frac;
                let params = ModelParams::new(s0, rate, sigma, alpha, maturity).ok()?;
                let state = MarketState::new(t, spot).ok()?;
                let strike = Strike::new(k).ok()?;
                // Keep only points where the d-functions are defined.
                d_pair(params, state, strike).ok()?;
                Some(Setup {
                    params,
                    state,
                    strike,
                })
            },
        )
}

proptest! {
    #[test]
    fn put_call_parity(setup in setups()) {
        let Setup { params, state, strike } = setup;
        let call = call_price(params, state, strike).unwrap().value();
        let put = put_price(params, state, strike).unwrap().value();
        let tau = params.maturity() - state.t();
        let fwd = state.spot() - strike.value() * (-params.rate() * tau).exp();
        let scale = state.spot().abs().max(strike.value());
        prop_assert!((call - put - fwd).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn d_gap_is_sigma_root_tau(setup in setups()) {
        let Setup { params, state, strike } = setup;
        let d = d_pair(params, state, strike).unwrap();
        let gap = params.sigma() * d.tau.sqrt();
        prop_assert!((d.d1 - d.d2 - gap).abs() <= 1e-12 * gap.max(1.0));
    }

    #[test]
    fn delta_gap_is_one(setup in setups()) {
        let Setup { params, state, strike } = setup;
        let dc = delta(params, state, strike, OptionKind::Call).unwrap();
        let dp = delta(params, state, strike, OptionKind::Put).unwrap();
        prop_assert!((dc - dp - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn curvatures_are_nonnegative(setup in setups()) {
        let Setup { params, state, strike } = setup;
        prop_assert!(gamma(params, state, strike).unwrap() >= 0.0);
        prop_assert!(strike_gamma(params, state, strike).unwrap() >= 0.0);
    }

    #[test]
    fn ratio_identity(setup in setups()) {
        let Setup { params, state, strike } = setup;
        let d = d_pair(params, state, strike).unwrap();
        let a = params.alpha() / params.sigma();
        let growth_t = (params.rate() * state.t()).exp();
        let pdf = |x: f64| crisis_pricing::norm_pdf(x).unwrap();
        let lhs = pdf(d.d2)
            * (strike.value() * (-params.rate() * d.tau).exp() + a * growth_t);
        let rhs = pdf(d.d1) * (state.spot() + a * growth_t);
        let scale = lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn ladder_agrees_between_kinds_on_shared_fields(setup in setups()) {
        let Setup { params, state, strike } = setup;
        let lc = ladder(params, state, strike, OptionKind::Call).unwrap();
        let lp = ladder(params, state, strike, OptionKind::Put).unwrap();
        prop_assert_eq!(lc.gamma.to_bits(), lp.gamma.to_bits());
        prop_assert_eq!(lc.vega.to_bits(), lp.vega.to_bits());
        prop_assert_eq!(lc.vanna.to_bits(), lp.vanna.to_bits());
        prop_assert_eq!(lc.volga.to_bits(), lp.volga.to_bits());
        prop_assert_eq!(lc.vega_bleed.to_bits(), lp.vega_bleed.to_bits());
        prop_assert_eq!(lc.strike_gamma.to_bits(), lp.strike_gamma.to_bits());
    }
}
