//! The built-in verification stack.
//!
//! Seven suites adjudicate the analytics end to end: the Black-Scholes
//! reduction at α = 0, Richardson finite differences for first- and
//! second-order sensitivities across a grid that includes α = ±2, the
//! structural identities (parity, delta gap, ratio identity), Monte Carlo
//! agreement, the martingale property of the discounted spot, and the
//! discrepancy ledger itself. Each suite reports pass/fail with the worst
//! observed error so a failing run says how far off it was.
//!
//! Surfaces and grids evaluate points independently, so the suites run on
//! the crate's parallel execution policy where it pays.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::greeks::{self, GreekLadder};
use crate::ledger::{build_ledger, DiscrepancyLedger};
use crate::model::{MarketState, ModelParams, Strike};
use crate::oracles::{
    bs_oracle_ladder, fd_derivative, fd_mixed, mc_discounted_spot, mc_price, FdOrder, McConfig,
    FIRST_ORDER_SCALE, SECOND_ORDER_SCALE,
};
use crate::pricing::{call_price, price, put_price, OptionKind};

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        SuiteResult {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Everything `validate` produces: the suite outcomes plus the ledger.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
    pub ledger: DiscrepancyLedger,
}

/// Relative gap, zero when both sides agree exactly (including at 0).
pub(crate) fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

const MONEYNESS_BS: [f64; 5] = [0.8, 0.9, 1.0, 1.1, 1.2];
const SIGMAS_BS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
const MATURITIES_BS: [f64; 3] = [0.25, 1.0, 2.0];

/// One evaluation point of the adjudication grid.
#[derive(Clone, Copy, Debug)]
struct GridPoint {
    params: ModelParams,
    state: MarketState,
    strike: Strike,
}

/// The grid every finite-difference and identity suite runs over:
/// α ∈ {-2, 0, 2} x moneyness {0.8, 1.0, 1.2} x σ {0.15, 0.3} x
/// T {0.5, 1} x t {0, 0.25}, at s0 = spot = 100, r = 5%.
fn validation_grid() -> Vec<GridPoint> {
    let mut grid = Vec::new();
    for &alpha in &[-2.0, 0.0, 2.0] {
        for &money in &[0.8, 1.0, 1.2] {
            for &sigma in &[0.15, 0.3] {
                for &maturity in &[0.5, 1.0] {
                    for &t in &[0.0, 0.25] {
                        grid.push(GridPoint {
                            params: ModelParams::new(100.0, 0.05, sigma, alpha, maturity)
                                .expect("grid parameters are valid"),
                            state: MarketState::new(t, 100.0).expect("grid state is valid"),
                            strike: Strike::new(100.0 * money).expect("grid strike is valid"),
                        });
                    }
                }
            }
        }
    }
    grid
}

/// α = 0 reduction: prices within 1e-10 absolute and all nine sensitivities
/// within 1e-9 relative of the independent Black-Scholes oracle over the
/// 75-point moneyness x σ x T grid, for calls and puts.
pub fn bs_reduction() -> Result<SuiteResult> {
    let mut max_price = 0.0f64;
    let mut max_greek = 0.0f64;
    for &money in &MONEYNESS_BS {
        for &sigma in &SIGMAS_BS {
            for &maturity in &MATURITIES_BS {
                let params = ModelParams::new(100.0, 0.05, sigma, 0.0, maturity)?;
                let state = MarketState::new(0.0, 100.0)?;
                let strike = Strike::new(100.0 * money)?;
                for &kind in &[OptionKind::Call, OptionKind::Put] {
                    let ours = greeks::ladder(params, state, strike, kind)?;
                    let oracle =
                        bs_oracle_ladder(100.0, 100.0 * money, 0.05, sigma, maturity, kind)?;
                    max_price = max_price.max((ours.price.value() - oracle.price.value()).abs());
                    for (a, b) in ladder_greeks(&ours).iter().zip(ladder_greeks(&oracle)) {
                        max_greek = max_greek.max(rel_err(*a, b));
                    }
                }
            }
        }
    }
    Ok(SuiteResult::new(
        "black_scholes_reduction",
        max_price <= 1e-10 && max_greek <= 1e-9,
        format!(
            "max |price diff| {max_price:.3e} (limit 1e-10), max greek rel err {max_greek:.3e} (limit 1e-9) over 75 points x 2 kinds"
        ),
    ))
}

fn ladder_greeks(l: &GreekLadder) -> [f64; 9] {
    [
        l.delta,
        l.gamma,
        l.theta,
        l.rho,
        l.vega,
        l.vanna,
        l.volga,
        l.vega_bleed,
        l.strike_gamma,
    ]
}

/// Δ, Γ, Θ, ρ, ν against Richardson central differences of the analytic
/// price, relative error at most 1e-6 over the full grid.
pub fn fd_first_order() -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    let mut track = |label: &str, analytic: f64, fd: f64| {
        let e = rel_err(analytic, fd);
        if e > worst {
            worst = e;
            worst_label = label.to_string();
        }
    };
    for (i, pt) in validation_grid().iter().enumerate() {
        let GridPoint {
            params,
            state,
            strike,
        } = *pt;
        for &kind in &[OptionKind::Call, OptionKind::Put] {
            let fd_delta = fd_derivative(
                |x| Ok(price(params, state.with_spot(x)?, strike, kind)?.value()),
                state.spot(),
                FdOrder::First,
                FIRST_ORDER_SCALE,
            )?;
            track(
                &format!("delta/{kind}@{i}"),
                greeks::delta(params, state, strike, kind)?,
                fd_delta,
            );

            let fd_theta = fd_derivative(
                |x| {
                    Ok(price(
                        params,
                        MarketState::extrapolating(x, state.spot()),
                        strike,
                        kind,
                    )?
                    .value())
                },
                state.t(),
                FdOrder::First,
                FIRST_ORDER_SCALE,
            )?;
            track(
                &format!("theta/{kind}@{i}"),
                greeks::theta(params, state, strike, kind)?,
                fd_theta,
            );

            let fd_rho = fd_derivative(
                |x| Ok(price(params.with_rate(x)?, state, strike, kind)?.value()),
                params.rate(),
                FdOrder::First,
                FIRST_ORDER_SCALE,
            )?;
            track(
                &format!("rho/{kind}@{i}"),
                greeks::rho(params, state, strike, kind)?,
                fd_rho,
            );
        }

        let fd_gamma = fd_derivative(
            |x| Ok(call_price(params, state.with_spot(x)?, strike)?.value()),
            state.spot(),
            FdOrder::Second,
            SECOND_ORDER_SCALE,
        )?;
        track(
            &format!("gamma@{i}"),
            greeks::gamma(params, state, strike)?,
            fd_gamma,
        );

        let fd_vega = fd_derivative(
            |x| Ok(call_price(params.with_sigma(x)?, state, strike)?.value()),
            params.sigma(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        track(
            &format!("vega@{i}"),
            greeks::vega(params, state, strike)?,
            fd_vega,
        );
    }
    Ok(SuiteResult::new(
        "fd_first_order",
        worst <= 1e-6,
        format!("max rel err {worst:.3e} at {worst_label} (limit 1e-6)"),
    ))
}

/// Vanna, Volga, Vega bleed and Strike gamma against (a) differences of the
/// analytic first-order sensitivities and (b) direct second or mixed
/// differences of the price, both at 1e-5; the two Schwarz routes for vanna
/// against each other at 1e-6.
pub fn fd_second_order() -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    let mut schwarz_worst = 0.0f64;
    let track = |label: &str, analytic: f64, fd: f64, worst: &mut f64, lbl: &mut String| {
        let e = rel_err(analytic, fd);
        if e > *worst {
            *worst = e;
            *lbl = label.to_string();
        }
    };
    for (i, pt) in validation_grid().iter().enumerate() {
        let GridPoint {
            params,
            state,
            strike,
        } = *pt;

        // Vanna: route (a) twice via Schwarz symmetry, route (b) mixed.
        let vanna = greeks::vanna(params, state, strike)?;
        let via_vega = fd_derivative(
            |x| greeks::vega(params, state.with_spot(x)?, strike),
            state.spot(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        let via_delta = fd_derivative(
            |x| greeks::delta(params.with_sigma(x)?, state, strike, OptionKind::Call),
            params.sigma(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        let mixed = fd_mixed(
            |s, v| Ok(call_price(params.with_sigma(v)?, state.with_spot(s)?, strike)?.value()),
            state.spot(),
            params.sigma(),
            SECOND_ORDER_SCALE,
        )?;
        track(
            &format!("vanna/dvega@{i}"),
            vanna,
            via_vega,
            &mut worst,
            &mut worst_label,
        );
        track(
            &format!("vanna/ddelta@{i}"),
            vanna,
            via_delta,
            &mut worst,
            &mut worst_label,
        );
        track(
            &format!("vanna/mixed@{i}"),
            vanna,
            mixed,
            &mut worst,
            &mut worst_label,
        );
        schwarz_worst = schwarz_worst.max(rel_err(via_vega, via_delta));

        // Volga.
        let volga = greeks::volga(params, state, strike)?;
        let dvega_dsigma = fd_derivative(
            |x| greeks::vega(params.with_sigma(x)?, state, strike),
            params.sigma(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        let d2price = fd_derivative(
            |x| Ok(call_price(params.with_sigma(x)?, state, strike)?.value()),
            params.sigma(),
            FdOrder::Second,
            SECOND_ORDER_SCALE,
        )?;
        track(
            &format!("volga/dvega@{i}"),
            volga,
            dvega_dsigma,
            &mut worst,
            &mut worst_label,
        );
        track(
            &format!("volga/d2price@{i}"),
            volga,
            d2price,
            &mut worst,
            &mut worst_label,
        );

        // Vega bleed.
        let bleed = greeks::vega_bleed(params, state, strike)?;
        let dvega_dmat = fd_derivative(
            |x| greeks::vega(params.with_maturity(x)?, state, strike),
            params.maturity(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        let mixed_bleed = fd_mixed(
            |mat, v| {
                Ok(call_price(params.with_maturity(mat)?.with_sigma(v)?, state, strike)?.value())
            },
            params.maturity(),
            params.sigma(),
            SECOND_ORDER_SCALE,
        )?;
        track(
            &format!("vega_bleed/dvega@{i}"),
            bleed,
            dvega_dmat,
            &mut worst,
            &mut worst_label,
        );
        track(
            &format!("vega_bleed/mixed@{i}"),
            bleed,
            mixed_bleed,
            &mut worst,
            &mut worst_label,
        );

        // Strike gamma.
        let skg = greeks::strike_gamma(params, state, strike)?;
        let dstrike_delta = fd_derivative(
            |x| greeks::strike_delta(params, state, Strike::new(x)?, OptionKind::Call),
            strike.value(),
            FdOrder::First,
            FIRST_ORDER_SCALE,
        )?;
        let d2price_k = fd_derivative(
            |x| Ok(call_price(params, state, Strike::new(x)?)?.value()),
            strike.value(),
            FdOrder::Second,
            SECOND_ORDER_SCALE,
        )?;
        track(
            &format!("strike_gamma/ddelta@{i}"),
            skg,
            dstrike_delta,
            &mut worst,
            &mut worst_label,
        );
        track(
            &format!("strike_gamma/d2price@{i}"),
            skg,
            d2price_k,
            &mut worst,
            &mut worst_label,
        );
    }
    Ok(SuiteResult::new(
        "fd_second_order",
        worst <= 1e-5 && schwarz_worst <= 1e-6,
        format!(
            "max rel err {worst:.3e} at {worst_label} (limit 1e-5), Schwarz route gap {schwarz_worst:.3e} (limit 1e-6)"
        ),
    ))
}

/// Put-call parity, the delta gap, kind-independence of Γ/ν and the ratio
/// identity, everywhere on the grid.
pub fn structural_identities() -> Result<SuiteResult> {
    let mut max_parity = 0.0f64;
    let mut max_delta_gap = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut kind_free = true;
    for pt in validation_grid() {
        let GridPoint {
            params,
            state,
            strike,
        } = pt;
        let tau = params.maturity() - state.t();
        let call = call_price(params, state, strike)?.value();
        let put = put_price(params, state, strike)?.value();
        let fwd = state.spot() - strike.value() * (-params.rate() * tau).exp();
        max_parity = max_parity.max((call - put - fwd).abs());

        let dc = greeks::delta(params, state, strike, OptionKind::Call)?;
        let dp = greeks::delta(params, state, strike, OptionKind::Put)?;
        max_delta_gap = max_delta_gap.max((dc - dp - 1.0).abs());

        let lc = greeks::ladder(params, state, strike, OptionKind::Call)?;
        let lp = greeks::ladder(params, state, strike, OptionKind::Put)?;
        kind_free &= lc.gamma == lp.gamma && lc.vega == lp.vega;

        // φ(d2) (K e^{-rτ} + (α/σ) e^{rt}) = φ(d1) (S_t + (α/σ) e^{rt})
        let d = crate::model::d_pair(params, state, strike)?;
        let a = params.alpha() / params.sigma();
        let growth_t = (params.rate() * state.t()).exp();
        let lhs =
            crate::norm::pdf(d.d2) * (strike.value() * (-params.rate() * tau).exp() + a * growth_t);
        let rhs = crate::norm::pdf(d.d1) * (state.spot() + a * growth_t);
        max_ratio = max_ratio.max(rel_err(lhs, rhs));
    }
    Ok(SuiteResult::new(
        "structural_identities",
        max_parity <= 1e-12 && max_delta_gap <= 1e-12 && kind_free && max_ratio <= 1e-10,
        format!(
            "max |parity gap| {max_parity:.3e} (limit 1e-12), max |delta gap - 1| {max_delta_gap:.3e} (limit 1e-12), gamma/vega kind-free: {kind_free}, max ratio-identity rel err {max_ratio:.3e} (limit 1e-10)"
        ),
    ))
}

/// Analytic call and put prices within three standard errors of the Monte
/// Carlo estimate for α ∈ {-2, 0, 2}, plus bit determinism under the seed.
pub fn mc_consistency(paths: u64, seed: u64) -> Result<SuiteResult> {
    let config = McConfig {
        paths,
        seed,
        antithetic: true,
    };
    let state = MarketState::new(0.0, 100.0)?;
    let strike = Strike::new(100.0)?;
    let mut worst_z = 0.0f64;
    for &alpha in &[-2.0, 0.0, 2.0] {
        let params = ModelParams::new(100.0, 0.05, 0.2, alpha, 1.0)?;
        for &kind in &[OptionKind::Call, OptionKind::Put] {
            let analytic = price(params, state, strike, kind)?.value();
            let est = mc_price(&params, strike, kind, &config)?;
            let z = (est.mean - analytic).abs() / est.std_error;
            worst_z = worst_z.max(z);
        }
    }
    let params = ModelParams::new(100.0, 0.05, 0.2, 2.0, 1.0)?;
    let once = mc_price(&params, strike, OptionKind::Call, &config)?;
    let twice = mc_price(&params, strike, OptionKind::Call, &config)?;
    let deterministic = once.mean.to_bits() == twice.mean.to_bits()
        && once.std_error.to_bits() == twice.std_error.to_bits();
    Ok(SuiteResult::new(
        "mc_consistency",
        worst_z <= 3.0 && deterministic,
        format!(
            "worst |analytic - mc| = {worst_z:.2} standard errors (limit 3), deterministic: {deterministic} ({paths} antithetic paths, seed {seed})"
        ),
    ))
}

/// Discounted terminal mean within three standard errors of s0 for
/// α ∈ {-2, 0, 2}.
pub fn martingale(paths: u64, seed: u64) -> Result<SuiteResult> {
    let config = McConfig {
        paths,
        seed,
        antithetic: true,
    };
    let mut worst_z = 0.0f64;
    for &alpha in &[-2.0, 0.0, 2.0] {
        let params = ModelParams::new(100.0, 0.05, 0.2, alpha, 1.0)?;
        let est = mc_discounted_spot(&params, &config)?;
        let z = (est.mean - 100.0).abs() / est.std_error;
        worst_z = worst_z.max(z);
    }
    Ok(SuiteResult::new(
        "martingale",
        worst_z <= 3.0,
        format!(
            "worst |discounted mean - s0| = {worst_z:.2} standard errors (limit 3) over alpha in {{-2, 0, 2}}"
        ),
    ))
}

/// Builds the ledger and checks its completeness and internal consistency.
pub fn ledger_suite() -> Result<(SuiteResult, DiscrepancyLedger)> {
    let ledger = build_ledger()?;
    let mut complete = ledger.entries.len() >= 7;
    for prefix in [
        "gamma",
        "theta (first",
        "theta (second",
        "rho",
        "vanna",
        "volga",
        "vega_bleed",
        "strike_gamma",
    ] {
        complete &= ledger.entry(prefix).is_some();
    }
    let mut consistent = true;
    for e in &ledger.entries {
        match e.printed_value {
            Some(p) => {
                let should_reject =
                    (p - e.fd_value).abs() > 10.0 * (e.implemented_value - e.fd_value).abs();
                consistent &=
                    should_reject == (e.verdict == crate::ledger::Verdict::PaperFormRejected);
            }
            None => {
                consistent &= e.verdict == crate::ledger::Verdict::PaperFormAbsent;
            }
        }
        consistent &= e.fd_value.is_finite() && e.implemented_value.is_finite();
    }
    let result = SuiteResult::new(
        "discrepancy_ledger",
        complete && consistent,
        format!(
            "{} entries, all flagged forms covered: {complete}, verdict rule consistent: {consistent}",
            ledger.entries.len()
        ),
    );
    Ok((result, ledger))
}

/// Runs every suite and assembles the report. `passed` is the conjunction of
/// the individual suites.
pub fn run_validation(paths: u64, seed: u64) -> Result<ValidationReport> {
    let mut suites = vec![
        bs_reduction()?,
        fd_first_order()?,
        fd_second_order()?,
        structural_identities()?,
        mc_consistency(paths, seed)?,
        martingale(paths, seed)?,
    ];
    let (ledger_result, ledger) = ledger_suite()?;
    suites.push(ledger_result);
    let passed = suites.iter().all(|s| s.passed);
    Ok(ValidationReport {
        passed,
        suites,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_report_passes_at_test_scale() {
        let report = run_validation(100_000, 42).unwrap();
        for suite in &report.suites {
            assert!(suite.passed, "{}: {}", suite.name, suite.detail);
        }
        assert!(report.passed);
        assert_eq!(report.suites.len(), 7);
    }

    #[test]
    fn report_serializes_round_trip() {
        let report = run_validation(10_000, 7).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: ValidationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
