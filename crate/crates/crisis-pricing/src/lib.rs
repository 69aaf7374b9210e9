//! Analytics for European options under the crisis diffusion
//!
//! ```text
//! dS_t = r S_t dt + (σ S_t + α e^{rt}) dW_t
//! ```
//!
//! a lognormal dynamic displaced by an exponentially growing additive term
//! in the diffusion coefficient. With α = 0 it reduces to Black-Scholes;
//! with α ≠ 0 the asset can go negative and the usual closed forms pick up
//! α-dependent corrections.
//!
//! The crate provides:
//!
//! * closed-form call/put prices at any time t ([`pricing`]);
//! * the full first- and second-order sensitivity ladder — delta, gamma,
//!   theta, rho, vega, vanna, volga, vega bleed, strike gamma — as symbolic
//!   derivatives of the implemented price ([`greeks`]);
//! * independent verification oracles: a textbook Black-Scholes ladder,
//!   Richardson finite differences and an exact-solution Monte Carlo
//!   ([`oracles`]);
//! * a discrepancy ledger adjudicating the printed formula variants this
//!   model circulates with against finite-difference evidence ([`ledger`]);
//! * grid surfaces and the end-to-end validation suites behind the CLI
//!   ([`surface`], [`validate`]).
//!
//! Everything is deterministic: Monte Carlo draws come from seeded ChaCha8
//! streams chunked independently of the thread count, so results are
//! bit-identical between the default rayon-parallel execution and the
//! sequential fallback (`--no-default-features`).
//!
//! ```
//! use crisis_pricing::{ladder, MarketState, ModelParams, OptionKind, Strike};
//!
//! let params = ModelParams::new(100.0, 0.05, 0.2, 2.0, 1.0)?;
//! let state = MarketState::new(0.0, 100.0)?;
//! let strike = Strike::new(100.0)?;
//! let greeks = ladder(params, state, strike, OptionKind::Call)?;
//! assert!(greeks.gamma > 0.0 && greeks.strike_gamma > 0.0);
//! assert!((greeks.price.value() - 11.224954016457).abs() < 1e-9);
//! # Ok::<(), crisis_pricing::Error>(())
//! ```

pub mod error;
mod exec;
pub mod greeks;
pub mod ledger;
pub mod model;
pub mod norm;
pub mod oracles;
pub mod pricing;
pub mod surface;
pub mod validate;

pub use error::{Error, Result};
pub use greeks::{
    delta, gamma, ladder, rho, strike_delta, strike_gamma, theta, vanna, vega, vega_bleed, volga,
    GreekLadder,
};
pub use ledger::{build_ledger, DiscrepancyLedger, LedgerEntry, Verdict};
pub use model::{
    d1_dsigma, d1_dtau, d2_dsigma, d2_dtau, d_pair, DPair, MarketState, ModelParams, Strike,
    MIN_TAU,
};
pub use norm::{norm_cdf, norm_pdf, Probability};
pub use oracles::{
    bs_oracle_ladder, fd_derivative, fd_mixed, mc_discounted_spot, mc_price, simulate_paths,
    simulate_terminal, FdOrder, McConfig, McEstimate,
};
pub use pricing::{call_price, price, put_price, OptionKind, OptionSpec, Price};
pub use surface::{Axis, GridVar, Surface, SurfaceRow};
pub use validate::{run_validation, SuiteResult, ValidationReport};
