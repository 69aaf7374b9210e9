//! Independent verification engines.
//!
//! Three oracles adjudicate the closed forms: the classical Black-Scholes
//! ladder for the α → 0 limit, Richardson finite differences for every
//! derivative claim, and an exact-solution Monte Carlo for the prices
//! themselves. None of them share evaluation code with the formulas they
//! check beyond the standard-normal kernel.

mod black_scholes;
mod finite_diff;
mod monte_carlo;

pub use black_scholes::bs_oracle_ladder;
pub use finite_diff::{fd_derivative, fd_mixed, FdOrder, FIRST_ORDER_SCALE, SECOND_ORDER_SCALE};
pub use monte_carlo::{
    mc_discounted_spot, mc_price, mc_price_sequential, simulate_paths, simulate_terminal, McConfig,
    McEstimate,
};
