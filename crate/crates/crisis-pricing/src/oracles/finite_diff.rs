//! Richardson-extrapolated central finite differences.
//!
//! The adjudication engine for every analytic sensitivity in this crate:
//! central differences at steps h and h/2 combined to cancel the leading
//! truncation term. First derivatives use a relative step of 1e-4, second
//! and mixed derivatives 1e-3 (both scaled by `max(|x|, 1)`), which balances
//! truncation against cancellation at double precision.

use crate::error::{Error, Result};

/// Derivative order for [`fd_derivative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdOrder {
    First,
    Second,
}

/// Default relative step for first derivatives.
pub const FIRST_ORDER_SCALE: f64 = 1e-4;
/// Default relative step for second and mixed derivatives.
pub const SECOND_ORDER_SCALE: f64 = 1e-3;

fn probe<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    f(x).map_err(|e| Error::FdProbe {
        at: x,
        source: Box::new(e),
    })
}

/// Central finite difference of `f` at `x` with one Richardson level.
///
/// The step is `h = scale * max(|x|, 1)`. First order combines
/// `(f(x+h) - f(x-h)) / 2h` at h and h/2; second order combines the 3-point
/// second difference the same way. Domain errors from `f` propagate with the
/// coordinate of the bump that left the domain.
pub fn fd_derivative<F>(f: F, x: f64, order: FdOrder, scale: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = scale * x.abs().max(1.0);
    match order {
        FdOrder::First => {
            let full = (probe(&f, x + h)? - probe(&f, x - h)?) / (2.0 * h);
            let half = (probe(&f, x + 0.5 * h)? - probe(&f, x - 0.5 * h)?) / h;
            Ok((4.0 * half - full) / 3.0)
        }
        FdOrder::Second => {
            let center = probe(&f, x)?;
            let full = (probe(&f, x + h)? - 2.0 * center + probe(&f, x - h)?) / (h * h);
            let half =
                (probe(&f, x + 0.5 * h)? - 2.0 * center + probe(&f, x - 0.5 * h)?) / (0.25 * h * h);
            Ok((4.0 * half - full) / 3.0)
        }
    }
}

/// Mixed second derivative ∂²f/∂x∂y by the cross central difference at
/// (h, k) and (h/2, k/2), combined with one Richardson level.
pub fn fd_mixed<F>(f: F, x: f64, y: f64, scale: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let h = scale * x.abs().max(1.0);
    let k = scale * y.abs().max(1.0);
    let probe2 = |a: f64, b: f64| -> Result<f64> {
        f(a, b).map_err(|e| Error::FdProbe {
            at: a,
            source: Box::new(e),
        })
    };
    let cross = |h: f64, k: f64| -> Result<f64> {
        Ok(
            (probe2(x + h, y + k)? - probe2(x + h, y - k)? - probe2(x - h, y + k)?
                + probe2(x - h, y - k)?)
                / (4.0 * h * k),
        )
    };
    let full = cross(h, k)?;
    let half = cross(0.5 * h, 0.5 * k)?;
    Ok((4.0 * half - full) / 3.0)
}
