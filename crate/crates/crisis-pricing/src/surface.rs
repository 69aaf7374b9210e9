//! Cartesian sensitivity surfaces over one or two grid axes.
//!
//! Each grid point is an independent pure evaluation, so the surface runs on
//! the crate's parallel execution policy; rows always come back in
//! row-major grid order regardless of how the work was scheduled.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greeks::{ladder, GreekLadder};
use crate::model::{MarketState, ModelParams, Strike};
use crate::pricing::OptionKind;

/// Which input a grid axis sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridVar {
    /// Observed spot S_t.
    Spot,
    /// Strike K.
    Strike,
    /// Volatility σ.
    Sigma,
    /// Crisis coefficient α.
    Alpha,
    /// Maturity T.
    Maturity,
    /// Evaluation time t.
    Time,
}

impl GridVar {
    /// The axis token used in CLI specs and CSV headers.
    pub fn name(self) -> &'static str {
        match self {
            GridVar::Spot => "S",
            GridVar::Strike => "K",
            GridVar::Sigma => "sigma",
            GridVar::Alpha => "alpha",
            GridVar::Maturity => "T",
            GridVar::Time => "t",
        }
    }
}

impl FromStr for GridVar {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "S" => Ok(GridVar::Spot),
            "K" => Ok(GridVar::Strike),
            "sigma" => Ok(GridVar::Sigma),
            "alpha" => Ok(GridVar::Alpha),
            "T" => Ok(GridVar::Maturity),
            "t" => Ok(GridVar::Time),
            other => Err(format!(
                "unknown axis variable `{other}` (expected one of S, K, sigma, alpha, T, t)"
            )),
        }
    }
}

/// An evenly spaced axis with at least two points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub var: GridVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(var: GridVar, start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::BadAxis {
                reason: format!("endpoints must be finite, got {start}..{stop}"),
            });
        }
        if count < 2 {
            return Err(Error::BadAxis {
                reason: format!("count must be at least 2, got {count}"),
            });
        }
        Ok(Axis {
            var,
            start,
            stop,
            count,
        })
    }

    fn value_at(&self, i: usize) -> f64 {
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }
}

/// One evaluated grid point: axis coordinates in axis order, then the
/// ladder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub coords: Vec<f64>,
    pub ladder: GreekLadder,
}

/// A fully evaluated surface in row-major order (first axis outermost).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub axes: Vec<Axis>,
    pub rows: Vec<SurfaceRow>,
}

fn apply(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    var: GridVar,
    value: f64,
) -> Result<(ModelParams, MarketState, Strike)> {
    Ok(match var {
        GridVar::Spot => (params, state.with_spot(value)?, strike),
        GridVar::Strike => (params, state, Strike::new(value)?),
        GridVar::Sigma => (params.with_sigma(value)?, state, strike),
        GridVar::Alpha => (params.with_alpha(value)?, state, strike),
        GridVar::Maturity => (params.with_maturity(value)?, state, strike),
        GridVar::Time => (params, MarketState::new(value, state.spot())?, strike),
    })
}

fn evaluate_impl(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
    axes: &[Axis],
    sequential: bool,
) -> Result<Surface> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::BadAxis {
            reason: format!("expected 1 or 2 axes, got {}", axes.len()),
        });
    }
    let inner = axes.get(1).map_or(1, |a| a.count);
    let total = axes[0].count * inner;
    let point = |i: usize| -> Result<SurfaceRow> {
        let (i0, i1) = (i / inner, i % inner);
        let mut coords = vec![axes[0].value_at(i0)];
        let (mut p, mut s, mut k) = apply(params, state, strike, axes[0].var, coords[0])?;
        if let Some(axis) = axes.get(1) {
            let v = axis.value_at(i1);
            coords.push(v);
            let applied = apply(p, s, k, axis.var, v)?;
            p = applied.0;
            s = applied.1;
            k = applied.2;
        }
        Ok(SurfaceRow {
            coords,
            ladder: ladder(p, s, k, kind)?,
        })
    };
    let rows: Vec<Result<SurfaceRow>> = if sequential {
        (0..total).map(point).collect()
    } else {
        crate::exec::map_indexed(total, point)
    };
    // Surface errors deterministically: the first failing point in grid
    // order, independent of scheduling.
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Surface {
        axes: axes.to_vec(),
        rows,
    })
}

/// Evaluates the ladder over the Cartesian product of one or two axes.
pub fn evaluate(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
    axes: &[Axis],
) -> Result<Surface> {
    evaluate_impl(params, state, strike, kind, axes, false)
}

/// [`evaluate`] forced onto the sequential path; bit-identical output, kept
/// public for benchmarking.
pub fn evaluate_sequential(
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
    axes: &[Axis],
) -> Result<Surface> {
    evaluate_impl(params, state, strike, kind, axes, true)
}
