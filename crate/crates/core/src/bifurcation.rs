//! Control-parameter analysis: regime classification, bifurcation-diagram
//! sweeps, numeric location of period-doubling points, and the first
//! Feigenbaum ratio.

use rayon::prelude::*;
use serde::Serialize;

use crate::diagnostics::{detect_cycle, DEFAULT_CYCLE_TOL};
use crate::map::{MapParams, DEFAULT_X0};
use crate::{Error, Result};

/// Regime boundary constants on the `r` axis, in ascending order:
/// extinction/period-1, period-1/period-2, period-2/period-4,
/// period-4/cascade, cascade/chaos.
pub const REGIME_BOUNDARIES: [f64; 5] = [1.0, 3.0, 3.4495, 3.5441, 3.5699];

/// Transient length used internally by [`locate_doubling`].
pub const LOCATE_BURN_IN: usize = 500_000;

/// Default grid size for [`sweep`].
pub const DEFAULT_SWEEP_STEPS: usize = 2000;
/// Default transient length for [`sweep`].
pub const DEFAULT_SWEEP_BURN_IN: usize = 100_000;
/// Default number of recorded samples per grid point for [`sweep`].
pub const DEFAULT_SWEEP_SAMPLES: usize = 200;

/// Qualitative long-run behaviour classes over `r ∈ (0, 4]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegimeLabel {
    /// `r ∈ (0, 1]`: orbits decay to the stable origin.
    #[serde(rename = "extinction")]
    Extinction,
    /// `r ∈ (1, 3]`: a stable fixed point at `1 − 1/r`.
    #[serde(rename = "period_1")]
    Period1,
    /// `r ∈ (3, 3.4495]`: a stable two-cycle.
    #[serde(rename = "period_2")]
    Period2,
    /// `r ∈ (3.4495, 3.5441]`: a stable four-cycle.
    #[serde(rename = "period_4")]
    Period4,
    /// `r ∈ (3.5441, 3.5699]`: the tail of the doubling cascade
    /// (periods 8, 16, 32, … in unenumerated sub-bands).
    #[serde(rename = "period_8_cascade")]
    Period8Cascade,
    /// `r ∈ (3.5699, 4]`: beyond the accumulation point.
    #[serde(rename = "chaotic")]
    Chaotic,
    /// Anything outside `(0, 4]`, including non-finite input.
    #[serde(rename = "invalid")]
    Invalid,
}

impl RegimeLabel {
    /// Stable lower-snake-case name, matching the serialized form.
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::Extinction => "extinction",
            RegimeLabel::Period1 => "period_1",
            RegimeLabel::Period2 => "period_2",
            RegimeLabel::Period4 => "period_4",
            RegimeLabel::Period8Cascade => "period_8_cascade",
            RegimeLabel::Chaotic => "chaotic",
            RegimeLabel::Invalid => "invalid",
        }
    }

    /// The attractor period this band guarantees, where one is pinned:
    /// 1 for extinction (the origin) and the period-1 band, 2 and 4 for
    /// their bands; `None` in the cascade tail, the chaotic band, and for
    /// invalid input.
    pub fn pinned_period(&self) -> Option<usize> {
        match self {
            RegimeLabel::Extinction | RegimeLabel::Period1 => Some(1),
            RegimeLabel::Period2 => Some(2),
            RegimeLabel::Period4 => Some(4),
            _ => None,
        }
    }
}

impl std::fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classified parameter value. Fields are ordered for stable serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeClass {
    /// The boundary constants the classification used.
    pub boundaries_used: [f64; 5],
    pub label: RegimeLabel,
    pub r: f64,
}

/// Assigns `r` to its regime band. Total: out-of-range and non-finite
/// values classify as `invalid` rather than erroring.
pub fn classify_regime(r: f64) -> RegimeClass {
    let [b_ext, b1, b2, b4, b_inf] = REGIME_BOUNDARIES;
    let label = if !r.is_finite() || r <= 0.0 || r > 4.0 {
        RegimeLabel::Invalid
    } else if r <= b_ext {
        RegimeLabel::Extinction
    } else if r <= b1 {
        RegimeLabel::Period1
    } else if r <= b2 {
        RegimeLabel::Period2
    } else if r <= b4 {
        RegimeLabel::Period4
    } else if r <= b_inf {
        RegimeLabel::Period8Cascade
    } else {
        RegimeLabel::Chaotic
    };
    RegimeClass {
        boundaries_used: REGIME_BOUNDARIES,
        label,
        r,
    }
}

/// Long-run samples of the attractor across a parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationDiagram {
    /// Strictly increasing `r` values.
    pub r_grid: Vec<f64>,
    /// For each grid point, `samples_per_r` consecutive post-burn-in states.
    pub attractor_samples: Vec<Vec<f64>>,
    pub burn_in: usize,
    pub samples_per_r: usize,
}

/// Samples the attractor on a uniform `r` grid, in parallel across grid
/// points. Each grid point iterates the default start state through
/// `burn_in` discarded steps and records the next `samples_per_r` states.
/// Output order follows the grid regardless of scheduling.
///
/// A single-point "grid" (`steps == 1`) requires `r_lo == r_hi`; larger
/// grids require `r_lo < r_hi`. Both endpoints must lie in `(0, 4]`.
pub fn sweep(
    r_lo: f64,
    r_hi: f64,
    steps: usize,
    burn_in: usize,
    samples_per_r: usize,
) -> Result<BifurcationDiagram> {
    if !(r_lo > 0.0 && r_lo <= 4.0 && r_hi > 0.0 && r_hi <= 4.0) {
        return Err(Error::Domain(format!(
            "sweep range must lie in (0, 4], got [{r_lo}, {r_hi}]"
        )));
    }
    if steps == 0 {
        return Err(Error::Domain("steps must be at least 1".into()));
    }
    if samples_per_r == 0 {
        return Err(Error::Domain("samples_per_r must be at least 1".into()));
    }
    if steps == 1 && r_lo != r_hi {
        return Err(Error::Domain(format!(
            "a 1-step sweep needs r_lo == r_hi, got [{r_lo}, {r_hi}]"
        )));
    }
    if steps > 1 && !(r_lo < r_hi) {
        return Err(Error::Domain(format!(
            "sweep range must satisfy r_lo < r_hi, got [{r_lo}, {r_hi}]"
        )));
    }

    let r_grid: Vec<f64> = if steps == 1 {
        vec![r_lo]
    } else {
        let dr = (r_hi - r_lo) / (steps - 1) as f64;
        (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    r_hi
                } else {
                    r_lo + i as f64 * dr
                }
            })
            .collect()
    };

    let attractor_samples: Vec<Vec<f64>> = r_grid
        .par_iter()
        .map(|&r| {
            let params = MapParams::from_r(r).expect("grid points stay inside the valid range");
            let mut x = DEFAULT_X0;
            for _ in 0..burn_in {
                x = params.step(x).unwrap_or(0.0);
            }
            let mut samples = Vec::with_capacity(samples_per_r);
            for _ in 0..samples_per_r {
                x = params.step(x).unwrap_or(0.0);
                samples.push(x);
            }
            samples
        })
        .collect();

    Ok(BifurcationDiagram {
        r_grid,
        attractor_samples,
        burn_in,
        samples_per_r,
    })
}

/// A numerically located period-doubling parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoublingPoint {
    /// Which doubling of the cascade: 1 (1→2), 2 (2→4), or 3 (4→8).
    pub index: usize,
    pub r_located: f64,
    pub period_before: usize,
    pub period_after: usize,
}

/// Locates the `index`-th period-doubling parameter by bisecting the
/// detected attractor period, to within `tol` (at least 1e−6), using the
/// default transient length. See [`locate_doubling_with_burn_in`].
pub fn locate_doubling(index: usize, tol: f64) -> Result<DoublingPoint> {
    locate_doubling_with_burn_in(index, tol, LOCATE_BURN_IN)
}

/// [`locate_doubling`] with an explicit transient length.
///
/// Starts from a fixed bracket known to contain exactly one doubling, checks
/// that the detected period really is `2^(index−1)` below the bracket and
/// `2^index` above it (anything else is a `Convergence` error — typically an
/// insufficient `burn_in`), then bisects on the predicate "detected period
/// ≤ 2^(index−1)". The midpoint of the final bracket is returned.
pub fn locate_doubling_with_burn_in(
    index: usize,
    tol: f64,
    burn_in: usize,
) -> Result<DoublingPoint> {
    if !(1..=3).contains(&index) {
        return Err(Error::Domain(format!(
            "doubling index must be 1, 2, or 3, got {index}"
        )));
    }
    if !(tol >= 1e-6) {
        return Err(Error::Domain(format!(
            "tol must be at least 1e-6, got {tol}"
        )));
    }

    let (mut lo, mut hi) = match index {
        1 => (2.9, 3.2),
        2 => (3.35, 3.5),
        _ => (3.52, 3.56),
    };
    let period_before = 1usize << (index - 1);
    let period_after = 2 * period_before;
    let max_period = 4 * period_after;

    let period_at = |r: f64| -> Result<Option<usize>> {
        let params = MapParams::from_r(r)?;
        let info = detect_cycle(params, DEFAULT_X0, burn_in, max_period, DEFAULT_CYCLE_TOL)?;
        Ok(info.period())
    };

    if period_at(lo)? != Some(period_before) {
        return Err(Error::Convergence(format!(
            "expected period {period_before} below the doubling at r = {lo}; \
             the transient ({burn_in} iterates) did not settle"
        )));
    }
    if period_at(hi)? != Some(period_after) {
        return Err(Error::Convergence(format!(
            "expected period {period_after} above the doubling at r = {hi}; \
             the transient ({burn_in} iterates) did not settle"
        )));
    }

    let mut iterations = 0;
    while hi - lo > tol && iterations < 80 {
        let mid = 0.5 * (lo + hi);
        match period_at(mid)? {
            Some(p) if p <= period_before => lo = mid,
            _ => hi = mid,
        }
        iterations += 1;
    }

    Ok(DoublingPoint {
        index,
        r_located: 0.5 * (lo + hi),
        period_before,
        period_after,
    })
}

/// First Feigenbaum ratio `(r2 − r1)/(r3 − r2)` from three doubling
/// parameters. Requires a strictly increasing triple; anything else
/// (including a degenerate `r2 == r3`) is a `Convergence` error.
pub fn feigenbaum_ratio(r1: f64, r2: f64, r3: f64) -> Result<f64> {
    if !(r1.is_finite() && r2.is_finite() && r3.is_finite() && r1 < r2 && r2 < r3) {
        return Err(Error::Convergence(format!(
            "doubling parameters must satisfy r1 < r2 < r3, got ({r1}, {r2}, {r3})"
        )));
    }
    Ok((r2 - r1) / (r3 - r2))
}

/// Locates the first three doublings and returns the first Feigenbaum
/// ratio computed from them.
pub fn feigenbaum_estimate() -> Result<f64> {
    let r1 = locate_doubling(1, 1e-5)?.r_located;
    let r2 = locate_doubling(2, 1e-5)?.r_located;
    let r3 = locate_doubling(3, 1e-5)?.r_located;
    feigenbaum_ratio(r1, r2, r3)
}

/// Analytic period-2 cycle points `[(r+1) ± sqrt((r+1)(r−3))]/(2r)`, upper
/// branch first. Defined on the period-2 band `(3, 3.4495]`; the boundary
/// `r = 3`, where the branches coincide with the fixed point, is excluded.
pub fn period2_branch(r: f64) -> Result<(f64, f64)> {
    if !(r > REGIME_BOUNDARIES[1] && r <= REGIME_BOUNDARIES[2]) {
        return Err(Error::Domain(format!(
            "period-2 branch is defined on ({}, {}], got {r}",
            REGIME_BOUNDARIES[1], REGIME_BOUNDARIES[2]
        )));
    }
    let s = ((r + 1.0) * (r - 3.0)).sqrt();
    Ok((((r + 1.0) + s) / (2.0 * r), ((r + 1.0) - s) / (2.0 * r)))
}
