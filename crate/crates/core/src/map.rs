//! The quadratic map `x ↦ r·x(1−x)` with validated control parameters.

use serde::Serialize;

use crate::{Error, Result};

/// Default starting state: near the critical point 1/2 but off every
/// superstable orbit and away from the measure-zero preimages of 0.
pub const DEFAULT_X0: f64 = 0.5 + 1e-3;

/// Absolute tolerance for internal comparisons against analytic values.
pub const ANALYTIC_TOL: f64 = 1e-9;

/// Validated control parameters.
///
/// `r = t·epsilon` is recomputed at construction and never stored
/// inconsistently; `t > 0`, `epsilon ∈ (0,10)`, and `r ∈ (0,4]` (closed at 4
/// so the fully chaotic boundary case stays representable, and so the unit
/// interval maps into itself).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapParams {
    t: f64,
    epsilon: f64,
    r: f64,
}

impl MapParams {
    /// Builds validated parameters from the firm coefficient and the
    /// regulation intensity.
    pub fn new(t: f64, epsilon: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("T must be positive, got {t}")));
        }
        if !(epsilon > 0.0 && epsilon < 10.0) {
            return Err(Error::Domain(format!(
                "epsilon must lie in (0, 10), got {epsilon}"
            )));
        }
        let r = t * epsilon;
        if !(r > 0.0 && r <= 4.0) {
            return Err(Error::Domain(format!(
                "r = T*epsilon must lie in (0, 4], got {r}"
            )));
        }
        Ok(Self { t, epsilon, r })
    }

    /// Builds parameters from the composite control value directly
    /// (equivalent to `new(r, 1.0)`).
    pub fn from_r(r: f64) -> Result<Self> {
        Self::new(r, 1.0)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The composite control parameter `r = T·epsilon`.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// One map application: `r·x(1−x)`.
    ///
    /// For `r ∈ (0,4]` and `x ∈ [0,1]` the result stays in `[0, r/4] ⊆ [0,1]`,
    /// including under double rounding.
    pub fn step(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("state must lie in [0, 1], got {x}")));
        }
        Ok(self.step_unchecked(x))
    }

    /// Map application without the domain check, for hot loops that already
    /// hold the confinement invariant.
    #[inline]
    pub(crate) fn step_unchecked(&self, x: f64) -> f64 {
        self.r * x * (1.0 - x)
    }

    /// Slope of the map: `r(1−2x)`. Zero exactly at the critical point 1/2.
    pub fn derivative(&self, x: f64) -> f64 {
        self.r * (1.0 - 2.0 * x)
    }

    /// Iterates from `x0`, discards `burn_in` states, and records the next
    /// `length` states. Deterministic for fixed inputs.
    pub fn orbit(&self, x0: f64, burn_in: usize, length: usize) -> Result<Orbit> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::Domain(format!(
                "initial state must lie in (0, 1), got {x0}"
            )));
        }
        if length == 0 {
            return Err(Error::Domain("orbit length must be at least 1".into()));
        }
        let mut x = x0;
        for _ in 0..burn_in {
            x = self.step_unchecked(x);
        }
        let mut states = Vec::with_capacity(length);
        for _ in 0..length {
            x = self.step_unchecked(x);
            states.push(x);
        }
        Ok(Orbit {
            params: *self,
            x0,
            burn_in,
            states,
        })
    }

    /// Fixed points with multipliers and stability: `{0}` for `r ≤ 1`,
    /// `{0, 1−1/r}` for `r > 1`. A point is stable iff `|r(1−2v)| < 1`.
    pub fn fixed_points(&self) -> FixedPointSet {
        let mut points = vec![FixedPoint::at(self, 0.0)];
        if self.r > 1.0 {
            points.push(FixedPoint::at(self, 1.0 - 1.0 / self.r));
        }
        FixedPointSet { points }
    }
}

/// A recorded trajectory of post-burn-in states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub params: MapParams,
    pub x0: f64,
    pub burn_in: usize,
    pub states: Vec<f64>,
}

/// A fixed point `v` with its multiplier `r(1−2v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPoint {
    pub value: f64,
    pub multiplier: f64,
    pub stable: bool,
}

impl FixedPoint {
    fn at(params: &MapParams, value: f64) -> Self {
        let multiplier = params.derivative(value);
        Self {
            value,
            multiplier,
            stable: multiplier.abs() < 1.0,
        }
    }
}

/// The fixed points of one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSet {
    pub points: Vec<FixedPoint>,
}

impl FixedPointSet {
    /// The nonzero fixed point `1−1/r`, present for `r > 1`.
    pub fn nonzero(&self) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.value != 0.0)
    }
}
