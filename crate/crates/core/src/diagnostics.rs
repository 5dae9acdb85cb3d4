//! Chaos diagnostics: attractor cycle detection, Lyapunov exponent
//! estimation, and a Li–Yorke sufficient-condition certificate.

use serde::Serialize;

use crate::map::{MapParams, DEFAULT_X0};
use crate::{Error, Result};

/// Default recurrence tolerance for cycle detection.
pub const DEFAULT_CYCLE_TOL: f64 = 1e-8;
/// Default transient length discarded before scanning for recurrence.
pub const DEFAULT_CYCLE_BURN_IN: usize = 100_000;
/// Default largest period considered before reporting `Aperiodic`.
pub const DEFAULT_MAX_PERIOD: usize = 64;
/// Default transient length discarded before averaging log-derivatives.
pub const DEFAULT_LYAPUNOV_BURN_IN: usize = 10_000;
/// Default number of log-derivative terms averaged.
pub const DEFAULT_LYAPUNOV_ITERATES: usize = 1_000_000;
/// A cycle point this close to the critical point 1/2 makes the cycle
/// effectively superstable; its multiplier is reported as exactly 0.
pub const SUPERSTABLE_EPS: f64 = 1e-15;

/// Outcome of attractor cycle detection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CycleInfo {
    /// A periodic attractor: `points` lists one full cycle starting from the
    /// refined recurrence point, `multiplier` is the product of map slopes
    /// around the cycle, and the period is minimal — no proper divisor also
    /// closes the orbit within `tolerance_used`.
    Periodic {
        period: usize,
        points: Vec<f64>,
        multiplier: f64,
        tolerance_used: f64,
    },
    /// No period up to `max_period_checked` closed the orbit within
    /// `tolerance_used`.
    Aperiodic {
        max_period_checked: usize,
        tolerance_used: f64,
    },
}

impl CycleInfo {
    /// The detected period, or `None` when aperiodic.
    pub fn period(&self) -> Option<usize> {
        match self {
            CycleInfo::Periodic { period, .. } => Some(*period),
            CycleInfo::Aperiodic { .. } => None,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, CycleInfo::Periodic { .. })
    }
}

/// Time-averaged log-derivative along an orbit, in nats per iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    /// Mean of `ln|r(1−2x_t)|` over the finite terms.
    pub value: f64,
    /// Number of terms that contributed to the mean (iterates that landed
    /// exactly on the critical point are excluded).
    pub iterates_used: usize,
    /// True when at least one iterate hit the critical point exactly, where
    /// the log-derivative is −∞; the divergence is flagged rather than
    /// propagated into `value`.
    pub diverged_to_minus_infinity: bool,
}

/// Evaluation of the sufficient chaos condition built from the critical
/// point, its image, its smaller preimage, and the third iterate of the
/// critical point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiYorkeCertificate {
    pub r: f64,
    /// Critical point of the map; always 1/2.
    pub x_star: f64,
    /// Image of the critical point: `r/4`, the orbit maximum.
    pub x_max: f64,
    /// Smaller solution of `r·x(1−x) = 1/2`, i.e. `(1 − sqrt(1 − 2/r))/2`;
    /// `None` for `r < 2` where the critical value is never reached.
    pub x_i: Option<f64>,
    /// Third-order image of the critical point: `f(x_max) = r·(r/4)(1 − r/4)`.
    pub f3: f64,
    /// Whether the chain `0 ≤ f3 ≤ x_i ≤ x_star ≤ x_max` holds.
    pub holds: bool,
}

/// Detects the attractor cycle reached from `x0`.
///
/// After discarding `burn_in` iterates, scans periods `1..=max_period` for a
/// recurrence within `tol`, refines the candidate with Newton iteration on
/// the period map, reduces to the minimal closing divisor, and accepts only
/// attracting cycles (`|multiplier| < 1 + 1e−6`). Rejected candidates resume
/// the scan, so a near-neutral slow passage cannot masquerade as a shorter
/// cycle.
pub fn detect_cycle(
    params: MapParams,
    x0: f64,
    burn_in: usize,
    max_period: usize,
    tol: f64,
) -> Result<CycleInfo> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::Domain(format!(
            "initial state must lie in (0, 1), got {x0}"
        )));
    }
    if max_period < 1 {
        return Err(Error::Domain("max_period must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }

    let mut y = x0;
    for _ in 0..burn_in {
        y = params.step_unchecked(y);
    }
    let mut z = y;
    for p in 1..=max_period {
        z = params.step_unchecked(z);
        if (z - y).abs() <= tol {
            if let Some(info) = accept_candidate(params, y, p, tol) {
                return Ok(info);
            }
        }
    }
    Ok(CycleInfo::Aperiodic {
        max_period_checked: max_period,
        tolerance_used: tol,
    })
}

/// [`detect_cycle`] with the default start state, burn-in, period bound, and
/// tolerance.
pub fn detect_cycle_default(params: MapParams) -> Result<CycleInfo> {
    detect_cycle(
        params,
        DEFAULT_X0,
        DEFAULT_CYCLE_BURN_IN,
        DEFAULT_MAX_PERIOD,
        DEFAULT_CYCLE_TOL,
    )
}

/// Newton refinement of a candidate period-`p` point: solves
/// `f^p(x) − x = 0` using the exact chain-rule derivative. Returns `None`
/// when the iteration stalls, leaves `[0,1]`, or fails to converge.
fn newton_polish(params: MapParams, x0: f64, p: usize) -> Option<f64> {
    let mut x = x0;
    for _ in 0..30 {
        let mut y = x;
        let mut dp = 1.0;
        for _ in 0..p {
            dp *= params.derivative(y);
            y = params.step_unchecked(y);
        }
        let g = y - x;
        let gp = dp - 1.0;
        if g.abs() <= 5e-15 {
            return Some(x);
        }
        if gp.abs() < 1e-12 {
            return None;
        }
        let xn = x - g / gp;
        if !(0.0..=1.0).contains(&xn) {
            return None;
        }
        if (xn - x).abs() <= 1e-16 {
            return Some(xn);
        }
        x = xn;
    }
    let mut y = x;
    for _ in 0..p {
        y = params.step_unchecked(y);
    }
    if (y - x).abs() <= 1e-12 {
        Some(x)
    } else {
        None
    }
}

/// Validates a recurrence candidate of trial period `p` anchored at `y`:
/// polishes the point, rebuilds the cycle, reduces the period to the
/// smallest divisor that closes within `tol`, and gates on the attractor
/// condition. `None` means the candidate is spurious and scanning should
/// continue.
fn accept_candidate(params: MapParams, y: f64, p: usize, tol: f64) -> Option<CycleInfo> {
    let anchor = match newton_polish(params, y, p) {
        Some(xr) if (xr - y).abs() <= 0.1 => xr,
        _ => y,
    };
    let mut pts = Vec::with_capacity(p);
    pts.push(anchor);
    for _ in 1..p {
        let last = *pts.last().unwrap();
        pts.push(params.step_unchecked(last));
    }
    if pts.iter().any(|q| !(0.0..=1.0).contains(q)) {
        return None;
    }
    let wrap = params.step_unchecked(*pts.last().unwrap());
    if (wrap - pts[0]).abs() > tol {
        return None;
    }
    for d in 1..=p {
        if !p.is_multiple_of(d) {
            continue;
        }
        let at_d = if d < p { pts[d] } else { wrap };
        if (at_d - pts[0]).abs() <= tol {
            let multiplier = cycle_multiplier(params, &pts[..d]);
            if multiplier.abs() < 1.0 + 1e-6 {
                return Some(CycleInfo::Periodic {
                    period: d,
                    points: pts[..d].to_vec(),
                    multiplier,
                    tolerance_used: tol,
                });
            }
            return None;
        }
    }
    None
}

/// Product of map slopes around a cycle. A point within [`SUPERSTABLE_EPS`]
/// of the critical point pins the product to exactly 0.
fn cycle_multiplier(params: MapParams, points: &[f64]) -> f64 {
    if points.iter().any(|q| (q - 0.5).abs() <= SUPERSTABLE_EPS) {
        return 0.0;
    }
    points.iter().map(|q| params.derivative(*q)).product()
}

/// Estimates the Lyapunov exponent as the orbit average of `ln|r(1−2x_t)|`.
///
/// Iterates that land exactly on the critical point contribute a −∞ term;
/// those are excluded from the mean and flagged instead. When every term is
/// excluded (a superstable orbit pinned at 1/2), `value` is 0 and the flag
/// carries the whole story.
///
/// # Panics
/// On contract violations: `x0` outside `(0, 1)` or `iterates == 0`.
pub fn lyapunov(params: MapParams, x0: f64, burn_in: usize, iterates: usize) -> LyapunovEstimate {
    assert!(
        x0 > 0.0 && x0 < 1.0,
        "initial state must lie in (0, 1), got {x0}"
    );
    assert!(iterates >= 1, "iterates must be at least 1");

    let mut x = x0;
    for _ in 0..burn_in {
        x = params.step_unchecked(x);
    }
    let mut sum = 0.0;
    let mut skipped = 0usize;
    for _ in 0..iterates {
        let d = params.derivative(x).abs();
        if d == 0.0 {
            skipped += 1;
        } else {
            sum += d.ln();
        }
        x = params.step_unchecked(x);
    }
    let used = iterates - skipped;
    LyapunovEstimate {
        value: if used > 0 { sum / used as f64 } else { 0.0 },
        iterates_used: used,
        diverged_to_minus_infinity: skipped > 0,
    }
}

/// [`lyapunov`] with the default start state, burn-in, and iterate budget.
pub fn lyapunov_default(params: MapParams) -> LyapunovEstimate {
    lyapunov(
        params,
        DEFAULT_X0,
        DEFAULT_LYAPUNOV_BURN_IN,
        DEFAULT_LYAPUNOV_ITERATES,
    )
}

/// Evaluates the sufficient chaos condition at the given parameters.
///
/// The construction walks the critical point 1/2 forward (`x_max = r/4`,
/// then `f3 = f(x_max)`) and backward (`x_i`, the smaller preimage of 1/2,
/// which exists only for `r ≥ 2`), and checks the ordering chain
/// `0 ≤ f3 ≤ x_i ≤ 1/2 ≤ x_max`. At exactly `r = 2` the chain degenerates to
/// equalities (`x_i = f3 = 1/2`) and holds vacuously; the meaningful regime
/// is the strict chain seen for large `r`.
pub fn liyorke_certificate(params: MapParams) -> LiYorkeCertificate {
    let r = params.r();
    let x_max = r / 4.0;
    let f3 = params.step_unchecked(x_max);
    let disc = 1.0 - 2.0 / r;
    let x_i = if disc >= 0.0 {
        Some((1.0 - disc.sqrt()) / 2.0)
    } else {
        None
    };
    let holds = match x_i {
        Some(xi) => 0.0 <= f3 && f3 <= xi && xi <= 0.5 && 0.5 <= x_max,
        None => false,
    };
    LiYorkeCertificate {
        r,
        x_star: 0.5,
        x_max,
        x_i,
        f3,
        holds,
    }
}

/// Bisects for the smallest `r` in `[lo, hi]` at which the certificate
/// holds, to within `tol`. Requires a valid bracket: the condition must fail
/// at `lo` and hold at `hi`. Returns the holding endpoint of the final
/// bracket, so the certificate is guaranteed to hold at the returned value.
pub fn liyorke_threshold(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let holds_at = |r: f64| -> Result<bool> {
        Ok(liyorke_certificate(MapParams::from_r(r)?).holds)
    };
    if holds_at(lo)? {
        return Err(Error::Bracket(format!(
            "condition already holds at lo = {lo}; no threshold inside the bracket"
        )));
    }
    if !holds_at(hi)? {
        return Err(Error::Bracket(format!(
            "condition still fails at hi = {hi}; no threshold inside the bracket"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut iterations = 0;
    while hi - lo > tol && iterations < 80 {
        let mid = 0.5 * (lo + hi);
        if holds_at(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(hi)
}
