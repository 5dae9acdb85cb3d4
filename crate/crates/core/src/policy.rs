//! Decision support: evaluates a `(T, ε)` configuration against the regime
//! taxonomy, computes the regulation intensities that sit on bifurcation
//! boundaries, and maps growth conditions to a recommendation.

use serde::ser::Serializer;
use serde::Serialize;

use crate::bifurcation::{classify_regime, RegimeClass, RegimeLabel, REGIME_BOUNDARIES};
use crate::{Error, Result};

/// Combined-growth threshold separating the lower and middle cases.
pub const LOWER_GROWTH_THRESHOLD: f64 = 0.1494;
/// Combined-growth threshold separating the middle and upper cases.
pub const MIDDLE_GROWTH_THRESHOLD: f64 = 0.2754;
/// Supremum of the admissible regulation intensity; a boundary quotient at
/// or beyond this value cannot be reached by any admissible ε.
pub const EPSILON_SUP: f64 = 10.0;

/// A bifurcation boundary expressed as a regulation intensity, or a marker
/// that no admissible intensity reaches it. Serializes as a bare number or
/// the string `"unreachable"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonBound {
    Reachable(f64),
    Unreachable,
}

impl EpsilonBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            EpsilonBound::Reachable(v) => Some(*v),
            EpsilonBound::Unreachable => None,
        }
    }

    pub fn is_reachable(&self) -> bool {
        matches!(self, EpsilonBound::Reachable(_))
    }
}

impl Serialize for EpsilonBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EpsilonBound::Reachable(v) => serializer.serialize_f64(*v),
            EpsilonBound::Unreachable => serializer.serialize_str("unreachable"),
        }
    }
}

/// The four regime boundaries divided by `T`: the intensities at which the
/// steady state first bifurcates (`eps1`), doubles again (`eps2`, `eps3`),
/// and reaches the edge of the doubling cascade (`eps_inf`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DangerousEpsilons {
    pub eps1: EpsilonBound,
    pub eps2: EpsilonBound,
    pub eps3: EpsilonBound,
    pub eps_inf: EpsilonBound,
}

impl DangerousEpsilons {
    pub fn to_array(&self) -> [EpsilonBound; 4] {
        [self.eps1, self.eps2, self.eps3, self.eps_inf]
    }
}

/// Which growth case the inputs fall into, by combined growth `α+β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RationaleCase {
    /// `α+β ≤ 0.1494`: growth too weak for regulation to matter much.
    Lower,
    /// `0.1494 < α+β ≤ 0.2754`: intensity extends the stable range.
    Middle,
    /// `α+β > 0.2754`: bifurcation boundaries become reachable.
    Upper,
}

/// Symbolic policy recommendation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Recommendation {
    /// Lower case: even maximal intensity leaves the accumulation level
    /// low; labour conditions dominate the coefficient.
    FixLabourFirst,
    /// Middle case: stronger support raises the steady level safely.
    IncreaseSupport,
    /// Upper case: growth is strong enough that intensity must steer clear
    /// of the bifurcation boundaries.
    TuneAvoidBifurcations,
}

/// Full evaluation of one configuration. Fields are declared in the
/// serialized (alphabetical) key order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolicyReport {
    pub dangerous_epsilons: DangerousEpsilons,
    pub epsilon_evaluated: Option<f64>,
    pub rationale_case: RationaleCase,
    pub recommendation: Recommendation,
    /// Present when an ε was evaluated.
    pub regime: Option<RegimeClass>,
    /// Present exactly when the evaluated regime is the period-1 band:
    /// the attractor level `1 − 1/(T·ε)`.
    pub steady_level: Option<f64>,
    pub t: f64,
}

impl PolicyReport {
    /// Stable JSON rendering: alphabetical keys, deterministic for
    /// identical inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report contains only finite serializable data")
    }
}

/// The regime boundaries expressed as regulation intensities for a given
/// firm coefficient: `boundary / T` for boundaries {3, 3.4495, 3.5441,
/// 3.5699}, marked unreachable when the quotient is at or beyond the ε
/// supremum.
pub fn dangerous_epsilons(t: f64) -> Result<DangerousEpsilons> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {t}")));
    }
    let bound = |boundary: f64| {
        let quotient = boundary / t;
        if quotient < EPSILON_SUP {
            EpsilonBound::Reachable(quotient)
        } else {
            EpsilonBound::Unreachable
        }
    };
    Ok(DangerousEpsilons {
        eps1: bound(REGIME_BOUNDARIES[1]),
        eps2: bound(REGIME_BOUNDARIES[2]),
        eps3: bound(REGIME_BOUNDARIES[3]),
        eps_inf: bound(REGIME_BOUNDARIES[4]),
    })
}

/// The largest composite parameter any admissible intensity can produce:
/// `min(10·T, 4)`.
///
/// # Panics
/// On a contract violation: `T ≤ 0` or non-finite.
pub fn max_reachable_r(t: f64) -> f64 {
    assert!(t > 0.0, "T must be positive, got {t}");
    (EPSILON_SUP * t).min(4.0)
}

/// Evaluates a configuration and produces the full report.
///
/// `t` may be omitted, in which case it is recomputed as
/// `alpha_plus_beta / (1 + n)`; when supplied it must agree with that
/// quotient within 1e−6. `epsilon`, when supplied, must lie in `(0, 10]`
/// (the supremum itself is accepted for evaluating limiting scenarios) and
/// selects the regime via the composite parameter `r = T·ε`; the report
/// depends on `(T, ε)` only through `r`, aside from the case thresholds on
/// `alpha_plus_beta`.
pub fn advise(
    t: Option<f64>,
    epsilon: Option<f64>,
    alpha_plus_beta: f64,
    n: f64,
) -> Result<PolicyReport> {
    let one_plus_n = 1.0 + n;
    if !(one_plus_n > 0.0) {
        return Err(Error::Domain(format!(
            "1+n must be positive, got {one_plus_n}"
        )));
    }
    if !(alpha_plus_beta > 0.0) {
        return Err(Error::Domain(format!(
            "alpha+beta must be positive, got {alpha_plus_beta}"
        )));
    }
    let computed_t = alpha_plus_beta / one_plus_n;
    let t = match t {
        Some(supplied) => {
            if !(supplied > 0.0) {
                return Err(Error::Domain(format!("T must be positive, got {supplied}")));
            }
            if (supplied - computed_t).abs() > 1e-6 {
                return Err(Error::Domain(format!(
                    "inconsistent inputs: T = {supplied} but (alpha+beta)/(1+n) = {computed_t}"
                )));
            }
            supplied
        }
        None => computed_t,
    };

    let (epsilon_evaluated, regime, steady_level) = match epsilon {
        Some(eps) => {
            if !(eps > 0.0 && eps <= EPSILON_SUP) {
                return Err(Error::Domain(format!(
                    "epsilon must lie in (0, 10], got {eps}"
                )));
            }
            let r = t * eps;
            let regime = classify_regime(r);
            let steady = if regime.label == RegimeLabel::Period1 {
                Some(1.0 - 1.0 / r)
            } else {
                None
            };
            (Some(eps), Some(regime), steady)
        }
        None => (None, None, None),
    };

    let rationale_case = if alpha_plus_beta <= LOWER_GROWTH_THRESHOLD {
        RationaleCase::Lower
    } else if alpha_plus_beta <= MIDDLE_GROWTH_THRESHOLD {
        RationaleCase::Middle
    } else {
        RationaleCase::Upper
    };
    let recommendation = match rationale_case {
        RationaleCase::Lower => Recommendation::FixLabourFirst,
        RationaleCase::Middle => Recommendation::IncreaseSupport,
        RationaleCase::Upper => Recommendation::TuneAvoidBifurcations,
    };

    Ok(PolicyReport {
        dangerous_epsilons: dangerous_epsilons(t)?,
        epsilon_evaluated,
        rationale_case,
        recommendation,
        regime,
        steady_level,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dangerous_epsilons_match_documented_quotients() {
        let d = dangerous_epsilons(0.94599).unwrap();
        assert!((d.eps1.value().unwrap() - 3.1713).abs() <= 1e-3);
        assert!((d.eps2.value().unwrap() - 3.6464).abs() <= 1e-3);
        assert!((d.eps3.value().unwrap() - 3.7464).abs() <= 1e-3);
        assert!((d.eps_inf.value().unwrap() - 3.7737).abs() <= 1e-3);

        let d = dangerous_epsilons(0.17884).unwrap();
        assert!(
            d.to_array().iter().all(|b| !b.is_reachable()),
            "3/0.17884 ≈ 16.77 puts every boundary past the ε supremum"
        );

        let d = dangerous_epsilons(1.0).unwrap();
        assert_eq!(d.eps1, EpsilonBound::Reachable(3.0));
        assert_eq!(d.eps2, EpsilonBound::Reachable(3.4495));
        assert_eq!(d.eps3, EpsilonBound::Reachable(3.5441));
        assert_eq!(d.eps_inf, EpsilonBound::Reachable(3.5699));

        assert!(matches!(dangerous_epsilons(0.0), Err(Error::Domain(_))));
        assert!(matches!(dangerous_epsilons(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn dangerous_epsilons_sit_on_label_changes() {
        for t in [0.94599, 1.0, 0.5] {
            let d = dangerous_epsilons(t).unwrap();
            for bound in d.to_array() {
                let Some(eps) = bound.value() else { continue };
                let below = classify_regime(t * (eps - 1e-4)).label;
                let above = classify_regime(t * (eps + 1e-4)).label;
                assert_ne!(
                    below, above,
                    "T = {t}, ε = {eps} should straddle a boundary"
                );
            }
        }
    }

    #[test]
    fn max_reachable_r_caps_at_both_limits() {
        assert!((max_reachable_r(0.17884) - 1.7884).abs() <= 1e-12);
        assert!((max_reachable_r(0.29245) - 2.9245).abs() <= 1e-12);
        assert_eq!(max_reachable_r(0.5), 4.0);
    }

    #[test]
    #[should_panic(expected = "positive")]
    fn max_reachable_r_panics_on_nonpositive_t() {
        max_reachable_r(0.0);
    }

    #[test]
    fn advise_lower_case_matches_documented_scenario() {
        let report = advise(None, Some(10.0), 0.1494, -0.1646).unwrap();
        assert_eq!(report.rationale_case, RationaleCase::Lower);
        assert_eq!(report.recommendation, Recommendation::FixLabourFirst);
        let regime = report.regime.unwrap();
        assert_eq!(regime.label, RegimeLabel::Period1);
        assert!((regime.r - 1.7884).abs() <= 1e-3);
        assert!((report.steady_level.unwrap() - 0.4408).abs() <= 1e-3);
        assert!(report
            .dangerous_epsilons
            .to_array()
            .iter()
            .all(|b| !b.is_reachable()));
    }

    #[test]
    fn advise_middle_case_matches_documented_scenario() {
        let report = advise(None, Some(10.0), 0.2754, -0.0583).unwrap();
        assert_eq!(report.rationale_case, RationaleCase::Middle);
        assert_eq!(report.recommendation, Recommendation::IncreaseSupport);
        let regime = report.regime.unwrap();
        assert_eq!(regime.label, RegimeLabel::Period1);
        assert!((regime.r - 2.9245).abs() <= 1e-3, "r = {}", regime.r);
        assert!(regime.r < 3.0);
        assert!(report.steady_level.is_some());
    }

    #[test]
    fn advise_upper_case_matches_documented_scenario() {
        let report = advise(None, Some(3.7737), 0.9913, 0.0479).unwrap();
        assert_eq!(report.rationale_case, RationaleCase::Upper);
        assert_eq!(
            report.recommendation,
            Recommendation::TuneAvoidBifurcations
        );
        let d = report.dangerous_epsilons;
        assert!((d.eps1.value().unwrap() - 3.1713).abs() <= 1e-3);
        assert!((d.eps2.value().unwrap() - 3.6464).abs() <= 1e-3);
        assert!((d.eps3.value().unwrap() - 3.7464).abs() <= 1e-3);
        assert!((d.eps_inf.value().unwrap() - 3.7737).abs() <= 1e-3);
        // The nominal ε equals eps_inf to 4 decimals, so the evaluated r
        // sits a hair inside the cascade edge.
        let regime = report.regime.unwrap();
        assert_eq!(regime.label, RegimeLabel::Period8Cascade);
        assert!(report.steady_level.is_none());
    }

    #[test]
    fn advise_without_epsilon_still_reports_case_and_boundaries() {
        let report = advise(None, None, 0.2, 0.0).unwrap();
        assert_eq!(report.epsilon_evaluated, None);
        assert_eq!(report.regime, None);
        assert_eq!(report.steady_level, None);
        assert_eq!(report.rationale_case, RationaleCase::Middle);
        assert_eq!(report.t, 0.2);
    }

    #[test]
    fn advise_checks_input_consistency() {
        let ok = advise(Some(0.29245), Some(10.0), 0.2754, -0.0583);
        assert!(ok.is_ok(), "T within 1e-6 of the quotient is accepted");

        assert!(matches!(
            advise(Some(0.3), Some(10.0), 0.2754, -0.0583),
            Err(Error::Domain(_))
        ));
        assert!(matches!(advise(None, None, 0.2, -1.0), Err(Error::Domain(_))));
        assert!(matches!(advise(None, None, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(
            advise(None, Some(0.0), 0.2, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            advise(None, Some(10.5), 0.2, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn boundary_growth_values_take_the_lower_case() {
        assert_eq!(
            advise(None, None, 0.1494, 0.0).unwrap().rationale_case,
            RationaleCase::Lower
        );
        assert_eq!(
            advise(None, None, 0.2754, 0.0).unwrap().rationale_case,
            RationaleCase::Middle
        );
        assert_eq!(
            advise(None, None, 0.2755, 0.0).unwrap().rationale_case,
            RationaleCase::Upper
        );
    }

    #[test]
    fn report_depends_on_t_and_epsilon_only_through_r() {
        let a = advise(None, Some(5.0), 0.4, 0.0).unwrap();
        let b = advise(None, Some(10.0), 0.2, 0.0).unwrap();
        assert_eq!(a.regime.unwrap().label, b.regime.unwrap().label);
        assert_eq!(a.steady_level, b.steady_level);
        assert_eq!(a.steady_level, Some(0.5), "r = 2 fixed point");
    }

    #[test]
    fn recommendation_is_total_over_the_input_box() {
        for i in 1..10 {
            for j in -9..10i32 {
                let apb = i as f64 / 10.0;
                let n = j as f64 / 10.0;
                let report = advise(None, None, apb, n).unwrap();
                let expected = if apb <= LOWER_GROWTH_THRESHOLD {
                    Recommendation::FixLabourFirst
                } else if apb <= MIDDLE_GROWTH_THRESHOLD {
                    Recommendation::IncreaseSupport
                } else {
                    Recommendation::TuneAvoidBifurcations
                };
                assert_eq!(report.recommendation, expected);
            }
        }
    }

    #[test]
    fn json_rendering_is_stable_and_alphabetical() {
        let report = advise(None, Some(3.7737), 0.9913, 0.0479).unwrap();
        let a = report.to_json();
        let b = advise(None, Some(3.7737), 0.9913, 0.0479).unwrap().to_json();
        assert_eq!(a, b, "identical inputs serialize byte-identically");

        let keys = [
            "\"dangerous_epsilons\"",
            "\"epsilon_evaluated\"",
            "\"rationale_case\"",
            "\"recommendation\"",
            "\"regime\"",
            "\"steady_level\"",
            "\"t\"",
        ];
        let mut last = 0;
        for key in keys {
            let pos = a.find(key).unwrap_or_else(|| panic!("missing {key}"));
            assert!(pos > last, "{key} out of alphabetical order");
            last = pos;
        }

        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(value["recommendation"], "TUNE_AVOID_BIFURCATIONS");
        assert_eq!(value["rationale_case"], "upper");
        assert_eq!(value["regime"]["label"], "period_8_cascade");
        assert!(value["dangerous_epsilons"]["eps_inf"].is_number());
        assert!(value["steady_level"].is_null());

        let unreachable = advise(None, Some(10.0), 0.1494, -0.1646)
            .unwrap()
            .to_json();
        let value: serde_json::Value = serde_json::from_str(&unreachable).unwrap();
        assert_eq!(value["dangerous_epsilons"]["eps1"], "unreachable");
        assert_eq!(value["regime"]["label"], "period_1");
    }
}
