//! Closed-form expressions for S, E and C of every scenario.
//!
//! Entries are kept verbatim, including expressions that the numeric
//! pipeline does not reproduce; [`crate::audit`] compares the two.
//! Coherences of the Bob-and-Charlie scenarios are `2|f'|` of the damped
//! X-state. Mirror scenarios (Bob ↔ Charlie) share the
//! expressions of their partner.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::engine::ScenarioState;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::unruh::Scenario;

/// Is `(scenario, measure)` in the catalog?
pub fn cf_covers(scenario: Scenario, measure: Measure) -> bool {
    cf_lookup(scenario, measure).is_some()
}

type Formula = fn(f64, f64, f64) -> f64;

fn cf_lookup(scenario: Scenario, measure: Measure) -> Option<Formula> {
    use Measure::*;
    use Scenario::*;
    let f: Formula = match (scenario.bob_charlie_swap().min(scenario), measure) {
        (AbcI, S) => abc_i_s,
        (AbcI, E) => abc_i_e,
        (AbcI, C) => abc_i_c,
        (AbcII, S) => abc_ii_s,
        (AbcII, E) | (AbcII, C) => abc_ii_ec,
        (ABiCi, S) => ab1c1_s,
        (ABiCi, E) => ab1c1_e,
        (ABiCi, C) => ab1c1_c,
        (ABiCii, S) => ab1c2_s,
        (ABiCii, E) => ab1c2_e,
        (ABiCii, C) => ab1c2_c,
        (ABiiCii, S) => ab2c2_s,
        (ABiiCii, E) => ab2c2_e,
        (ABiiCii, C) => ab2c2_c,
        (ABiBii, S) => ab1b2_s,
        (ABiBii, E) => ab1b2_e,
        (ABiBii, C) => ab1b2_c,
        _ => return None,
    };
    Some(f)
}

/// Value of the closed-form expression for `measure` of `scenario`.
pub fn cf_eval(scenario: Scenario, measure: Measure, alpha: f64, beta: f64, p: f64) -> Result<f64> {
    let f = cf_lookup(scenario, measure).ok_or_else(|| Error::Coverage {
        scenario: scenario.to_string(),
        measure: measure.to_string(),
    })?;
    Ok(f(alpha, beta, p))
}

// α√(1−α²)
fn amp(a: f64) -> f64 {
    a * (1.0 - a * a).sqrt()
}

fn abc_i_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let f = 8.0 * SQRT_2 * (1.0 - p).sqrt() * amp(a) * c;
    let n = 4.0
        * (a * a * c * c + 2.0 * p * a * a * s * s - a * a * s * s
            + (2.0 * p - 1.0) * (1.0 - a * a));
    f.max(n)
}

fn abc_i_e(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let term =
        (1.0 - p).sqrt() * amp(a) * c - ((1.0 - p) * a * a * s * s * p * (1.0 - a * a)).sqrt();
    2.0 * term.max(0.0)
}

fn abc_i_c(a: f64, b: f64, p: f64) -> f64 {
    2.0 * (1.0 - p).sqrt() * amp(a) * b.cos()
}

fn abc_ii_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let f = 8.0 * SQRT_2 * (1.0 - p).sqrt() * amp(a) * s;
    let n = 4.0 * (a * a * c * c + 2.0 * p * a * a * s * s + (1.0 - a * a) - a * a * s * s);
    f.max(n)
}

fn abc_ii_ec(a: f64, b: f64, p: f64) -> f64 {
    2.0 * (1.0 - p).sqrt() * amp(a) * b.sin()
}

fn ab1c1_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let q = 1.0 - 2.0 * p + 2.0 * p * p;
    let f = 8.0 * SQRT_2 * (1.0 - p).sqrt() * amp(a) * c;
    let n = 4.0 * (a * a * (c.powi(4) - 2.0 * s * s * c * c + q) - q * (1.0 - a * a));
    f.max(n)
}

fn ab1c1_e(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let term = (1.0 - p) * amp(a) * c * c
        - a * s * ((1.0 - p) * c * c - (1.0 - p) * p * s * s).sqrt()
        - (1.0 - p) * a * s * s * (p * (1.0 - a * a)).sqrt();
    2.0 * term.max(0.0)
}

fn ab1c1_c(a: f64, b: f64, p: f64) -> f64 {
    2.0 * (1.0 - p) * amp(a) * b.cos().powi(2)
}

fn ab1c2_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let f = 8.0 * SQRT_2 * (1.0 - p) * amp(a) * s * c;
    let n = 4.0 * (a * a * (c * c - s * s).powi(2) + (1.0 - 2.0 * p) * (1.0 - a * a));
    f.max(n)
}

fn ab1c2_e(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let term = (1.0 - p) * amp(a) * s * c - (1.0 - p) * a * s * s * (p * (1.0 - a * a)).sqrt();
    2.0 * term.max(0.0)
}

fn ab1c2_c(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    2.0 * (1.0 - p) * amp(a) * s * c
}

fn ab2c2_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let f = 8.0 * SQRT_2 * (1.0 - p) * amp(a) * s * s;
    let n = 4.0 * (a * a * (c * c - s * s).powi(2) - (1.0 - a * a));
    f.max(n)
}

fn ab2c2_e(a: f64, b: f64, p: f64) -> f64 {
    2.0 * ((1.0 - p) * amp(a) * b.sin().powi(2)).max(0.0)
}

fn ab2c2_c(a: f64, b: f64, p: f64) -> f64 {
    2.0 * (1.0 - p) * amp(a) * b.sin().powi(2)
}

fn ab1b2_s(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    let f = 8.0 * SQRT_2 * (1.0 - p) * a * a * s * c;
    let n =
        4.0 * (a * a * (c * c + (2.0 * p + 2.0 * p * p - 1.0) * s * s) + (1.0 - p) * (1.0 - a * a));
    f.max(n)
}

fn ab1b2_e(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    2.0 * ((1.0 - p) * a * a * s * c).max(0.0)
}

fn ab1b2_c(a: f64, b: f64, p: f64) -> f64 {
    let (s, c) = b.sin_cos();
    2.0 * (1.0 - p) * a * a * s * c
}

/// Coherence identities between scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SumRule {
    /// `C²(ABC_I) + C²(ABC_II) = 4(1−P)α²(1−α²)`.
    CharlieSquares,
    /// `C(AB_IC_I) + C(AB_IIC_II) = 2(1−P)α√(1−α²)`.
    PairedLinear,
    /// `C²` of the four cross-observer combinations `= 4(1−P)²α²(1−α²)`.
    CrossSquares,
    /// `C²(AB_IC_I) + C²(AB_IIC_II) + (1−α²)[C²(AB_IB_II) + C²(AC_IC_II)] = 4(1−P)²α²(1−α²)`.
    WeightedSameObserver,
}

impl SumRule {
    pub const ALL: [SumRule; 4] = [
        SumRule::CharlieSquares,
        SumRule::PairedLinear,
        SumRule::CrossSquares,
        SumRule::WeightedSameObserver,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SumRule::CharlieSquares => "charlie-squares",
            SumRule::PairedLinear => "paired-linear",
            SumRule::CrossSquares => "cross-squares",
            SumRule::WeightedSameObserver => "weighted-same-observer",
        }
    }

    pub fn rhs(self, alpha: f64, p: f64) -> f64 {
        let a2 = alpha * alpha;
        match self {
            SumRule::CharlieSquares => 4.0 * (1.0 - p) * a2 * (1.0 - a2),
            SumRule::PairedLinear => 2.0 * (1.0 - p) * amp(alpha),
            SumRule::CrossSquares | SumRule::WeightedSameObserver => {
                4.0 * (1.0 - p).powi(2) * a2 * (1.0 - a2)
            }
        }
    }

    /// Left-hand side given a coherence lookup.
    pub fn lhs(self, alpha: f64, mut coh: impl FnMut(Scenario) -> Result<f64>) -> Result<f64> {
        use Scenario::*;
        let sq = |v: f64| v * v;
        Ok(match self {
            SumRule::CharlieSquares => sq(coh(AbcI)?) + sq(coh(AbcII)?),
            SumRule::PairedLinear => coh(ABiCi)? + coh(ABiiCii)?,
            SumRule::CrossSquares => {
                sq(coh(ABiCi)?) + sq(coh(ABiiCii)?) + sq(coh(ABiCii)?) + sq(coh(ABiiCi)?)
            }
            SumRule::WeightedSameObserver => {
                sq(coh(ABiCi)?)
                    + sq(coh(ABiiCii)?)
                    + (1.0 - alpha * alpha) * (sq(coh(ABiBii)?) + sq(coh(ACiCii)?))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumRuleResidual {
    pub rule: SumRule,
    pub lhs_numeric: f64,
    pub lhs_catalog: f64,
    pub rhs: f64,
    pub residual_numeric: f64,
    pub residual_catalog: f64,
}

/// Residuals `|LHS − RHS|` of every sum rule at one point, with coherences
/// from the numeric pipeline and from the catalog.
pub fn cf_sum_rules(alpha: f64, beta: f64, p: f64) -> Result<Vec<SumRuleResidual>> {
    let mut numeric = Vec::with_capacity(Scenario::ALL.len());
    for s in Scenario::ALL {
        numeric.push((s, ScenarioState::new(alpha, beta, s)?.measures(p)?.triple.c));
    }
    let numeric_c = |s: Scenario| -> Result<f64> {
        Ok(numeric
            .iter()
            .find(|(k, _)| *k == s)
            .map(|(_, c)| *c)
            .expect("all scenarios"))
    };
    let catalog_c = |s: Scenario| cf_eval(s, Measure::C, alpha, beta, p);

    SumRule::ALL
        .into_iter()
        .map(|rule| {
            let lhs_numeric = rule.lhs(alpha, numeric_c)?;
            let lhs_catalog = rule.lhs(alpha, catalog_c)?;
            let rhs = rule.rhs(alpha, p);
            Ok(SumRuleResidual {
                rule,
                lhs_numeric,
                lhs_catalog,
                rhs,
                residual_numeric: (lhs_numeric - rhs).abs(),
                residual_catalog: (lhs_catalog - rhs).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn catalog_covers_every_scenario_and_measure() {
        for s in Scenario::ALL {
            for m in Measure::ALL {
                assert!(cf_covers(s, m), "{s}/{m}");
            }
        }
    }

    #[test]
    fn spot_values() {
        let a = FRAC_1_SQRT_2;
        let c = cf_eval(Scenario::AbcI, Measure::C, a, FRAC_PI_4, 0.0).unwrap();
        assert!((c - FRAC_1_SQRT_2).abs() < 1e-15);
        let e = cf_eval(Scenario::ABiiCii, Measure::E, a, FRAC_PI_4, 0.0).unwrap();
        assert!((e - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherence_branches_vanish_at_full_decay() {
        for s in Scenario::ALL {
            for m in [Measure::E, Measure::C] {
                let v = cf_eval(s, m, 0.6, 0.5, 1.0).unwrap();
                assert!(v.abs() < 1e-15, "{s}/{m} = {v}");
            }
        }
    }

    #[test]
    fn mirror_scenarios_share_formulas() {
        for m in Measure::ALL {
            let x = cf_eval(Scenario::ABiCii, m, 0.5, 0.3, 0.2).unwrap();
            let y = cf_eval(Scenario::ABiiCi, m, 0.5, 0.3, 0.2).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn charlie_rule_without_damping() {
        let rules = cf_sum_rules(FRAC_1_SQRT_2, 0.37, 0.0).unwrap();
        let r = rules
            .iter()
            .find(|r| r.rule == SumRule::CharlieSquares)
            .unwrap();
        assert!((r.lhs_numeric - 1.0).abs() < 1e-14);
        assert!(r.residual_numeric < 1e-14);
    }

    #[test]
    fn paired_linear_rule_at_half_decay() {
        let rules = cf_sum_rules(FRAC_1_SQRT_2, FRAC_PI_6, 0.5).unwrap();
        let r = rules
            .iter()
            .find(|r| r.rule == SumRule::PairedLinear)
            .unwrap();
        assert!((r.lhs_numeric - 0.5).abs() < 1e-14);
        assert!((r.rhs - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weighted_rule_leaves_a_residual() {
        let rules = cf_sum_rules(FRAC_1_SQRT_2, FRAC_PI_6, 0.0).unwrap();
        let r = rules
            .iter()
            .find(|r| r.rule == SumRule::WeightedSameObserver)
            .unwrap();
        assert!(r.residual_numeric > 1e-3, "{r:?}");
    }
}
