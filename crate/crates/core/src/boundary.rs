//! Sudden-death boundaries: the first decay probability at which a measure
//! stops exceeding its classical threshold (S = 4, E = 0).

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::engine::ScenarioState;
use crate::error::{Error, Result};
use crate::measures::{Measure, SVETLICHNY_BOUND};
use crate::sweep::GridAxis;
use crate::unruh::Scenario;

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-13;
/// Guaranteed accuracy of a reported crossing in `p`.
pub const P_TOL: f64 = 1e-6;
/// A value counts as above threshold only beyond this margin.
pub const ABOVE_MARGIN: f64 = 1e-12;
/// |value − threshold| at p = 0 below which the state sits on the threshold.
pub const TOUCH_TOL: f64 = 1e-9;
pub const COARSE_SAMPLES: usize = 65;
pub const SCAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    /// Value was already at or below threshold at p = 0.
    Initial,
    /// Coarse samples were monotone; bisection within their bracket.
    Bisection,
    /// Coarse samples were not monotone; fine scan then bisection.
    ScanBisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Crossing {
    At {
        p_star: f64,
        value: f64,
    },
    /// Never above threshold, or above it on all of [0, 1).
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub beta: f64,
    pub crossing: Crossing,
    pub method: SearchMethod,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryResult {
    pub scenario: Scenario,
    pub measure: Measure,
    pub alpha: f64,
    pub threshold: f64,
    pub p_tol: f64,
    pub curve: Vec<BoundaryPoint>,
}

pub fn threshold(measure: Measure) -> Result<f64> {
    match measure {
        Measure::S => Ok(SVETLICHNY_BOUND),
        Measure::E => Ok(0.0),
        Measure::C => Err(Error::Config(
            "boundaries are defined for S and E only".into(),
        )),
    }
}

/// Locates the first crossing of `value(p)` down through `threshold` on [0, 1].
pub fn first_crossing(
    mut value: impl FnMut(f64) -> Result<f64>,
    threshold: f64,
) -> Result<(Crossing, SearchMethod, (f64, f64))> {
    let mut above = |p: f64| -> Result<bool> { Ok(value(p)? - threshold > ABOVE_MARGIN) };

    if !above(0.0)? {
        return Ok((Crossing::None, SearchMethod::Initial, (0.0, 0.0)));
    }

    let coarse = GridAxis::new(0.0, 1.0, COARSE_SAMPLES);
    let flags = (0..COARSE_SAMPLES)
        .map(|i| above(coarse.value(i)))
        .collect::<Result<Vec<_>>>()?;
    let first_below = flags.iter().position(|&f| !f);
    let monotone = match first_below {
        Some(k) => flags[k..].iter().all(|&f| !f),
        None => true,
    };

    let (lo, hi, method) = if monotone {
        match first_below {
            Some(k) => (
                coarse.value(k - 1),
                coarse.value(k),
                SearchMethod::Bisection,
            ),
            None => return Ok((Crossing::None, SearchMethod::Bisection, (0.0, 1.0))),
        }
    } else {
        let steps = (1.0 / SCAN_STEP).round() as usize + 1;
        let fine = GridAxis::new(0.0, 1.0, steps);
        let mut prev = true;
        let mut found = None;
        for i in 1..steps {
            let cur = above(fine.value(i))?;
            if prev && !cur {
                found = Some((fine.value(i - 1), fine.value(i)));
                break;
            }
            prev = cur;
        }
        match found {
            Some((lo, hi)) => (lo, hi, SearchMethod::ScanBisection),
            None => return Ok((Crossing::None, SearchMethod::ScanBisection, (0.0, 1.0))),
        }
    };

    let bracket = (lo, hi);
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_star = 0.5 * (lo + hi);
    if p_star >= 1.0 - P_TOL {
        return Ok((Crossing::None, method, bracket));
    }
    Ok((
        Crossing::At {
            p_star,
            value: f64::NAN,
        },
        method,
        bracket,
    ))
}

fn boundary_at(
    scenario: Scenario,
    measure: Measure,
    alpha: f64,
    beta: f64,
) -> Result<BoundaryPoint> {
    let thr = threshold(measure)?;
    let state = ScenarioState::new(alpha, beta, scenario)?;
    let value = |p: f64| -> Result<f64> { Ok(state.measures(p)?.triple.get(measure)) };

    let v0 = value(0.0)?;
    let (mut crossing, method, bracket) = first_crossing(value, thr)?;
    if method == SearchMethod::Initial && (v0 - thr).abs() <= TOUCH_TOL {
        crossing = Crossing::At {
            p_star: 0.0,
            value: v0,
        };
    }
    if let Crossing::At { p_star, value: v } = &mut crossing {
        *v = state.measures(*p_star)?.triple.get(measure);
    }
    Ok(BoundaryPoint {
        beta,
        crossing,
        method,
        bracket,
    })
}

/// Crossing curve `p*(β)` over `beta_samples` evenly spaced β in [0, π/4].
pub fn find_boundary(
    scenario: Scenario,
    measure: Measure,
    alpha: f64,
    beta_samples: usize,
) -> Result<BoundaryResult> {
    let thr = threshold(measure)?;
    if beta_samples == 0 {
        return Err(Error::Config("need at least one beta sample".into()));
    }
    let betas = if beta_samples == 1 {
        vec![0.0]
    } else {
        GridAxis::new(0.0, FRAC_PI_4, beta_samples).values()
    };
    let curve = betas
        .into_iter()
        .map(|b| boundary_at(scenario, measure, alpha, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryResult {
        scenario,
        measure,
        alpha,
        threshold: thr,
        p_tol: P_TOL,
        curve,
    })
}

/// Boundary at a single β.
pub fn find_boundary_at(
    scenario: Scenario,
    measure: Measure,
    alpha: f64,
    beta: f64,
) -> Result<BoundaryPoint> {
    boundary_at(scenario, measure, alpha, beta)
}

impl BoundaryResult {
    pub fn to_csv(&self) -> String {
        use crate::sweep::fmt_f64;
        let mut out = String::from("scenario,measure,alpha,beta,p_star,value,method\n");
        for pt in &self.curve {
            let (p, v) = match pt.crossing {
                Crossing::At { p_star, value } => (fmt_f64(p_star), fmt_f64(value)),
                Crossing::None => ("none".to_string(), "none".to_string()),
            };
            let method = match pt.method {
                SearchMethod::Initial => "initial",
                SearchMethod::Bisection => "bisection",
                SearchMethod::ScanBisection => "scan-bisection",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.scenario,
                self.measure,
                fmt_f64(self.alpha),
                fmt_f64(pt.beta),
                p,
                v,
                method
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn linear_crossing() {
        let (c, m, _) = first_crossing(|p| Ok(1.0 - 2.0 * p), 0.0).unwrap();
        assert_eq!(m, SearchMethod::Bisection);
        match c {
            Crossing::At { p_star, .. } => assert!((p_star - 0.5).abs() < 1e-12),
            Crossing::None => panic!("expected crossing"),
        }
    }

    #[test]
    fn non_monotone_falls_back_to_scan() {
        // Dips below zero on (0.2, 0.3) only: the coarse grid sees it, then
        // rises again.
        let f = |p: f64| Ok(((p - 0.25).abs() - 0.05).max(-1.0));
        let (c, m, _) = first_crossing(f, 0.0).unwrap();
        assert_eq!(m, SearchMethod::ScanBisection);
        match c {
            Crossing::At { p_star, .. } => assert!((p_star - 0.2).abs() < 1e-9),
            Crossing::None => panic!("expected crossing"),
        }
    }

    #[test]
    fn never_above() {
        let (c, m, _) = first_crossing(|_| Ok(-1.0), 0.0).unwrap();
        assert_eq!((c, m), (Crossing::None, SearchMethod::Initial));
    }

    #[test]
    fn always_above() {
        let (c, _, _) = first_crossing(|_| Ok(1.0), 0.0).unwrap();
        assert_eq!(c, Crossing::None);
    }

    #[test]
    fn ghz_nonlocality_dies_at_half() {
        let pt = find_boundary_at(Scenario::AbcI, Measure::S, FRAC_1_SQRT_2, 0.0).unwrap();
        match pt.crossing {
            Crossing::At { p_star, value } => {
                assert!((p_star - 0.5).abs() < 1e-6);
                assert!((value - 4.0).abs() < 1e-6);
            }
            Crossing::None => panic!("expected crossing"),
        }
    }

    #[test]
    fn maximal_acceleration_touches_bound() {
        let pt = find_boundary_at(Scenario::AbcI, Measure::S, FRAC_1_SQRT_2, FRAC_PI_4).unwrap();
        assert_eq!(pt.method, SearchMethod::Initial);
        match pt.crossing {
            Crossing::At { p_star, value } => {
                assert_eq!(p_star, 0.0);
                assert!((value - 4.0).abs() < 1e-9);
            }
            Crossing::None => panic!("expected touching point"),
        }
    }

    #[test]
    fn entanglement_survives_until_full_decay() {
        for beta in [0.0, 0.3, 0.7] {
            let pt = find_boundary_at(Scenario::AbcI, Measure::E, FRAC_1_SQRT_2, beta).unwrap();
            assert_eq!(pt.crossing, Crossing::None, "beta={beta}");
        }
    }

    #[test]
    fn coherence_has_no_threshold() {
        assert!(find_boundary(Scenario::AbcI, Measure::C, 0.5, 3).is_err());
    }
}
