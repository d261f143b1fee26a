//! First-principles pipeline: GHZ state → Rindler split → reduction → damping → measures.
//!
//! States are reduced to three modes before damping. The channel is trace
//! preserving, so damping a mode and then discarding it is the same as
//! discarding it, and the order does not change the result.

use serde::Serialize;

use crate::channels::{apply_damping, DampingParams};
use crate::error::Result;
use crate::measures::{coherence_l1, gte, gtn, x_part, MeasureTriple, X_PATTERN_TOL};
use crate::qcore::DensityOperator;
use crate::unruh::{scenario_reduced_state, GhzParams, Scenario, UnruhParams};

/// How a result was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Numeric,
    ClosedForm,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Numeric => "numeric",
            Provenance::ClosedForm => "closedform",
        }
    }
}

/// The undamped three-mode state of a scenario at fixed (α, β); damping can
/// then be applied for many values of `p`.
#[derive(Debug, Clone)]
pub struct ScenarioState {
    scenario: Scenario,
    reduced: DensityOperator,
}

impl ScenarioState {
    pub fn new(alpha: f64, beta: f64, scenario: Scenario) -> Result<Self> {
        let reduced =
            scenario_reduced_state(GhzParams::new(alpha)?, UnruhParams::new(beta)?, scenario)?;
        Ok(Self { scenario, reduced })
    }

    pub fn reduced(&self) -> &DensityOperator {
        &self.reduced
    }

    pub fn damped(&self, p: f64) -> Result<DensityOperator> {
        apply_damping(
            &self.reduced,
            &self.scenario.damped_modes(),
            DampingParams::new(p)?,
        )
    }

    pub fn measures(&self, p: f64) -> Result<NumericMeasures> {
        evaluate(&self.damped(p)?)
    }
}

/// Measures of one damped scenario state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericMeasures {
    pub triple: MeasureTriple,
    /// Largest entry outside the X pattern. Above [`X_PATTERN_TOL`], `s` and
    /// `e_gte` were computed from the X part of the state and are lower bounds.
    pub off_x_residual: f64,
}

impl NumericMeasures {
    pub fn is_x_state(&self) -> bool {
        self.off_x_residual <= X_PATTERN_TOL
    }
}

pub fn evaluate(rho: &DensityOperator) -> Result<NumericMeasures> {
    let (x, off_x_residual) = x_part(rho)?;
    Ok(NumericMeasures {
        triple: MeasureTriple {
            s: gtn(&x),
            e_gte: gte(&x),
            c: coherence_l1(rho),
        },
        off_x_residual,
    })
}

/// Damped three-mode state of `scenario` at (α, β, p).
pub fn damped_scenario_state(
    alpha: f64,
    beta: f64,
    p: f64,
    scenario: Scenario,
) -> Result<DensityOperator> {
    ScenarioState::new(alpha, beta, scenario)?.damped(p)
}

pub fn numeric_measures(
    alpha: f64,
    beta: f64,
    p: f64,
    scenario: Scenario,
) -> Result<NumericMeasures> {
    ScenarioState::new(alpha, beta, scenario)?.measures(p)
}
