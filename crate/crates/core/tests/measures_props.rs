mod common;

use common::*;
use ghz_unruh::closedform::cf_eval;
use ghz_unruh::engine::{numeric_measures, ScenarioState};
use ghz_unruh::measures::{coherence_l1, extract_xstate, gte, gtn, Measure, XState};
use ghz_unruh::qcore::{DensityOperator, ModeRegister};
use ghz_unruh::unruh::Scenario;
use num_complex::Complex64;
use proptest::prelude::*;

/// A random X-state with positive 2×2 blocks.
fn xstate() -> impl Strategy<Value = XState> {
    (
        prop::collection::vec(0.0f64..1.0, 8),
        prop::collection::vec(0.0f64..1.0, 4),
        prop::collection::vec(0.0f64..std::f64::consts::TAU, 4),
    )
        .prop_map(|(w, r, phase)| {
            let total: f64 = w.iter().sum::<f64>().max(1e-9);
            let d: [f64; 4] = std::array::from_fn(|i| w[i] / total);
            let e: [f64; 4] = std::array::from_fn(|i| w[i + 4] / total);
            let f = std::array::from_fn(|i| {
                Complex64::from_polar(r[i] * (d[i] * e[i]).sqrt(), phase[i])
            });
            XState { d, e, f }
        })
}

fn as_density(x: &XState) -> DensityOperator {
    DensityOperator::new(ModeRegister::new(ABC.to_vec()).unwrap(), x.to_matrix()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn measures_ignore_phases(x in xstate(), phases in prop::collection::vec(0.0f64..6.3, 4)) {
        let mut y = x;
        for (f, &phase) in y.f.iter_mut().zip(&phases) {
            *f = Complex64::from_polar(f.norm(), phase);
        }
        prop_assert!((gtn(&x) - gtn(&y)).abs() < 1e-12);
        prop_assert!((gte(&x) - gte(&y)).abs() < 1e-12);
        prop_assert!((coherence_l1(&as_density(&x)) - coherence_l1(&as_density(&y))).abs() < 1e-12);
    }

    #[test]
    fn coherence_is_twice_anti_diagonal(x in xstate()) {
        let rho = as_density(&x);
        let sum: f64 = x.f.iter().map(|f| f.norm()).sum();
        prop_assert!((coherence_l1(&rho) - 2.0 * sum).abs() < 1e-14);
        let back = extract_xstate(&rho).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn entanglement_bounded_by_coherence(x in xstate()) {
        prop_assert!(gte(&x) <= coherence_l1(&as_density(&x)) + 1e-14);
        prop_assert!(gtn(&x) >= 0.0);
    }

    #[test]
    fn charlie_second_region_entanglement_equals_coherence(a in unit(), b in beta(), p in unit()) {
        let m = numeric_measures(a, b, p, Scenario::AbcII).unwrap();
        prop_assert!((m.triple.e_gte - m.triple.c).abs() < 1e-12);
    }

    #[test]
    fn coherence_decreases_with_decay(a in unit(), b in beta(), p in 0.0f64..0.99, dp in 0.001f64..0.01) {
        for scenario in Scenario::ALL {
            let st = ScenarioState::new(a, b, scenario).unwrap();
            let c0 = st.measures(p).unwrap().triple.c;
            let c1 = st.measures((p + dp).min(1.0)).unwrap().triple.c;
            prop_assert!(c1 <= c0 + 1e-14, "{scenario}: {c0} -> {c1}");
        }
    }

    #[test]
    fn closed_form_coherences_match(a in unit(), b in beta(), p in unit()) {
        for scenario in Scenario::ALL {
            let num = numeric_measures(a, b, p, scenario).unwrap().triple.c;
            let cf = cf_eval(scenario, Measure::C, a, b, p).unwrap();
            prop_assert!((num - cf).abs() < 1e-10, "{scenario}: {num} vs {cf}");
        }
    }

    #[test]
    fn charlie_only_case_matches_closed_forms(a in unit(), b in beta(), p in unit()) {
        for scenario in [Scenario::AbcI, Scenario::AbcII] {
            let st = ScenarioState::new(a, b, scenario).unwrap();
            let m = st.measures(p).unwrap();
            for measure in [Measure::E, Measure::C] {
                let cf = cf_eval(scenario, measure, a, b, p).unwrap();
                prop_assert!((m.triple.get(measure) - cf).abs() < 1e-10, "{scenario} {measure}");
            }
            // The closed-form S keeps the sign of N; the engine uses |N|.
            let x = extract_xstate(&st.damped(p).unwrap()).unwrap();
            let f_branch = 8.0 * std::f64::consts::SQRT_2 * x.max_coherence();
            let signed = f_branch.max(4.0 * x.svetlichny_n());
            let cf = cf_eval(scenario, Measure::S, a, b, p).unwrap();
            prop_assert!((signed - cf).abs() < 1e-10, "{scenario} S: {signed} vs {cf}");
            prop_assert!((m.triple.s - f_branch.max(4.0 * x.svetlichny_n().abs())).abs() < 1e-12);
        }
    }
}
