mod common;

use common::*;
use ghz_unruh::qcore::{partial_trace, DensityOperator, ModeLabel};
use ghz_unruh::unruh::{
    build_ghz, scenario_reduced_state, unruh_expand, GhzParams, Scenario, UnruhParams,
};
use proptest::prelude::*;

use ModeLabel::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansion_preserves_norm(a in unit(), b in beta()) {
        let psi = build_ghz(GhzParams::new(a).unwrap());
        let u = UnruhParams::new(b).unwrap();
        let one = unruh_expand(&psi, C, u).unwrap();
        prop_assert!((one.norm_sqr() - 1.0).abs() < 1e-14);
        let two = unruh_expand(&one, B, u).unwrap();
        prop_assert!((two.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_acceleration_embeds_the_original(a in unit()) {
        let psi = build_ghz(GhzParams::new(a).unwrap());
        let split = unruh_expand(&psi, C, UnruhParams::new(0.0).unwrap()).unwrap();
        for (bits, amp) in [("000", "0000"), ("111", "1110")] {
            prop_assert_eq!(psi.amplitude(bits).unwrap(), split.amplitude(amp).unwrap());
        }
        let back = partial_trace(&DensityOperator::from_pure(&split), &[A, B, CI]).unwrap();
        let orig = DensityOperator::from_pure(&psi);
        prop_assert!(back.matrix().max_abs_diff(orig.matrix()) < 1e-15);
    }

    #[test]
    fn expansion_order_does_not_matter(a in unit(), b in beta()) {
        let psi = build_ghz(GhzParams::new(a).unwrap());
        let u = UnruhParams::new(b).unwrap();
        let bc = unruh_expand(&unruh_expand(&psi, B, u).unwrap(), C, u).unwrap();
        let cb = unruh_expand(&unruh_expand(&psi, C, u).unwrap(), B, u).unwrap();
        prop_assert_eq!(bc.register(), cb.register());
        for (x, y) in bc.amplitudes().iter().zip(cb.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn mirror_scenarios_agree(a in unit(), b in beta()) {
        let g = GhzParams::new(a).unwrap();
        let u = UnruhParams::new(b).unwrap();
        let x = scenario_reduced_state(g, u, Scenario::ABiCii).unwrap();
        let y = scenario_reduced_state(g, u, Scenario::ABiiCi).unwrap();
        // B and C enter the GHZ state symmetrically, so the two reduced states
        // are related by swapping the last two qubits.
        for r in 0..8usize {
            for c in 0..8usize {
                let sw = |i: usize| (i & 0b100) | ((i & 1) << 1) | ((i >> 1) & 1);
                prop_assert!((x.matrix()[(r, c)] - y.matrix()[(sw(r), sw(c))]).norm() < 1e-15);
            }
        }
    }
}
