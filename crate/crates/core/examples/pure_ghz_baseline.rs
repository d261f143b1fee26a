//! Measures of the GHZ-like state α|000⟩ + √(1−α²)|111⟩ with no
//! acceleration and no decay.

use ghz_unruh::measures::{extract_xstate, gte, gtn};
use ghz_unruh::qcore::{validate_density, DensityOperator, POSITIVITY_TOL};
use ghz_unruh::unruh::{build_ghz, GhzParams};

fn main() -> ghz_unruh::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10}", "alpha", "S", "E", "C");
    for alpha in [0.0, 0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.9, 1.0] {
        let rho = DensityOperator::from_pure(&build_ghz(GhzParams::new(alpha)?));
        assert!(validate_density(&rho, POSITIVITY_TOL).passed());
        let x = extract_xstate(&rho)?;
        let c = ghz_unruh::measures::coherence_l1(&rho);
        println!(
            "{alpha:>6.3} {:>10.6} {:>10.6} {:>10.6}",
            gtn(&x),
            gte(&x),
            c
        );
    }
    // S exceeds the local bound 4 once 8√2·α√(1−α²) > 4.
    Ok(())
}
