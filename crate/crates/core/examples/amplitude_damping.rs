//! Amplitude damping on the accelerated modes, checked against the
//! channel laws.

use ghz_unruh::channels::{amplitude_damping_kraus, DampingParams};
use ghz_unruh::engine::ScenarioState;
use ghz_unruh::measures::extract_xstate;
use ghz_unruh::qcore::{validate_density, CMatrix, POSITIVITY_TOL};
use ghz_unruh::unruh::Scenario;

fn main() -> ghz_unruh::Result<()> {
    let k = amplitude_damping_kraus(DampingParams::new(0.3)?);
    let dev = k.completeness().max_abs_diff(&CMatrix::identity(2));
    println!("Kraus completeness deviation: {dev:.2e}");

    let (alpha, beta) = (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_PI_6);
    for scenario in [Scenario::AbcI, Scenario::ABiCi] {
        let state = ScenarioState::new(alpha, beta, scenario)?;
        println!("\n{scenario} (damped modes: {:?})", scenario.damped_modes());
        for p in [0.0, 0.3, 0.7, 1.0] {
            let rho = state.damped(p)?;
            let report = validate_density(&rho, POSITIVITY_TOL);
            let x = extract_xstate(&rho)?;
            println!(
                "  p={p:.1}  d={:.5?}  e={:.5?}  |f1|={:.6}  valid={}",
                x.d,
                x.e,
                x.f[0].norm(),
                report.passed()
            );
        }
    }
    Ok(())
}
