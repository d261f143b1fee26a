//! Decay probability p*(β) at which nonlocality dies.

use ghz_unruh::boundary::{find_boundary, Crossing};
use ghz_unruh::measures::Measure;
use ghz_unruh::unruh::Scenario;

fn main() -> ghz_unruh::Result<()> {
    let alpha = std::f64::consts::FRAC_1_SQRT_2;
    for scenario in [Scenario::AbcI, Scenario::ABiCi] {
        let result = find_boundary(scenario, Measure::S, alpha, 9)?;
        println!("{scenario}, S = {}:", result.threshold);
        for pt in &result.curve {
            match pt.crossing {
                Crossing::At { p_star, value } => {
                    println!(
                        "  beta={:.4}  p*={p_star:.7}  S(p*)={value:.9}  ({:?})",
                        pt.beta, pt.method
                    )
                }
                Crossing::None => println!("  beta={:.4}  no crossing in [0,1)", pt.beta),
            }
        }
    }
    Ok(())
}
