//! S, E and C for all eight scenarios at one parameter point.

use ghz_unruh::engine::numeric_measures;
use ghz_unruh::measures::SVETLICHNY_BOUND;
use ghz_unruh::unruh::Scenario;

fn main() -> ghz_unruh::Result<()> {
    let (alpha, beta, p) = (std::f64::consts::FRAC_1_SQRT_2, 0.4, 0.2);
    println!("alpha={alpha:.4} beta={beta} p={p}");
    println!("{:<10} {:>9} {:>9} {:>9}  notes", "scenario", "S", "E", "C");
    for scenario in Scenario::ALL {
        let m = numeric_measures(alpha, beta, p, scenario)?;
        let mut notes = Vec::new();
        if m.triple.s > SVETLICHNY_BOUND {
            notes.push("nonlocal");
        }
        if !m.is_x_state() {
            notes.push("not X-shaped, S/E are lower bounds");
        }
        println!(
            "{:<10} {:>9.5} {:>9.5} {:>9.5}  {}",
            scenario.name(),
            m.triple.s,
            m.triple.e_gte,
            m.triple.c,
            notes.join(", ")
        );
    }
    Ok(())
}
