//! Compares the closed forms with the numeric pipeline on a coarse
//! grid and lists the disagreements.

use ghz_unruh::audit::{run_audit, DEFAULT_AUDIT_TOL};
use ghz_unruh::sweep::{GridAxis, SweepConfig};
use ghz_unruh::unruh::Scenario;

fn main() -> ghz_unruh::Result<()> {
    let cfg = SweepConfig {
        beta: GridAxis::new(0.0, std::f64::consts::FRAC_PI_4, 21),
        p: GridAxis::new(0.0, 1.0, 21),
        scenarios: Scenario::ALL.to_vec(),
        ..SweepConfig::default()
    };
    let report = run_audit(&cfg, DEFAULT_AUDIT_TOL)?;
    print!("{}", report.to_text());
    Ok(())
}
