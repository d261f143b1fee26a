//! A full 101×101 sweep with both engines, timed on one and on all workers.

use std::time::Instant;

use ghz_unruh::sweep::{rows_to_csv, sweep_rows, EngineChoice, SweepConfig};
use ghz_unruh::unruh::Scenario;

fn main() -> ghz_unruh::Result<()> {
    let mut cfg = SweepConfig {
        scenarios: vec![Scenario::AbcII],
        engine: EngineChoice::Both,
        workers: 1,
        ..SweepConfig::default()
    };
    let t = Instant::now();
    let serial = rows_to_csv(&sweep_rows(&cfg)?);
    let t_serial = t.elapsed();

    cfg.workers = 0;
    let t = Instant::now();
    let parallel = rows_to_csv(&sweep_rows(&cfg)?);
    let t_parallel = t.elapsed();

    println!("rows: {}", serial.lines().count() - 1);
    println!("1 worker:    {t_serial:?}");
    println!("all workers: {t_parallel:?}");
    println!("identical output: {}", serial == parallel);
    Ok(())
}
