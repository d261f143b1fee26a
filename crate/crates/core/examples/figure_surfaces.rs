//! Writes the CSV surfaces behind all seven figures.
//!
//! ```text
//! cargo run --example figure_surfaces -- /tmp/figs 41
//! ```

use std::path::PathBuf;

use ghz_unruh::figure::{emit_figure_data, figure_surfaces};

fn main() -> ghz_unruh::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ghz-unruh-figures"));
    let resolution = args.next().and_then(|r| r.parse().ok()).unwrap_or(41);
    let alpha = std::f64::consts::FRAC_1_SQRT_2;

    for figure in 1..=7 {
        for s in figure_surfaces(figure, alpha, resolution, 0)? {
            println!(
                "{:<10} {} {}  max={:.6}",
                s.panel.file_name(),
                s.panel.scenario,
                s.panel.measure,
                s.max()
            );
        }
        emit_figure_data(figure, alpha, resolution, &dir, 0)?;
    }
    println!("written to {}", dir.display());
    Ok(())
}
