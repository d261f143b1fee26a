//! Splits Charlie's mode into its two Rindler modes and prints the
//! amplitudes of the four-mode state.

use ghz_unruh::qcore::ModeLabel;
use ghz_unruh::unruh::{build_ghz, unruh_expand, GhzParams, UnruhParams};

fn main() -> ghz_unruh::Result<()> {
    let alpha = std::f64::consts::FRAC_1_SQRT_2;
    let beta = std::f64::consts::FRAC_PI_6;
    let ghz = build_ghz(GhzParams::new(alpha)?);
    let split = unruh_expand(&ghz, ModeLabel::C, UnruhParams::new(beta)?)?;

    let labels: Vec<&str> = split
        .register()
        .modes()
        .iter()
        .map(|m| m.as_str())
        .collect();
    println!("register: {}", labels.join(" "));
    let n = split.register().len();
    for (i, a) in split.amplitudes().iter().enumerate() {
        if a.norm() > 0.0 {
            println!("|{:0n$b}⟩  {:+.6}", i, a.re, n = n);
        }
    }
    println!("norm² = {:.15}", split.norm_sqr());

    // Splitting Bob as well gives the five-mode state used when both accelerate.
    let both = unruh_expand(&split, ModeLabel::B, UnruhParams::new(beta)?)?;
    let labels: Vec<&str> = both.register().modes().iter().map(|m| m.as_str()).collect();
    println!(
        "after splitting B: {} ({} amplitudes)",
        labels.join(" "),
        both.amplitudes().len()
    );
    Ok(())
}
