//! Coherence identities across scenarios, evaluated from numeric coherences.

use ghz_unruh::audit::check_sum_rules;
use ghz_unruh::closedform::cf_sum_rules;

fn main() -> ghz_unruh::Result<()> {
    for r in cf_sum_rules(0.6, 0.5, 0.25)? {
        println!(
            "{:<24} lhs={:.12} rhs={:.12} residual={:.2e}",
            r.rule.name(),
            r.lhs_numeric,
            r.rhs,
            r.residual_numeric
        );
    }
    println!();
    print!("{}", check_sum_rules()?.to_text());
    Ok(())
}
