//! Arbitrary-precision numeric integration of the oscillatory integrand,
//! checked against the exact values.
//!
//! ```text
//! cargo run --release --example quadrature [digits]
//! ```

use std::time::Instant;

use sincprod::quadrature::{integrate_with, QuadratureConfig, TailMethod};
use sincprod::rational::to_scientific;
use sincprod::{evaluate, family_i, family_j, family_k, Coefficients, Rational};

fn run(name: &str, c: &Coefficients, config: &QuadratureConfig) -> sincprod::Result<()> {
    let exact = evaluate(c)?.value.coefficient;
    let start = Instant::now();
    match integrate_with(c, config) {
        Ok(r) => {
            let error = Rational::from(r.estimate.to_rational() - &exact).abs();
            println!(
                "{name:<10} {:?}: {}  actual error {}, bound {}, {} panels, {:.1?}",
                config.tail,
                r.estimate.to_decimal(config.digits),
                to_scientific(&error, 2),
                to_scientific(&r.error_bound.to_rational(), 2),
                r.intervals_used,
                start.elapsed()
            );
        }
        Err(e) => println!("{name:<10} {:?}: {e}", config.tail),
    }
    Ok(())
}

fn main() -> sincprod::Result<()> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let contour = QuadratureConfig::new(digits);

    run("J_1", &family_j(1), &contour)?;
    run("J_7", &family_j(7), &contour)?;
    run("K_3", &family_k(3), &contour)?;
    run("I_7(2)", &family_i(&Rational::from(2), 7)?, &contour)?;

    // other tail treatments
    let blocks = QuadratureConfig::new(digits.min(20)).with_tail(TailMethod::AlternatingBlocks);
    run("J_0", &family_j(0), &blocks)?;
    let truncate = QuadratureConfig::new(12).with_tail(TailMethod::Truncate);
    run("J_7", &family_j(7), &truncate)?;
    run("J_1", &family_j(1), &truncate)?;
    Ok(())
}
