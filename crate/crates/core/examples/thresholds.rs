//! Where does 1 + 1/3 + 1/5 + … first pass each integer budget?
//!
//! `I_n(b)` stays at π/2 exactly while `1/3 + … + 1/(2n+1) ≤ b − 1`, so
//! these indices are where the plateau breaks.
//!
//! ```text
//! cargo run --example thresholds
//! ```

use std::time::Instant;

use sincprod::rational::to_scientific;
use sincprod::sums::{first_violation_detailed, OddReciprocals, DEFAULT_ITERATION_CAP};
use sincprod::Rational;

fn main() -> sincprod::Result<()> {
    println!("{:>6} {:>6}  {:>24}  {:>24}", "budget", "n", "sum to n-1", "sum to n");
    for budget in 1..=5 {
        let start = Instant::now();
        let v = first_violation_detailed(&Rational::from(budget), OddReciprocals::from(0), DEFAULT_ITERATION_CAP)?;
        println!(
            "{budget:>6} {:>6}  {:>24}  {:>24}   ({:.1?})",
            v.index,
            to_scientific(&v.below, 18),
            to_scientific(&v.above, 18),
            start.elapsed()
        );
    }
    Ok(())
}
