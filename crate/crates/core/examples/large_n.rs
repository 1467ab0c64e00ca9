//! The first overshoot closed form at n = 3091, where `I_n(5)` first drops
//! below π/2. The exact denominator has millions of digits.
//!
//! ```text
//! cargo run --release --example large_n
//! ```

use std::time::Instant;

use sincprod::rational::to_scientific;
use sincprod::{classify, evaluate, family_i, Rational};

fn main() -> sincprod::Result<()> {
    for n in [3090, 3091] {
        let c = family_i(&Rational::from(5), n)?;
        let regime = classify(&c);
        let start = Instant::now();
        let e = evaluate(&c)?;
        let deficit = e.value.deficit_from_half();
        println!("I_{n}(5): regime {}, method {}, {:.1?}", regime.tag, e.method, start.elapsed());
        println!("  excess over the leading frequency: {}", to_scientific(&regime.excess, 6));
        if deficit > 0 {
            println!("  π/2 − value = {}·π", to_scientific(&deficit, 8));
            println!("  denominator bits: {}", e.value.coefficient.denom().significant_bits());
        } else {
            println!("  value = π/2");
        }
    }
    Ok(())
}
