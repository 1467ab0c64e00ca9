//! A leading cosine factor folds into the first sinc:
//! `2 cos(at) sinc(at) = 2 sinc(2at)`.
//!
//! The `K_n` family, `2 cos(t) · Π sinc(t/(2k+1))`, therefore stays at π/2
//! until the reciprocal sum passes 2, which first happens at `n = 56`.
//!
//! ```text
//! cargo run --example cosine_absorption
//! ```

use sincprod::rational::{decimal_exponent, to_scientific};
use sincprod::{absorb_cosine, evaluate, family_k, integrate, Coefficients, Rational};

fn main() -> sincprod::Result<()> {
    let k2 = family_k(2);
    let folded = absorb_cosine(&k2)?;
    println!("{k2}  becomes  {folded}");

    let exact = evaluate(&k2)?;
    let numeric = integrate(&k2, 25)?;
    println!("exact   {}", exact.value);
    println!("numeric {}·π (bound {})", numeric.estimate.to_decimal(25), to_scientific(&numeric.error_bound.to_rational(), 2));

    for n in [0, 1, 7, 30, 55, 56, 57] {
        let e = evaluate(&family_k(n))?;
        let deficit = e.value.deficit_from_half();
        let note = if deficit > 0 {
            format!("below π/2 by {}·π (10^{})", to_scientific(&deficit, 4), decimal_exponent(&deficit)?)
        } else {
            "π/2".to_string()
        };
        println!("K_{n:<3} {:<16} {note}", e.regime.tag);
    }

    // any cosine-form list, not just the family
    let c = Coefficients::new(vec![Rational::from((3, 2)), Rational::from((1, 2)), Rational::from((1, 4))], true)?;
    println!("{c} = {}", evaluate(&c)?.value);
    Ok(())
}
