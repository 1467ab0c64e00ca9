//! Exact values as rational multiples of π, computed three independent ways.
//!
//! ```text
//! cargo run --example exact_eval
//! ```

use sincprod::eval::{eval_closed, eval_signsum, eval_spline};
use sincprod::rational::{to_decimal, to_scientific};
use sincprod::{classify, evaluate, family_i, family_j, Coefficients, PiMultiple, Rational};

fn show(name: &str, c: &Coefficients) -> sincprod::Result<()> {
    let e = evaluate(c)?;
    println!("{name}: {c}");
    println!("  regime {}, method {}", e.regime.tag, e.method);
    println!("  value  {}", e.value);
    println!("  ≈      {}·π", to_decimal(&e.value.coefficient, 30));
    let deficit = e.value.deficit_from_half();
    if deficit > 0 {
        println!("  π/2 − value = {}·π", to_scientific(&deficit, 6));
    }

    let spline = eval_spline(c)?;
    let signsum = eval_signsum(c)?;
    let closed = eval_closed(c)?;
    println!(
        "  spline {} signsum {} closed {}",
        agree(&spline, &e.value),
        agree(&signsum, &e.value),
        closed.map_or("n/a", |v| agree(&v, &e.value))
    );
    Ok(())
}

fn agree(a: &PiMultiple, b: &PiMultiple) -> &'static str {
    if a == b {
        "agrees"
    } else {
        "DIFFERS"
    }
}

fn main() -> sincprod::Result<()> {
    for n in [5, 6, 7] {
        show(&format!("J_{n}"), &family_j(n))?;
    }
    show("I_7(2)", &family_i(&Rational::from(2), 7)?)?;

    // a deep case: only the general methods apply
    let deep = Coefficients::new(vec![Rational::from(1); 5], false)?;
    println!("regime of {deep}: {}", classify(&deep).tag);
    show("five unit sincs", &deep)?;
    Ok(())
}
