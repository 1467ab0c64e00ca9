//! The density of a sum of uniform variables, built exactly by repeated box
//! convolution. Its value at zero times π is the sinc-product integral.
//!
//! ```text
//! cargo run --example density
//! ```

use sincprod::density::{convolution_density, density_at};
use sincprod::rational::{format_rational, to_decimal};
use sincprod::Rational;

fn show_poly(p: &[Rational]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| match i {
            0 => format_rational(c),
            1 => format!("{}·x", format_rational(c)),
            _ => format!("{}·x^{i}", format_rational(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn main() -> sincprod::Result<()> {
    // three unit boxes: the Irwin–Hall density, recentred
    let d = convolution_density(&[Rational::from(1), Rational::from(1), Rational::from(1)])?;
    for (w, p) in d.breakpoints().windows(2).zip(d.pieces()) {
        println!("[{}, {}]: {}", w[0], w[1], show_poly(p));
    }
    println!("mass {}, D(0) = {}", d.mass(), density_at(&d, &Rational::new()));

    // widths 1, 1/3, …, 1/15: flat top just gone
    let widths: Vec<Rational> = (0..8).map(|k| Rational::from((1, 2 * k + 1))).collect();
    let d = convolution_density(&widths)?;
    println!("\n{} pieces, degree {}, support ±{}", d.pieces().len(), d.degree(), d.support());
    for x in ["0", "1/100", "1/50", "1/10", "1/2", "1"] {
        let x = sincprod::rational::parse_rational(x)?;
        println!("D({x}) ≈ {}", to_decimal(&density_at(&d, &x), 24));
    }
    Ok(())
}
