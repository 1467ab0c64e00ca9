//! Exact rational scalars and the `r·π` result type.
//!
//! [`Rational`] is GMP's canonical rational: the denominator is always
//! positive and coprime to the numerator, so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};

pub use rug::Rational;

/// Parses `p/q` or `p` (ASCII, optional leading `-`, no whitespace).
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn digits(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) || den.is_some_and(|d| !digits(d)) {
        return Err(Error::parse(format!("not a rational: {text:?}")));
    }
    let n: Integer = num
        .parse()
        .map_err(|_| Error::parse(format!("not a rational: {text:?}")))?;
    let d: Integer = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(format!("not a rational: {text:?}")))?,
        None => Integer::from(1),
    };
    if d == 0 {
        return Err(Error::parse(format!("zero denominator: {text:?}")));
    }
    Ok(Rational::from((n, d)))
}

/// Canonical `p/q` text; integers keep the `/1` so the form is uniform.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders `r` with exactly `digits` digits after the decimal point,
/// rounding half to even.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let negative = *r < 0;
    let scaled = Rational::from(r.abs_ref()) * Integer::from(10).pow(digits);
    let (numer, denom) = scaled.into_numer_denom();
    let (mut q, rem) = numer.div_rem_floor(denom.clone());
    match (Integer::from(&rem << 1)).cmp(&denom) {
        Ordering::Greater => q += 1,
        Ordering::Equal if q.is_odd() => q += 1,
        _ => {}
    }
    let mut text = q.to_string();
    if digits > 0 {
        let width = digits as usize + 1;
        if text.len() < width {
            text = format!("{}{}", "0".repeat(width - text.len()), text);
        }
        text.insert(text.len() - digits as usize, '.');
    }
    if negative && q != 0 {
        text.insert(0, '-');
    }
    text
}

fn pow10(e: i64) -> Rational {
    let p = Integer::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from(p)
    } else {
        Rational::from((Integer::from(1), p))
    }
}

/// `floor(log10(r))` for `r > 0`, decided by exact comparison.
pub fn decimal_exponent(r: &Rational) -> Result<i64> {
    if *r <= 0 {
        return Err(Error::InvalidParameter(
            "decimal exponent of a nonpositive value".into(),
        ));
    }
    let bits = r.numer().significant_bits() as i64 - r.denom().significant_bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(e) > *r {
        e -= 1;
    }
    while pow10(e + 1) <= *r {
        e += 1;
    }
    Ok(e)
}

/// Scientific notation with `significant` digits, e.g. `7.41e-139`.
pub fn to_scientific(r: &Rational, significant: u32) -> String {
    if *r == 0 {
        return "0".into();
    }
    let sign = if *r < 0 { "-" } else { "" };
    let abs = Rational::from(r.abs_ref());
    let mut e = decimal_exponent(&abs).expect("positive");
    let places = significant.saturating_sub(1);
    let mut mantissa = to_decimal(&(abs.clone() / pow10(e)), places);
    // rounding can carry 9.99 up to 10.0
    if mantissa.starts_with("10") {
        e += 1;
        mantissa = to_decimal(&(abs / pow10(e)), places);
    }
    format!("{sign}{mantissa}e{e}")
}

/// An exact value `coefficient · π`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMultiple {
    pub coefficient: Rational,
}

impl PiMultiple {
    pub fn new(coefficient: Rational) -> Self {
        Self { coefficient }
    }

    /// `π/2`, the plateau value of every normalized family.
    pub fn half_pi() -> Self {
        Self::new(Rational::from((1, 2)))
    }

    /// `1/2 − coefficient`: how far below `π/2` the value sits, in units of π.
    pub fn deficit_from_half(&self) -> Rational {
        Rational::from((1, 2)) - &self.coefficient
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(Rational::from(&self.coefficient * factor))
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π", format_rational(&self.coefficient))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), 3);
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("10/5").unwrap(), 2);
    }

    #[test]
    fn rejects_malformed_rationals() {
        for bad in ["", "1/", "/2", "1 /2", " 1", "1/0", "1.5", "+1", "1/-2", "a/b"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn decimal_rounds_half_even() {
        assert_eq!(to_decimal(&q(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&q(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&q(5, 2), 0), "2");
        assert_eq!(to_decimal(&q(7, 2), 0), "4");
        assert_eq!(to_decimal(&q(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal(&q(1, 2), 3), "0.500");
        assert_eq!(to_decimal(&q(-1, 1000), 2), "0.00");
    }

    #[test]
    fn decimal_exponent_is_exact_at_powers_of_ten() {
        assert_eq!(decimal_exponent(&q(1, 1)).unwrap(), 0);
        assert_eq!(decimal_exponent(&q(999, 1)).unwrap(), 2);
        assert_eq!(decimal_exponent(&q(1000, 1)).unwrap(), 3);
        assert_eq!(decimal_exponent(&q(1, 1000)).unwrap(), -3);
        assert_eq!(decimal_exponent(&q(1, 1001)).unwrap(), -4);
        assert!(decimal_exponent(&q(0, 1)).is_err());
    }

    #[test]
    fn scientific_handles_carry() {
        assert_eq!(to_scientific(&q(9999, 1000), 3), "1.00e1");
        assert_eq!(to_scientific(&q(1, 3), 3), "3.33e-1");
    }

    #[test]
    fn pi_multiple_display() {
        assert_eq!(PiMultiple::half_pi().to_string(), "1/2·π");
        assert_eq!(PiMultiple::half_pi().deficit_from_half(), 0);
    }
}
