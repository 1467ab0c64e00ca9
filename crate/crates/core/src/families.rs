//! The named integral families, the cosine-absorption reduction and the
//! regime classifier.
//!
//! | family      | integrand                                          |
//! |-------------|----------------------------------------------------|
//! | `J_n`       | `Π_{k=0}^n sinc(t/(2k+1))`                          |
//! | `K_n`       | `2 cos(t) · Π_{k=0}^n sinc(t/(2k+1))`               |
//! | `I_n(b)`    | `b · sinc(bt) · Π_{k=0}^n sinc(t/(2k+1))`, `b ≥ 1`  |
//!
//! All three are normalized so that their plateau value is `π/2`.

use std::fmt;

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sums::OddReciprocals;

fn odd_reciprocals(n: u64) -> Vec<Rational> {
    OddReciprocals::from(0).take(n as usize + 1).collect()
}

/// `[1, 1/3, …, 1/(2n+1)]`.
pub fn family_j(n: u64) -> Coefficients {
    Coefficients::with_parts(odd_reciprocals(n), false, Rational::from(1))
}

/// `J_n`'s coefficients in cosine form, cosine frequency 1.
pub fn family_k(n: u64) -> Coefficients {
    Coefficients::with_parts(odd_reciprocals(n), true, Rational::from(1))
}

/// `[b, 1, 1/3, …, 1/(2n+1)]` with prefactor `b`.
pub fn family_i(b: &Rational, n: u64) -> Result<Coefficients> {
    if *b < 1 {
        return Err(Error::InvalidParameter(format!(
            "I_n(b) requires b >= 1, got {b}"
        )));
    }
    let mut values = Vec::with_capacity(n as usize + 2);
    values.push(b.clone());
    values.extend(odd_reciprocals(n));
    Ok(Coefficients::with_parts(values, false, b.clone()))
}

/// Rewrites a cosine-form list as a pure sinc product.
///
/// `2 cos(a_0 t) sinc(a_0 t) = 2 sinc(2 a_0 t)`, so the cosine factor and
/// the leading sinc merge into one sinc of frequency `2a_0` and the
/// prefactor doubles.
pub fn absorb_cosine(c: &Coefficients) -> Result<Coefficients> {
    if !c.cosine_form() {
        return Err(Error::NotCosineForm);
    }
    // 2a_0 stays the maximum, so the order is preserved.
    let mut values = c.values().to_vec();
    values[0] *= 2;
    Ok(Coefficients::with_parts(
        values,
        false,
        Rational::from(c.prefactor() * 2u32),
    ))
}

/// Returns `c` itself when already a pure product, else its absorbed form.
pub fn sinc_form(c: &Coefficients) -> Coefficients {
    if c.cosine_form() {
        absorb_cosine(c).expect("cosine form")
    } else {
        c.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    /// `Σ_{k≥1} a_k ≤ a_0`: the value is exactly `π/(2a_0)` (times prefactor).
    Plateau,
    /// `0 < Σ_{k≥1} a_k − a_0 ≤ 2 min_{k≥1} a_k`: one truncated-power term
    /// corrects the plateau value.
    FirstOvershoot,
    Deep,
}

impl RegimeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::Plateau => "plateau",
            RegimeTag::FirstOvershoot => "first-overshoot",
            RegimeTag::Deep => "deep",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    pub tag: RegimeTag,
    /// `Σ_{k≥1} a_k − a_0` of the sinc form; nonpositive iff plateau.
    pub excess: Rational,
}

/// Classifies the sinc form of `c` (cosine-form input is absorbed first).
pub fn classify(c: &Coefficients) -> Regime {
    let c = sinc_form(c);
    let excess = c.rest_sum() - c.leading();
    let tag = match c.rest().last() {
        _ if excess <= 0 => RegimeTag::Plateau,
        Some(min) if excess <= Rational::from(min * 2u32) => RegimeTag::FirstOvershoot,
        _ => RegimeTag::Deep,
    };
    Regime { tag, excess }
}
