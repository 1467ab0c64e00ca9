//! Exact evaluation of sinc-product integrals as rational multiples of π.
//!
//! Every route computes `π · D_n(0) · prefactor`, where `D_n` is the
//! unit-mass convolution of the boxes `[−a_k, a_k]`:
//!
//! * [`eval_spline`] builds `D_n` piece by piece with exact rational
//!   polynomials ([`crate::density`]).
//! * [`eval_signsum`] uses the truncated-power expansion
//!   `D_n(x) = Σ_ε (Π ε_k) · (x + Σ ε_k a_k)_+^n / (2^(n+1) n! Π a_k)`.
//! * [`eval_closed`] covers the plateau, `π/(2a_0)`, and the first
//!   overshoot, where exactly one truncated-power term changes sign.
//!
//! [`evaluate`] classifies and dispatches.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Integer;

use crate::coefficients::Coefficients;
use crate::density::{convolution_density, density_at, PiecewisePolynomial};
use crate::error::{Error, Result};
use crate::families::{classify, sinc_form, Regime, RegimeTag};
use crate::rational::{PiMultiple, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Plateau,
    Overshoot,
    Spline,
    SignSum,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Plateau => "plateau",
            Method::Overshoot => "overshoot",
            Method::Spline => "spline",
            Method::SignSum => "signsum",
            Method::Quadrature => "quadrature",
        }
    }

    pub fn is_exact(self) -> bool {
        self != Method::Quadrature
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "plateau" => Method::Plateau,
            "overshoot" => Method::Overshoot,
            "spline" => Method::Spline,
            "signsum" => Method::SignSum,
            "quadrature" => Method::Quadrature,
            other => return Err(Error::parse(format!("unknown method {other:?}"))),
        })
    }
}

/// Size limits for the general exact methods, in terms of `n`.
///
/// The convolution can have up to `2^(n+1)` pieces and the sign sum always
/// has `2^(n+1)` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub spline_cap: usize,
    pub signsum_cap: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            spline_cap: 20,
            signsum_cap: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: PiMultiple,
    pub method: Method,
    pub regime: Regime,
}

fn require_sinc_form(c: &Coefficients) -> Result<()> {
    if c.cosine_form() {
        Err(Error::CosineFormUnsupported)
    } else {
        Ok(())
    }
}

/// The convolution density `D_n` for the frequencies of `c`.
pub fn spline_density(c: &Coefficients) -> Result<PiecewisePolynomial> {
    require_sinc_form(c)?;
    convolution_density(c.values())
}

pub fn eval_spline(c: &Coefficients) -> Result<PiMultiple> {
    eval_spline_capped(c, EvalConfig::default().spline_cap)
}

pub fn eval_spline_capped(c: &Coefficients, cap: usize) -> Result<PiMultiple> {
    require_sinc_form(c)?;
    if c.order() > cap {
        return Err(Error::SizeCapExceeded {
            method: "spline",
            n: c.order(),
            cap,
        });
    }
    let density = spline_density(c)?;
    let at_zero = density_at(&density, &Rational::new());
    Ok(PiMultiple::new(at_zero * c.prefactor()))
}

pub fn eval_signsum(c: &Coefficients) -> Result<PiMultiple> {
    eval_signsum_capped(c, EvalConfig::default().signsum_cap)
}

pub fn eval_signsum_capped(c: &Coefficients, cap: usize) -> Result<PiMultiple> {
    require_sinc_form(c)?;
    let n = c.order();
    if n > cap {
        return Err(Error::SizeCapExceeded {
            method: "signsum",
            n,
            cap,
        });
    }

    // Scale to integer half-widths A_k = L·a_k; then D_a(0) = L · D_A(0).
    let scale = c
        .values()
        .iter()
        .fold(Integer::from(1), |l, v| l.lcm(v.denom()));
    let widths: Vec<Integer> = c
        .values()
        .iter()
        .map(|v| Integer::from(v.numer() * &scale) / v.denom())
        .collect();

    // suffix[k] = Σ_{j≥k} A_j, used to skip subtrees whose sums stay ≤ 0.
    let mut suffix = vec![Integer::new(); widths.len() + 1];
    for k in (0..widths.len()).rev() {
        suffix[k] = Integer::from(&suffix[k + 1] + &widths[k]);
    }

    let mut acc = Integer::new();
    signsum_walk(&widths, &suffix, 0, Integer::new(), true, n as u32, &mut acc);

    // acc holds 2·Σ sign·(S)_+^n, with (0)_+^0 counted as 1/2.
    let denominator = Integer::from(Integer::u_pow_u(2, n as u32 + 2))
        * Integer::from(Integer::factorial(n as u32))
        * widths.iter().fold(Integer::from(1), |p, a| p * a);
    let d_at_zero = Rational::from((acc * scale, denominator));
    Ok(PiMultiple::new(d_at_zero * c.prefactor()))
}

fn signsum_walk(
    widths: &[Integer],
    suffix: &[Integer],
    k: usize,
    sum: Integer,
    positive: bool,
    degree: u32,
    acc: &mut Integer,
) {
    if k == widths.len() {
        let term = match (sum.cmp0(), degree) {
            (std::cmp::Ordering::Greater, 0) => Integer::from(2),
            (std::cmp::Ordering::Equal, 0) => Integer::from(1),
            (std::cmp::Ordering::Greater, _) => Integer::from(sum.pow(degree)) * 2u32,
            _ => return,
        };
        if positive {
            *acc += term;
        } else {
            *acc -= term;
        }
        return;
    }
    // Every completion of this prefix has sum ≤ sum + suffix[k].
    let best = Integer::from(&sum + &suffix[k]);
    if best < 0 || (best == 0 && degree > 0) {
        return;
    }
    let plus = Integer::from(&sum + &widths[k]);
    let minus = sum - &widths[k];
    signsum_walk(widths, suffix, k + 1, plus, positive, degree, acc);
    signsum_walk(widths, suffix, k + 1, minus, !positive, degree, acc);
}

/// Closed-form value in the plateau and first-overshoot regimes; `None` when
/// the input is deep.
///
/// With `s = Σ_{k≥1} a_k`, the first overshoot value is
///
/// ```text
/// π/(2a_0) · (1 − (s − a_0)^n / (2^(n−1) · n! · Π_{k≥1} a_k))
/// ```
pub fn eval_closed(c: &Coefficients) -> Result<Option<PiMultiple>> {
    require_sinc_form(c)?;
    let regime = classify(c);
    closed_form(c, &regime)
}

fn closed_form(c: &Coefficients, regime: &Regime) -> Result<Option<PiMultiple>> {
    let plateau = Rational::from((1, 2)) / c.leading();
    let coefficient = match regime.tag {
        RegimeTag::Plateau => plateau,
        RegimeTag::FirstOvershoot => {
            let n = c.order() as u32;
            let rest_product = c.rest().iter().fold(Rational::from(1), |p, a| p * a);
            let scale = Integer::from(Integer::u_pow_u(2, n - 1)) * Integer::from(Integer::factorial(n));
            let correction = Rational::from((&regime.excess).pow(n)) / (rest_product * scale);
            plateau * (1 - correction)
        }
        RegimeTag::Deep => return Ok(None),
    };
    Ok(Some(PiMultiple::new(coefficient * c.prefactor())))
}

pub fn evaluate(c: &Coefficients) -> Result<Evaluation> {
    evaluate_with(c, &EvalConfig::default())
}

/// Absorbs a cosine factor if present, then picks the cheapest exact route.
pub fn evaluate_with(c: &Coefficients, config: &EvalConfig) -> Result<Evaluation> {
    let c = sinc_form(c);
    let regime = classify(&c);
    let n = c.order();
    let (value, method) = match regime.tag {
        RegimeTag::Plateau | RegimeTag::FirstOvershoot => {
            let method = if regime.tag == RegimeTag::Plateau {
                Method::Plateau
            } else {
                Method::Overshoot
            };
            let value = closed_form(&c, &regime)?.expect("closed form applies");
            (value, method)
        }
        RegimeTag::Deep if n <= config.spline_cap => {
            (eval_spline_capped(&c, config.spline_cap)?, Method::Spline)
        }
        RegimeTag::Deep if n <= config.signsum_cap => {
            (eval_signsum_capped(&c, config.signsum_cap)?, Method::SignSum)
        }
        RegimeTag::Deep => return Err(Error::ExactInfeasible { n }),
    };
    Ok(Evaluation {
        value,
        method,
        regime,
    })
}
