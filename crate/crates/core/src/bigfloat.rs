//! Binary fixed-point numbers with an explicit working precision.
//!
//! A [`BigFloat`] holds `mantissa · 2^(−precision)`. Every value carries its
//! own precision; binary operations produce the smaller of the two operand
//! precisions. Rounding is toward negative infinity, so each operation is
//! off by less than one unit in the last place, `2^(−precision)`.
//!
//! Fixed point (rather than floating point) suits the quadrature oracle: all
//! error budgets there are absolute, and integrand values are bounded.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::DivRounding;
use rug::Integer;

use crate::rational::{to_decimal, Rational};

#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: Integer,
    precision: u32,
}

/// Bits needed to carry `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

fn rescale(m: &Integer, from: u32, to: u32) -> Integer {
    match from.cmp(&to) {
        Ordering::Equal => m.clone(),
        Ordering::Less => Integer::from(m << (to - from)),
        Ordering::Greater => Integer::from(m >> (from - to)),
    }
}

thread_local! {
    static PI_CACHE: RefCell<HashMap<u32, Integer>> = RefCell::new(HashMap::new());
    static LN2_CACHE: RefCell<HashMap<u32, Integer>> = RefCell::new(HashMap::new());
}

/// `Σ_k sign^k / ((2k+1) · x^(2k+1))` scaled by `2^bits`, i.e. `atan(1/x)`
/// (or `atanh(1/x)` with `sign = 1`).
fn arc_series(x: u32, bits: u32, alternating: bool) -> Integer {
    let mut power = Integer::from(Integer::u_pow_u(2, bits)) / x;
    let x2 = x * x;
    let mut sum = Integer::new();
    let mut k = 0u32;
    while power != 0 {
        let term = Integer::from(&power / (2 * k + 1));
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= x2;
        k += 1;
    }
    sum
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        Self {
            mantissa: Integer::new(),
            precision,
        }
    }

    pub fn one(precision: u32) -> Self {
        Self::from_int(1, precision)
    }

    pub fn from_int(value: i64, precision: u32) -> Self {
        Self {
            mantissa: Integer::from(value) << precision,
            precision,
        }
    }

    /// Nearest representable value below `r`.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        let scaled = Integer::from(r.numer() << precision);
        Self {
            mantissa: scaled.div_floor(r.denom()),
            precision,
        }
    }

    pub fn from_f64(value: f64, precision: u32) -> Self {
        let r = Rational::from_f64(value).expect("finite f64");
        Self::from_rational(&r, precision)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self {
            mantissa: rescale(&self.mantissa, self.precision, precision),
            precision,
        }
    }

    /// The exact value represented.
    pub fn to_rational(&self) -> Rational {
        Rational::from((
            self.mantissa.clone(),
            Integer::from(Integer::u_pow_u(2, self.precision)),
        ))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }

    /// Fixed-point rendering with `digits` places, rounded half to even.
    pub fn to_decimal(&self, digits: u32) -> String {
        to_decimal(&self.to_rational(), digits)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    /// At most one unit in the last place.
    fn is_negligible(&self) -> bool {
        self.mantissa.significant_bits() <= 1
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa < 0
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: Integer::from(self.mantissa.abs_ref()),
            precision: self.precision,
        }
    }

    /// `self · 2^k` (`k` may be negative).
    pub fn shifted(&self, k: i64) -> Self {
        let mantissa = if k >= 0 {
            Integer::from(&self.mantissa << k as u32)
        } else {
            Integer::from(&self.mantissa >> (-k) as u32)
        };
        Self {
            mantissa,
            precision: self.precision,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self {
            mantissa: Integer::from(&self.mantissa * k),
            precision: self.precision,
        }
    }

    pub fn div_int(&self, k: u64) -> Self {
        Self {
            mantissa: Integer::from((&self.mantissa).div_floor(&Integer::from(k))),
            precision: self.precision,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        let m = Integer::from(&self.mantissa * r.numer());
        Self {
            mantissa: m.div_floor(r.denom()),
            precision: self.precision,
        }
    }

    /// Largest integer not above `self`.
    pub fn floor_int(&self) -> Integer {
        Integer::from(&self.mantissa >> self.precision)
    }

    /// π at the requested precision.
    pub fn pi(precision: u32) -> Self {
        let mantissa = PI_CACHE.with(|cache| {
            cache
                .borrow_mut()
                .entry(precision)
                .or_insert_with(|| {
                    // Machin: π = 16 atan(1/5) − 4 atan(1/239)
                    let bits = precision + 16;
                    let s = arc_series(5, bits, true) * 16u32 - arc_series(239, bits, true) * 4u32;
                    s >> 16
                })
                .clone()
        });
        Self {
            mantissa,
            precision,
        }
    }

    /// ln 2 at the requested precision.
    pub fn ln2(precision: u32) -> Self {
        let mantissa = LN2_CACHE.with(|cache| {
            cache
                .borrow_mut()
                .entry(precision)
                .or_insert_with(|| {
                    // ln 2 = 2 atanh(1/3)
                    let bits = precision + 16;
                    (arc_series(3, bits, false) * 2u32) >> 16
                })
                .clone()
        });
        Self {
            mantissa,
            precision,
        }
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Self, Self) {
        const HALVINGS: u32 = 8;
        let p = self.precision;
        let magnitude = self.floor_int().abs().significant_bits();
        let w = p + 32 + magnitude + 2 * HALVINGS;
        let x = self.with_precision(w);

        // x = k·π/2 + r with |r| ≤ π/4
        let half_pi = BigFloat::pi(w).shifted(-1);
        let k = (&x / &half_pi).to_rational().round().into_numer_denom().0;
        let r = &x - &half_pi.mul_integer(&k);

        let r = r.shifted(-(HALVINGS as i64));
        let mut sin = BigFloat::zero(w);
        let mut cos = BigFloat::one(w);
        let mut term = BigFloat::one(w);
        for n in 1u64.. {
            term = (&term * &r).div_int(n);
            if term.is_negligible() {
                break;
            }
            let target = if n % 2 == 1 { &mut sin } else { &mut cos };
            *target = if (n / 2) % 2 == 0 {
                &*target + &term
            } else {
                &*target - &term
            };
        }
        for _ in 0..HALVINGS {
            let s2 = (&sin * &cos).shifted(1);
            cos = &(&cos * &cos) - &(&sin * &sin);
            sin = s2;
        }

        let quadrant = k.mod_u(4);
        let (s, c) = match quadrant {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        };
        (s.with_precision(p), c.with_precision(p))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// `e^x`. Results below `2^(−precision)` come back as zero.
    pub fn exp(&self) -> Self {
        const HALVINGS: u32 = 8;
        let p = self.precision;
        let magnitude = self.floor_int().abs().significant_bits();
        let probe = p + 32 + magnitude;
        let n = (&self.with_precision(probe) / &BigFloat::ln2(probe)).floor_int();
        if n < -(i64::from(p) + 2) {
            return BigFloat::zero(p);
        }
        let growth = n.to_u32().unwrap_or(0);
        let w = probe + growth + 2 * HALVINGS;
        let x = self.with_precision(w);
        let r = &x - &BigFloat::ln2(w).mul_integer(&n);

        let r = r.shifted(-(HALVINGS as i64));
        let mut sum = BigFloat::one(w);
        let mut term = BigFloat::one(w);
        for k in 1u64.. {
            term = (&term * &r).div_int(k);
            if term.is_negligible() {
                break;
            }
            sum = &sum + &term;
        }
        for _ in 0..HALVINGS {
            sum = &sum * &sum;
        }
        sum.shifted(n.to_i64().expect("exponent range")).with_precision(p)
    }

    fn mul_integer(&self, k: &Integer) -> Self {
        Self {
            mantissa: Integer::from(&self.mantissa * k),
            precision: self.precision,
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let p = self.precision.max(other.precision);
        rescale(&self.mantissa, self.precision, p).cmp(&rescale(&other.mantissa, other.precision, p))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map(|d| d as u32)
            .unwrap_or((self.precision as f64 * std::f64::consts::LOG10_2) as u32);
        f.write_str(&self.to_decimal(digits))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mantissa: Integer::from(-&self.mantissa),
            precision: self.precision,
        }
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        let p = self.precision.min(rhs.precision);
        BigFloat {
            mantissa: rescale(&self.mantissa, self.precision, p)
                + rescale(&rhs.mantissa, rhs.precision, p),
            precision: p,
        }
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        let p = self.precision.min(rhs.precision);
        BigFloat {
            mantissa: rescale(&self.mantissa, self.precision, p)
                - rescale(&rhs.mantissa, rhs.precision, p),
            precision: p,
        }
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        let p = self.precision.min(rhs.precision);
        let product = Integer::from(&self.mantissa * &rhs.mantissa);
        BigFloat {
            mantissa: product >> (self.precision + rhs.precision - p),
            precision: p,
        }
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let p = self.precision.min(rhs.precision);
        // (a/2^pa) / (b/2^pb) = a·2^(p+pb−pa)/b · 2^−p
        let shift = p as i64 + rhs.precision as i64 - self.precision as i64;
        let numerator = if shift >= 0 {
            Integer::from(&self.mantissa << shift as u32)
        } else {
            Integer::from(&self.mantissa >> (-shift) as u32)
        };
        BigFloat {
            mantissa: numerator.div_floor(&rhs.mantissa),
            precision: p,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937511";
    const E_40: &str = "2.7182818284590452353602874713526624977572";

    fn close(a: &BigFloat, b: &str, places: u32) -> bool {
        let b = crate::rational::parse_rational(&decimal_fraction(b)).unwrap();
        let diff = Rational::from(a.to_rational() - b).abs();
        diff < Rational::from((1, Integer::from(Integer::u_pow_u(10, places))))
    }

    fn decimal_fraction(s: &str) -> String {
        let (w, f) = s.split_once('.').unwrap();
        format!("{w}{f}/1{}", "0".repeat(f.len()))
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(bits_for_digits(60));
        assert!(close(&pi, PI_50, 49));
        assert_eq!(pi.to_decimal(10), "3.1415926536");
    }

    #[test]
    fn ln2_digits() {
        let ln2 = BigFloat::ln2(200);
        assert!(close(&ln2, "0.69314718055994530941723212145817656807550013436025", 49));
    }

    #[test]
    fn trig_identities() {
        let p = 200;
        let pi = BigFloat::pi(p);
        let tiny = BigFloat::one(p).shifted(-190);
        assert!(pi.sin().abs() < tiny);
        assert!(&(&pi.cos() + &BigFloat::one(p)).abs() < &tiny);
        let half = pi.shifted(-1).sin();
        assert!((&half - &BigFloat::one(p)).abs() < tiny);
        for v in [-7.25, -0.1, 0.3, 1.0, 2.5, 40.0, 1234.5] {
            let x = BigFloat::from_f64(v, p);
            let (s, c) = x.sin_cos();
            let one = &(&s * &s) + &(&c * &c);
            assert!((&one - &BigFloat::one(p)).abs() < tiny, "{v}");
            assert!((s.to_f64() - v.sin()).abs() < 1e-12, "{v}");
            assert!((c.to_f64() - v.cos()).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn exp_values() {
        let p = 200;
        let e = BigFloat::one(p).exp();
        assert!(close(&e, E_40, 39));
        let x = BigFloat::from_f64(-3.5, p);
        let product = &x.exp() * &(-&x).exp();
        assert!((&product - &BigFloat::one(p)).abs() < BigFloat::one(p).shifted(-180));
        assert!(BigFloat::from_int(-1000, 64).exp().is_zero());
        assert_eq!(BigFloat::zero(64).exp(), BigFloat::one(64));
    }

    #[test]
    fn arithmetic_and_precision() {
        let a = BigFloat::from_rational(&Rational::from((1, 3)), 100);
        let b = BigFloat::from_int(3, 80);
        let product = &a * &b;
        assert_eq!(product.precision(), 80);
        assert!((&product - &BigFloat::one(80)).abs() <= BigFloat::one(80).shifted(-78));
        assert_eq!((&b / &b), BigFloat::one(80));
        assert_eq!(BigFloat::from_int(-5, 10).abs(), BigFloat::from_int(5, 10));
        assert_eq!(BigFloat::from_f64(-2.5, 10).floor_int(), -3);
        assert!(BigFloat::from_int(2, 10) > BigFloat::from_f64(1.5, 40));
        assert_eq!(BigFloat::from_f64(0.125, 8).to_decimal(4), "0.1250");
    }
}
