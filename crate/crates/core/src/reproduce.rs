//! The reference fixture table: thresholds, the exact `I_7(2)` value, its
//! decimal expansion, the `K` and `J` family breakdowns and the large-`n`
//! closed form, each checked end to end.

use std::fmt;
use std::time::Instant;

use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::eval::{eval_closed, eval_signsum_capped, eval_spline_capped, EvalConfig, Method};
use crate::families::{classify, family_i, family_j, RegimeTag};
use crate::quadrature::{integrate_with, QuadratureConfig};
use crate::rational::{decimal_exponent, format_rational, parse_rational, to_scientific, PiMultiple, Rational};
use crate::record::{exact_record, exact_value_and_record, Cache, Family};
use crate::sums::{first_violation, OddReciprocals};

/// `I_7(2)/π`.
pub const I7_OF_2: &str = "168579263752211300739165075916829279/337158527504429357358419617830000000";
/// Leading decimals of `I_7(2)/π`.
pub const I7_OF_2_DECIMAL: &str = "0.4999999999999899811";

/// Budgets and their first violating indices for the odd reciprocals.
pub const THRESHOLDS: [(u32, u64); 5] = [(1, 1), (2, 7), (3, 56), (4, 418), (5, 3091)];

#[derive(Clone, Debug)]
pub struct ReproduceConfig {
    pub eval: EvalConfig,
    pub i7_digits: u32,
    pub j7_digits: u32,
    /// Include the `I_n(5)` evaluation at `n = 3091`.
    pub large_n: bool,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        Self {
            eval: EvalConfig::default(),
            i7_digits: 22,
            j7_digits: 25,
            large_n: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureLine {
    pub criterion: u8,
    pub label: String,
    pub passed: bool,
    pub detail: String,
    pub ms: u64,
}

impl fmt::Display for FixtureLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}: {} ({} ms)", self.criterion, self.label, self.detail, self.ms)
    }
}

fn line(criterion: u8, label: &str, check: impl FnOnce() -> Result<(bool, String)>) -> FixtureLine {
    let start = Instant::now();
    let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    FixtureLine {
        criterion,
        label: label.into(),
        passed,
        detail,
        ms: start.elapsed().as_millis() as u64,
    }
}

fn half() -> Rational {
    Rational::from((1, 2))
}

pub fn thresholds() -> FixtureLine {
    line(1, "thresholds", || {
        let mut ok = true;
        let mut found = Vec::new();
        for (budget, expected) in THRESHOLDS {
            let n = first_violation(&Rational::from(budget), OddReciprocals::from(0))?;
            ok &= n == expected;
            found.push(format!("{budget}→{n}"));
        }
        Ok((ok, found.join(" ")))
    })
}

pub fn i7_exact(config: &ReproduceConfig) -> FixtureLine {
    line(2, "I_7(2) exact", || {
        let expected = parse_rational(I7_OF_2)?;
        let c = family_i(&Rational::from(2), 7)?;
        // the spline route falls back to the sign sum when capped below n
        let (first, first_name) = match eval_spline_capped(&c, config.eval.spline_cap) {
            Ok(v) => (v, Method::Spline),
            Err(_) => (eval_signsum_capped(&c, config.eval.signsum_cap)?, Method::SignSum),
        };
        let signsum = eval_signsum_capped(&c, config.eval.signsum_cap)?;
        let closed = eval_closed(&c)?.expect("first overshoot");
        let ok = first.coefficient == expected && signsum.coefficient == expected && closed.coefficient == expected;
        Ok((ok, format!("{first_name}, signsum and closed form give {}·π", format_rational(&closed.coefficient))))
    })
}

pub fn i7_numeric(config: &ReproduceConfig) -> FixtureLine {
    line(3, "I_7(2) numeric", || {
        let c = family_i(&Rational::from(2), 7)?;
        let result = integrate_with(&c, &QuadratureConfig::new(config.i7_digits))?;
        let reference = parse_rational(&format!(
            "{}/1{}",
            I7_OF_2_DECIMAL.replace("0.", ""),
            "0".repeat(I7_OF_2_DECIMAL.len() - 2)
        ))?;
        let difference = Rational::from(result.estimate.to_rational() - &reference).abs();
        let ok = difference < Rational::from((1, Integer::from(10u32).pow(19u32)));
        Ok((ok, format!("{} at {} digits", result.estimate.to_decimal(config.i7_digits), config.i7_digits)))
    })
}

pub fn k_family(config: &ReproduceConfig) -> FixtureLine {
    line(4, "K family", || {
        let mut ok = true;
        for n in [0, 1, 7, 30, 55] {
            let record = exact_record(&Family::K(n), &config.eval, 10, &mut Cache::in_memory())?;
            ok &= record.exact_value()? == Some(PiMultiple::half_pi()) && record.regime == "plateau";
        }
        let k56 = exact_record(&Family::K(56), &config.eval, 10, &mut Cache::in_memory())?;
        let deficit = k56.exact_value()?.expect("exact").deficit_from_half();
        if deficit <= 0 {
            return Ok((false, format!("K_56 deficit {} is not positive", format_rational(&deficit))));
        }
        let exponent = decimal_exponent(&deficit)?;
        ok &= (-140..=-136).contains(&exponent);
        Ok((
            ok,
            format!(
                "K_n = π/2 for n in {{0,1,7,30,55}}; π/2 − K_56 = {}·π (exponent {exponent})",
                to_scientific(&deficit, 6)
            ),
        ))
    })
}

pub fn j_family(config: &ReproduceConfig) -> FixtureLine {
    line(5, "J family", || {
        let mut ok = true;
        for n in 0..=6 {
            let record = exact_record(&Family::J(n), &config.eval, 10, &mut Cache::in_memory())?;
            ok &= record.exact_value()? == Some(PiMultiple::half_pi());
        }
        let c = family_j(7);
        let closed = eval_closed(&c)?.expect("first overshoot");
        let spline = eval_spline_capped(&c, config.eval.spline_cap.max(7))?;
        let signsum = eval_signsum_capped(&c, config.eval.signsum_cap.max(7))?;
        ok &= closed < PiMultiple::half_pi() && closed == spline && closed == signsum;
        let result = integrate_with(&c, &QuadratureConfig::new(config.j7_digits))?;
        let difference = Rational::from(result.estimate.to_rational() - &closed.coefficient).abs();
        ok &= difference < Rational::from((1, Integer::from(10u32).pow(config.j7_digits)));
        Ok((
            ok,
            format!(
                "J_n = π/2 for n ≤ 6; J_7 = {}·π by three exact routes, quadrature {}",
                to_scientific(&closed.coefficient, 12),
                result.estimate.to_decimal(config.j7_digits)
            ),
        ))
    })
}

pub fn large_n(config: &ReproduceConfig, cache: &mut Cache) -> FixtureLine {
    line(7, "I_3091(5) closed form", || {
        let family = Family::I {
            b: Rational::from(5),
            n: 3091,
        };
        let c = family.coefficients()?;
        let regime = classify(&c);
        let min = c.rest().last().expect("n ≥ 1");
        let valid = regime.tag == RegimeTag::FirstOvershoot
            && regime.excess > 0
            && regime.excess <= Rational::from(min * 2u32);
        let (value, record) = exact_value_and_record(&family, &config.eval, 30, cache)?;
        let deficit = Rational::from(half() - &value.coefficient);
        let ok = valid && deficit > 0;
        Ok((
            ok,
            format!(
                "regime {}, π/2 − value = {}·π ({} digit denominator)",
                record.regime,
                to_scientific(&deficit, 6),
                record.exact.as_deref().and_then(|e| e.split_once('/')).map_or(0, |(_, d)| d.len())
            ),
        ))
    })
}

/// Runs every fixture in order.
pub fn run(config: &ReproduceConfig, cache: &mut Cache) -> Vec<FixtureLine> {
    let mut lines = vec![
        thresholds(),
        i7_exact(config),
        i7_numeric(config),
        k_family(config),
        j_family(config),
    ];
    if config.large_n {
        lines.push(large_n(config, cache));
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_line_passes() {
        let l = thresholds();
        assert!(l.passed, "{l}");
        assert!(l.detail.contains("5→3091"));
    }

    #[test]
    fn i7_exact_survives_a_low_spline_cap() {
        let config = ReproduceConfig {
            eval: EvalConfig {
                spline_cap: 5,
                signsum_cap: 24,
            },
            ..ReproduceConfig::default()
        };
        let l = i7_exact(&config);
        assert!(l.passed, "{l}");
        assert!(l.detail.starts_with("signsum"));
    }

    #[test]
    fn k_line_reports_exponent() {
        let l = k_family(&ReproduceConfig::default());
        assert!(l.passed, "{l}");
        assert!(l.detail.contains("exponent -139"), "{l}");
    }

    #[test]
    fn display_format() {
        let l = FixtureLine {
            criterion: 1,
            label: "x".into(),
            passed: false,
            detail: "y".into(),
            ms: 3,
        };
        assert_eq!(l.to_string(), "FAIL [1] x: y (3 ms)");
    }
}
