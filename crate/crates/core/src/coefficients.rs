use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// The frequencies `a_0 ≥ a_1 ≥ … ≥ a_n` of a sinc product, the cosine flag,
/// and the constant factor the raw integral is multiplied by.
///
/// The integral described is
///
/// ```text
/// prefactor · ∫_0^∞ [2 cos(a_0 t)] · Π_k sinc(a_k t) dt
/// ```
///
/// where the bracketed factor is present only in cosine form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficients {
    values: Vec<Rational>,
    cosine_form: bool,
    prefactor: Rational,
}

impl Coefficients {
    /// Validates and sorts `values` into non-increasing order.
    ///
    /// In cosine form the largest value becomes the cosine frequency,
    /// whatever position it had in the input.
    pub fn new(mut values: Vec<Rational>, cosine_form: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        if let Some(bad) = values.iter().find(|v| **v <= 0) {
            return Err(Error::NonPositiveCoefficient(format_rational(bad)));
        }
        values.sort_by(|a, b| b.cmp(a));
        Ok(Self {
            values,
            cosine_form,
            prefactor: Rational::from(1),
        })
    }

    /// Multiplies the recorded prefactor by `factor`.
    pub fn scaled(mut self, factor: &Rational) -> Self {
        self.prefactor *= factor;
        self
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn cosine_form(&self) -> bool {
        self.cosine_form
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    /// `a_0`, the largest coefficient.
    pub fn leading(&self) -> &Rational {
        &self.values[0]
    }

    /// `a_1, …, a_n`.
    pub fn rest(&self) -> &[Rational] {
        &self.values[1..]
    }

    /// `n`, one less than the number of sinc factors.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// Number of sinc factors, which is also the algebraic decay rate of the
    /// integrand.
    pub fn factor_count(&self) -> usize {
        self.values.len()
    }

    /// `Σ_{k≥1} a_k`.
    pub fn rest_sum(&self) -> Rational {
        self.rest().iter().fold(Rational::new(), |acc, v| acc + v)
    }

    /// `Π_k a_k`.
    pub fn product(&self) -> Rational {
        self.values.iter().fold(Rational::from(1), |acc, v| acc * v)
    }

    pub(crate) fn with_parts(values: Vec<Rational>, cosine_form: bool, prefactor: Rational) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self {
            values,
            cosine_form,
            prefactor,
        }
    }
}

/// Parses a coefficient file: one rational per line, `#` starts a comment,
/// blank lines are skipped. Errors carry 1-based line numbers.
pub fn parse_coefficient_list(text: &str) -> Result<Vec<Rational>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let value = parse_rational(content).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                line: Some(i + 1),
                message,
            },
            other => other,
        })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    Ok(values)
}

/// Canonical text form, e.g. `2*cos[1,1/3,1/5]` or `2*[2,1,1/3]`. The
/// prefactor is omitted when it is one.
impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefactor != 1 {
            write!(f, "{}*", short(&self.prefactor))?;
        }
        if self.cosine_form {
            f.write_str("cos")?;
        }
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&short(v))?;
        }
        f.write_str("]")
    }
}

fn short(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}
