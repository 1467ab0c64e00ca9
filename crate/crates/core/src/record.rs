//! Result records, one JSON object per line, and a file-backed cache of them.
//!
//! A record looks like
//!
//! ```text
//! {"family":"I(2,7)","method":"overshoot","exact":"1685…/3371…","decimal":"0.49999…","regime":"first-overshoot","ms":3,"digits":25}
//! ```
//!
//! `exact` and `decimal` are the value divided by π. `exact` is `null` for
//! quadrature results.

use std::collections::HashMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::eval::{evaluate_with, EvalConfig, Method};
use crate::families::{classify, family_i, family_j, family_k};
use crate::quadrature::{integrate_with, QuadratureConfig, QuadratureResult};
use crate::rational::{format_rational, parse_rational, to_decimal, PiMultiple, Rational};

/// A named family instance or an explicit coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    J(u64),
    K(u64),
    I { b: Rational, n: u64 },
    /// Pure sinc product.
    Tau(Vec<Rational>),
    /// Cosine form; the largest value is the cosine frequency.
    Eps(Vec<Rational>),
}

impl Family {
    pub fn coefficients(&self) -> Result<Coefficients> {
        match self {
            Family::J(n) => Ok(family_j(*n)),
            Family::K(n) => Ok(family_k(*n)),
            Family::I { b, n } => family_i(b, *n),
            Family::Tau(values) => Coefficients::new(values.clone(), false),
            Family::Eps(values) => Coefficients::new(values.clone(), true),
        }
    }
}

/// `J(7)`, `K(56)`, `I(2,7)`, or the canonical coefficient form for
/// explicit lists.
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::J(n) => write!(f, "J({n})"),
            Family::K(n) => write!(f, "K({n})"),
            Family::I { b, n } if *b.denom() == 1 => write!(f, "I({},{n})", b.numer()),
            Family::I { b, n } => write!(f, "I({},{n})", format_rational(b)),
            Family::Tau(_) | Family::Eps(_) => match self.coefficients() {
                Ok(c) => write!(f, "{c}"),
                Err(_) => f.write_str("<invalid>"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub family: String,
    pub method: String,
    pub exact: Option<String>,
    pub decimal: String,
    pub regime: String,
    pub ms: u64,
    pub digits: u32,
}

impl ResultRecord {
    pub fn from_exact(family: &Family, value: &PiMultiple, method: Method, regime: &str, digits: u32, ms: u64) -> Self {
        Self {
            family: family.to_string(),
            method: method.as_str().into(),
            exact: Some(format_rational(&value.coefficient)),
            decimal: to_decimal(&value.coefficient, digits),
            regime: regime.into(),
            ms,
            digits,
        }
    }

    pub fn from_numeric(family: &Family, result: &QuadratureResult, regime: &str, digits: u32, ms: u64) -> Self {
        Self {
            family: family.to_string(),
            method: Method::Quadrature.as_str().into(),
            exact: None,
            decimal: result.estimate.to_decimal(digits),
            regime: regime.into(),
            ms,
            digits,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }

    pub fn method(&self) -> Result<Method> {
        self.method.parse()
    }

    /// The exact value, when present.
    pub fn exact_value(&self) -> Result<Option<PiMultiple>> {
        self.exact
            .as_deref()
            .map(|s| parse_rational(s).map(PiMultiple::new))
            .transpose()
    }

    fn key(&self) -> CacheKey {
        let class = if self.exact.is_some() { "exact" } else { "numeric" };
        (self.family.clone(), class, self.digits)
    }
}

/// Human-readable one-liner.
impl fmt::Display for ResultRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}: ", self.family, self.regime, self.method)?;
        if let Some(exact) = &self.exact {
            write!(f, "{exact}·π ≈ ")?;
        }
        write!(f, "{}·π ({} ms)", self.decimal, self.ms)
    }
}

type CacheKey = (String, &'static str, u32);

/// Records keyed by (family, exact or numeric, digits), optionally persisted
/// to a JSON Lines file. New entries are appended as they are inserted.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: HashMap<CacheKey, ResultRecord>,
}

impl Cache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; later lines win over earlier ones.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let record = ResultRecord::from_line(&line).map_err(|e| Error::Parse {
                    line: Some(i + 1),
                    message: format!("{}: {e}", path.display()),
                })?;
                entries.insert(record.key(), record);
            }
        }
        Ok(Self {
            path: Some(path),
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get_exact(&self, family: &Family, digits: u32) -> Option<&ResultRecord> {
        self.entries.get(&(family.to_string(), "exact", digits))
    }

    pub fn get_numeric(&self, family: &Family, digits: u32) -> Option<&ResultRecord> {
        self.entries.get(&(family.to_string(), "numeric", digits))
    }

    pub fn insert(&mut self, record: ResultRecord) -> Result<()> {
        if let Some(path) = &self.path {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(file, "{}", record.to_line())?;
        }
        self.entries.insert(record.key(), record);
        Ok(())
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Exact evaluation through the cache. Cached records are returned as
/// stored, including their original timing.
pub fn exact_record(family: &Family, config: &EvalConfig, digits: u32, cache: &mut Cache) -> Result<ResultRecord> {
    exact_value_and_record(family, config, digits, cache).map(|(_, r)| r)
}

/// Like [`exact_record`], but also hands back the value, skipping the
/// reparse of the stored fraction when it was just computed.
pub fn exact_value_and_record(
    family: &Family,
    config: &EvalConfig,
    digits: u32,
    cache: &mut Cache,
) -> Result<(PiMultiple, ResultRecord)> {
    if let Some(hit) = cache.get_exact(family, digits) {
        let value = hit
            .exact_value()?
            .ok_or_else(|| Error::parse("cached exact record without a value"))?;
        return Ok((value, hit.clone()));
    }
    let start = Instant::now();
    let evaluation = evaluate_with(&family.coefficients()?, config)?;
    let record = ResultRecord::from_exact(
        family,
        &evaluation.value,
        evaluation.method,
        evaluation.regime.tag.as_str(),
        digits,
        elapsed_ms(start),
    );
    cache.insert(record.clone())?;
    Ok((evaluation.value, record))
}

/// Quadrature through the cache.
pub fn numeric_record(family: &Family, config: &QuadratureConfig, cache: &mut Cache) -> Result<ResultRecord> {
    if let Some(hit) = cache.get_numeric(family, config.digits) {
        return Ok(hit.clone());
    }
    let start = Instant::now();
    let c = family.coefficients()?;
    let result = integrate_with(&c, config)?;
    let record = ResultRecord::from_numeric(
        family,
        &result,
        classify(&c).tag.as_str(),
        config.digits,
        elapsed_ms(start),
    );
    cache.insert(record.clone())?;
    Ok(record)
}
