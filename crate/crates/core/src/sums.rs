//! Exact partial sums of the odd reciprocals and the threshold search that
//! decides where each plateau ends.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default bound on the number of terms [`first_violation`] will accumulate.
pub const DEFAULT_ITERATION_CAP: u64 = 10_000_000;

/// `Σ_{k=start}^{end} 1/(2k+1)`, exactly.
pub fn odd_reciprocal_sum(end: u64, start: u64) -> Result<Rational> {
    if start > end {
        return Err(Error::EmptyRange { start, end });
    }
    Ok(OddReciprocals::from(start)
        .take((end - start + 1) as usize)
        .fold(Rational::new(), |acc, w| acc + w))
}

/// The weights `1/(2k+1)` for `k = start, start+1, …`.
#[derive(Clone, Debug)]
pub struct OddReciprocals {
    next: u64,
}

impl OddReciprocals {
    pub fn from(start: u64) -> Self {
        Self { next: start }
    }
}

impl Iterator for OddReciprocals {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let k = self.next;
        self.next += 1;
        Some(Rational::from((1u64, 2 * k + 1)))
    }
}

/// Outcome of a threshold search: the first index whose partial sum exceeds
/// the budget, with the two bracketing partial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    /// `Σ_{k<index} w_k`, which is `≤ budget`.
    pub below: Rational,
    /// `Σ_{k≤index} w_k`, which is `> budget`.
    pub above: Rational,
}

/// Smallest `n` with `Σ_{k=0}^{n} w_k > budget`, using the default cap.
pub fn first_violation<I>(budget: &Rational, weights: I) -> Result<u64>
where
    I: IntoIterator<Item = Rational>,
{
    first_violation_detailed(budget, weights, DEFAULT_ITERATION_CAP).map(|v| v.index)
}

/// Threshold search with an explicit iteration cap.
///
/// Weights must be strictly positive; a nonpositive weight is rejected
/// because the running sum would no longer be monotone.
pub fn first_violation_detailed<I>(budget: &Rational, weights: I, cap: u64) -> Result<Violation>
where
    I: IntoIterator<Item = Rational>,
{
    let mut below = Rational::new();
    for (index, w) in (0..cap).zip(weights) {
        if w <= 0 {
            return Err(Error::NonPositiveCoefficient(w.to_string()));
        }
        let above = Rational::from(&below + &w);
        if above > *budget {
            return Ok(Violation {
                index,
                below,
                above,
            });
        }
        below = above;
    }
    Err(Error::IterationCapExceeded { cap })
}
