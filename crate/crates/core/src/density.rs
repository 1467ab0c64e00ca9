//! Exact piecewise-polynomial densities built by convolving uniform boxes.
//!
//! The Fourier transform of `sinc(a t)` is a box of width `2a`, so the
//! transform of a sinc product is a convolution of boxes. Normalized to unit
//! mass, that convolution is the density `D_n` of `Σ U_k` with
//! `U_k ~ uniform[−a_k, a_k]`, and
//!
//! ```text
//! ∫_0^∞ Π_k sinc(a_k t) dt = π · D_n(0).
//! ```

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Polynomial in `x` with coefficients in ascending powers.
pub type Polynomial = Vec<Rational>;

fn trim(p: &mut Polynomial) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::new(), |acc, c| acc * x + c)
}

fn antiderivative(p: &[Rational]) -> Polynomial {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(Rational::new());
    out.extend(
        p.iter()
            .enumerate()
            .map(|(i, c)| Rational::from(c / (i as u32 + 1))),
    );
    trim(&mut out);
    out
}

/// `p(x + h)`.
fn shift(p: &[Rational], h: &Rational) -> Polynomial {
    let mut r = p.to_vec();
    let n = r.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let carry = Rational::from(h * &r[j + 1]);
            r[j] += carry;
        }
    }
    r
}

fn sub(a: &[Rational], b: &[Rational]) -> Polynomial {
    let n = a.len().max(b.len());
    let zero = Rational::new();
    let mut out: Polynomial = (0..n)
        .map(|i| Rational::from(a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)))
        .collect();
    trim(&mut out);
    out
}

/// An even, compactly supported piecewise polynomial.
///
/// `pieces[i]` is the polynomial on `[breakpoints[i], breakpoints[i+1]]`,
/// in the absolute coordinate `x`. The function vanishes outside
/// `[breakpoints[0], breakpoints[last]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    /// Half-width `S` of the support `[−S, S]`.
    pub fn support(&self) -> &Rational {
        self.breakpoints.last().expect("nonempty")
    }

    pub fn degree(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    /// Exact integral over the support.
    pub fn mass(&self) -> Rational {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .fold(Rational::new(), |acc, (p, w)| {
                let q = antiderivative(p);
                acc + eval(&q, &w[1]) - eval(&q, &w[0])
            })
    }

    /// Value on piece `i` of the extended function that is zero outside.
    fn piece_value(&self, i: Option<usize>, x: &Rational) -> Rational {
        i.map_or_else(Rational::new, |i| eval(&self.pieces[i], x))
    }
}

/// The uniform density `1/(2a)` on `[−a, a]`.
pub fn box_density(a: &Rational) -> Result<PiecewisePolynomial> {
    if *a <= 0 {
        return Err(Error::InvalidParameter(format!(
            "box half-width must be positive, got {a}"
        )));
    }
    Ok(PiecewisePolynomial {
        breakpoints: vec![Rational::from(-a), a.clone()],
        pieces: vec![vec![Rational::from((1, 2)) / a]],
    })
}

/// Exact value of `p` at `x`.
///
/// At a breakpoint the result is the average of the one-sided limits. This
/// only differs from either limit when `p` has degree zero.
pub fn density_at(p: &PiecewisePolynomial, x: &Rational) -> Rational {
    let bp = &p.breakpoints;
    match bp.binary_search(x) {
        Ok(i) => {
            let left = if i == 0 { None } else { Some(i - 1) };
            let right = if i + 1 == bp.len() { None } else { Some(i) };
            (p.piece_value(left, x) + p.piece_value(right, x)) / 2u32
        }
        Err(0) => Rational::new(),
        Err(i) if i == bp.len() => Rational::new(),
        Err(i) => eval(&p.pieces[i - 1], x),
    }
}

/// Convolves `p` with the unit-mass box on `[−a, a]`.
///
/// With `P` the cumulative integral of `p`, the result is
/// `(P(x + a) − P(x − a)) / (2a)`, a piecewise polynomial one degree higher
/// whose breakpoints are `{b ± a}`.
pub fn convolve_box(p: &PiecewisePolynomial, a: &Rational) -> Result<PiecewisePolynomial> {
    if *a <= 0 {
        return Err(Error::InvalidParameter(format!(
            "box half-width must be positive, got {a}"
        )));
    }

    // Cumulative integral: one polynomial per piece, then the total mass to
    // the right of the support.
    let mut cumulative: Vec<Polynomial> = Vec::with_capacity(p.pieces.len());
    let mut running = Rational::new();
    for (piece, w) in p.pieces.iter().zip(p.breakpoints.windows(2)) {
        let mut q = antiderivative(piece);
        let offset = Rational::from(&running - eval(&q, &w[0]));
        if q.is_empty() {
            q.push(offset);
        } else {
            q[0] += offset;
        }
        running = eval(&q, &w[1]);
        trim(&mut q);
        cumulative.push(q);
    }
    let total = running;

    // P on the extended line: 0 left of the support, `total` right of it.
    let cumulative_at = |y: &Rational| -> Option<usize> {
        match p.breakpoints.binary_search(y) {
            Ok(i) | Err(i) => {
                if i == 0 {
                    None
                } else if i >= p.breakpoints.len() {
                    Some(usize::MAX)
                } else {
                    Some(i - 1)
                }
            }
        }
    };
    let poly_of = |slot: Option<usize>| -> Polynomial {
        match slot {
            None => Vec::new(),
            Some(usize::MAX) => vec![total.clone()],
            Some(i) => cumulative[i].clone(),
        }
    };

    let mut breakpoints: Vec<Rational> = p
        .breakpoints
        .iter()
        .flat_map(|b| [Rational::from(b - a), Rational::from(b + a)])
        .collect();
    breakpoints.sort();
    breakpoints.dedup();

    let inv_width = Rational::from((1, 2)) / a;
    let neg_a = Rational::from(-a);
    let pieces = breakpoints
        .windows(2)
        .map(|w| {
            let mid = Rational::from(&w[0] + &w[1]) / 2u32;
            // The slot lookup uses the midpoint so that a window edge landing
            // exactly on a breakpoint of `p` resolves to the correct side.
            let hi = poly_of(cumulative_at(&Rational::from(&mid + a)));
            let lo = poly_of(cumulative_at(&Rational::from(&mid - a)));
            let mut piece = sub(&shift(&hi, a), &shift(&lo, &neg_a));
            for c in &mut piece {
                *c *= &inv_width;
            }
            piece
        })
        .collect();

    Ok(PiecewisePolynomial {
        breakpoints,
        pieces,
    })
}

/// `D_n`: the unit-mass convolution of boxes with the given half-widths.
pub fn convolution_density(widths: &[Rational]) -> Result<PiecewisePolynomial> {
    let (first, rest) = widths
        .split_first()
        .ok_or(Error::EmptyCoefficients)?;
    rest.iter()
        .try_fold(box_density(first)?, |acc, a| convolve_box(&acc, a))
}
