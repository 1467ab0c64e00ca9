//! Arbitrary-precision numeric integration of sinc products over `[0, ∞)`,
//! straight from the integrand.
//!
//! The range is split at `T`. On `[0, T]` the integrand is integrated with
//! Gauss–Legendre rules on panels of length `π / a_max`, comparing each
//! panel's rule against one of double the order. The tail `[T, ∞)` is
//! handled by one of three [`TailMethod`]s:
//!
//! * [`TailMethod::Contour`] (default) expands the integrand into
//!   exponentials `W_Ω e^{iΩt} / t^d`, rotates each positive-frequency term
//!   onto the ray `t = T(1 + iu)` and integrates the resulting smooth,
//!   decaying function of `u` on geometrically growing panels. Negative
//!   frequencies are the conjugates of positive ones and `Ω = 0` is
//!   integrated in closed form.
//! * [`TailMethod::Truncate`] drops the tail and charges the analytic bound
//!   `Π(1/a_k) · T^{1−d} / (d − 1)` to the error. Only practical when the
//!   decay degree `d` is large.
//! * [`TailMethod::AlternatingBlocks`] handles a single sinc factor by
//!   summing half-period blocks with repeated averaging. Best effort: its
//!   error estimate is heuristic.
//!
//! All results are reported divided by π.

use std::collections::{BTreeMap, HashMap};

use rug::ops::Pow;
use rug::Integer;

use crate::bigfloat::{bits_for_digits, BigFloat};
use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    Contour,
    Truncate,
    AlternatingBlocks,
}

#[derive(Clone, Debug)]
pub struct QuadratureConfig {
    /// Target: `|estimate − value/π| < 10^(−digits)`.
    pub digits: u32,
    pub tail: TailMethod,
    /// Starting Gauss order per panel, as a multiple of the digits the panel
    /// must deliver.
    pub order_factor: f64,
    pub max_order: usize,
    pub max_intervals: usize,
    /// Multiplies the automatically chosen split point `T`.
    pub truncation_multiplier: u32,
    /// The contour tail enumerates up to `2^d` exponentials; beyond this many
    /// factors the truncated tail is used instead.
    pub max_expansion_factors: usize,
}

impl QuadratureConfig {
    pub fn new(digits: u32) -> Self {
        Self {
            digits,
            tail: TailMethod::Contour,
            order_factor: 1.5,
            max_order: 512,
            max_intervals: 20_000,
            truncation_multiplier: 1,
            max_expansion_factors: 18,
        }
    }

    pub fn with_tail(mut self, tail: TailMethod) -> Self {
        self.tail = tail;
        self
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    /// Integral divided by π.
    pub estimate: BigFloat,
    /// Bound on `|estimate − value/π|`.
    pub error_bound: BigFloat,
    /// Panels on `[0, T]` plus panels of the tail integral.
    pub intervals_used: usize,
    /// The split point `T`.
    pub truncation: f64,
    /// Set when the error bound is heuristic rather than derived.
    pub best_effort: bool,
}

/// `sinc(a·t)` at the precision of `t`.
pub fn sinc_value(t: &BigFloat, a: &Rational) -> BigFloat {
    let p = t.precision();
    let x = t.mul_rational(a);
    if x.is_zero() {
        return BigFloat::one(p);
    }
    if x.abs() < BigFloat::from_rational(&Rational::from((1, 2)), p) {
        // 1 − x²/3! + x⁴/5! − …, free of the cancellation in sin(x)/x
        let w = p + 8;
        let x = x.with_precision(w);
        let x2 = &x * &x;
        let mut sum = BigFloat::one(w);
        let mut term = BigFloat::one(w);
        for k in 1u64.. {
            term = (&term * &x2).div_int((2 * k) * (2 * k + 1));
            if term.is_zero() {
                break;
            }
            sum = if k % 2 == 1 { &sum - &term } else { &sum + &term };
        }
        return sum.with_precision(p);
    }
    &x.sin() / &x
}

/// The full integrand, prefactor and cosine factor included.
pub fn integrand(c: &Coefficients, t: &BigFloat) -> BigFloat {
    let p = t.precision();
    let mut value = BigFloat::from_rational(c.prefactor(), p);
    if c.cosine_form() {
        value = (&value * &t.mul_rational(c.leading()).cos()).shifted(1);
    }
    for a in c.values() {
        value = &value * &sinc_value(t, a);
    }
    value
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(order: usize, precision: u32) -> Vec<(BigFloat, BigFloat)> {
    assert!(order >= 1);
    let w = precision + 16;
    let one = BigFloat::one(w);
    let n = order as u64;
    // (P_n(x), P_{n−1}(x))
    let legendre = |x: &BigFloat| {
        let mut prev = one.clone();
        let mut cur = x.clone();
        for k in 1..n {
            let next = (&(&x.mul_int(2 * k as i64 + 1) * &cur) - &prev.mul_int(k as i64)).div_int(k + 1);
            prev = cur;
            cur = next;
        }
        if n == 0 {
            (prev.clone(), prev)
        } else {
            (cur, prev)
        }
    };
    let derivative = |x: &BigFloat, pn: &BigFloat, pn1: &BigFloat| {
        // P_n' = n (x P_n − P_{n−1}) / (x² − 1)
        (&(x * pn) - pn1).mul_int(n as i64) / (&(x * x) - &one)
    };
    let tolerance = BigFloat::one(w).shifted(-(w as i64) + 24);

    let mut rule = Vec::with_capacity(order);
    for i in 1..=(order + 1) / 2 {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = BigFloat::from_f64(guess, w);
        let mut settled = false;
        for _ in 0..200 {
            let (pn, pn1) = legendre(&x);
            let dx = &pn / &derivative(&x, &pn, &pn1);
            x = &x - &dx;
            if settled {
                break;
            }
            settled = dx.abs() <= tolerance;
        }
        let (pn, pn1) = legendre(&x);
        let dp = derivative(&x, &pn, &pn1);
        let weight = &BigFloat::from_int(2, w) / &(&(&one - &(&x * &x)) * &(&dp * &dp));
        let is_center = order % 2 == 1 && i == (order + 1) / 2;
        let (x, weight) = (x.with_precision(precision), weight.with_precision(precision));
        if is_center {
            rule.push((BigFloat::zero(precision), weight));
        } else {
            rule.push((-&x, weight.clone()));
            rule.push((x, weight));
        }
    }
    rule
}

pub fn integrate(c: &Coefficients, digits: u32) -> Result<QuadratureResult> {
    integrate_with(c, &QuadratureConfig::new(digits))
}

pub fn integrate_with(c: &Coefficients, config: &QuadratureConfig) -> Result<QuadratureResult> {
    if config.digits == 0 {
        return Err(Error::InvalidParameter("digits must be positive".into()));
    }
    let result = match config.tail {
        // too many factors to expand, but then the decay is fast enough to truncate
        TailMethod::Contour if c.factor_count() > config.max_expansion_factors => truncated(c, config)?,
        TailMethod::Contour => contour::integrate(c, config)?,
        TailMethod::Truncate => truncated(c, config)?,
        TailMethod::AlternatingBlocks => alternating(c, config)?,
    };
    let tolerance = BigFloat::from_rational(
        &Rational::from((1, Integer::from(10).pow(config.digits))),
        result.error_bound.precision(),
    );
    if result.error_bound < tolerance {
        Ok(result)
    } else {
        Err(Error::DidNotConverge(Box::new(result)))
    }
}

/// Shared bookkeeping: tolerances, panel rules and error accumulation.
struct Integrator<'a> {
    config: &'a QuadratureConfig,
    precision: u32,
    rules: HashMap<usize, Vec<(BigFloat, BigFloat)>>,
    panels: usize,
    nodes: usize,
}

impl<'a> Integrator<'a> {
    fn new(config: &'a QuadratureConfig, precision: u32) -> Self {
        Self {
            config,
            precision,
            rules: HashMap::new(),
            panels: 0,
            nodes: 0,
        }
    }

    fn starting_order(&self, local_digits: f64) -> usize {
        let order = (self.config.order_factor * local_digits.max(4.0)).ceil() as usize;
        order.clamp(4, self.config.max_order / 2).next_multiple_of(2)
    }

    fn rule_sum<T, F>(&mut self, order: usize, lo: &BigFloat, hi: &BigFloat, zero: &T, f: &mut F) -> T
    where
        T: Accumulate,
        F: FnMut(&BigFloat) -> T,
    {
        let p = self.precision;
        let rule = self
            .rules
            .entry(order)
            .or_insert_with(|| gauss_legendre(order, p));
        let half = (hi - lo).shifted(-1);
        let mid = (hi + lo).shifted(-1);
        let mut sum = zero.clone();
        for (x, w) in rule.iter() {
            let t = &mid + &(&half * x);
            sum = sum.add(&f(&t).scale(w));
        }
        self.nodes += rule.len();
        sum.scale(&half)
    }

    /// Integrates `f` over `[lo, hi]`, doubling the order until two
    /// successive rules agree within `budget` or `max_order` is reached.
    fn panel<T, F>(&mut self, lo: &BigFloat, hi: &BigFloat, local_digits: f64, budget: &BigFloat, zero: T, mut f: F) -> (T, BigFloat)
    where
        T: Accumulate,
        F: FnMut(&BigFloat) -> T,
    {
        self.panels += 1;
        let mut order = self.starting_order(local_digits);
        let mut coarse = self.rule_sum(order, lo, hi, &zero, &mut f);
        loop {
            let fine = self.rule_sum(2 * order, lo, hi, &zero, &mut f);
            let error = fine.distance(&coarse);
            order *= 2;
            if error <= *budget || 2 * order > self.config.max_order {
                return (fine, error);
            }
            coarse = fine;
        }
    }

    /// Roundoff allowance: a few units in the last place per node evaluation,
    /// times `factor` for the arithmetic inside each evaluation.
    fn roundoff(&self, factor: f64) -> BigFloat {
        let ulps = (self.nodes as f64 + 16.0) * factor.max(1.0) * 8.0;
        BigFloat::one(self.precision)
            .shifted(-(self.precision as i64))
            .mul_int(ulps.ceil() as i64)
    }
}

/// Values a quadrature rule can sum: real or complex.
trait Accumulate: Clone {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, w: &BigFloat) -> Self;
    fn distance(&self, other: &Self) -> BigFloat;
}

impl Accumulate for BigFloat {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, w: &BigFloat) -> Self {
        self * w
    }
    fn distance(&self, other: &Self) -> BigFloat {
        (self - other).abs()
    }
}

fn ten_pow_neg(digits: f64, precision: u32) -> BigFloat {
    // 10^(−digits) rounded down; only used for budgets.
    let exponent = digits.ceil().max(0.0) as u32;
    BigFloat::from_rational(
        &Rational::from((1, Integer::from(10).pow(exponent))),
        precision,
    )
}

fn ln_rational(r: &Rational) -> f64 {
    let n = r.numer().significant_bits() as f64;
    let d = r.denom().significant_bits() as f64;
    // ln of the value via shifted f64 conversions
    let scaled_n = Rational::from((r.numer().clone(), Integer::from(Integer::u_pow_u(2, n as u32)))).to_f64();
    let scaled_d = Rational::from((r.denom().clone(), Integer::from(Integer::u_pow_u(2, d as u32)))).to_f64();
    scaled_n.ln() - scaled_d.ln() + (n - d) * std::f64::consts::LN_2
}

/// Planning quantities shared by all tail methods, in f64.
struct Plan {
    d: usize,
    /// ln of `|prefactor| · (2 if cosine)`, a bound on the integrand.
    ln_amplitude: f64,
    /// ln Π a_k.
    ln_product: f64,
    /// Panel length π / a_max.
    panel: f64,
}

impl Plan {
    fn new(c: &Coefficients) -> Self {
        let cos = if c.cosine_form() { 2f64.ln() } else { 0.0 };
        let prefactor = Rational::from(c.prefactor().abs_ref());
        Self {
            d: c.factor_count(),
            ln_amplitude: ln_rational(&prefactor) + cos,
            ln_product: c.values().iter().map(ln_rational).sum(),
            panel: std::f64::consts::PI / c.leading().to_f64(),
        }
    }

    fn tolerance(digits: u32) -> f64 {
        // absolute, in integral units
        10f64.powi(-(digits as i32)) * std::f64::consts::PI
    }
}

/// Integrates `[0, panels · L]` panel by panel; returns (sum, summed errors).
fn integrate_head(
    integ: &mut Integrator<'_>,
    c: &Coefficients,
    plan: &Plan,
    panels: usize,
    budget_total: &BigFloat,
    digits: u32,
) -> (BigFloat, BigFloat) {
    let p = integ.precision;
    let length = BigFloat::pi(p).mul_rational(&Rational::from(c.leading().recip_ref()));
    let budget = budget_total.div_int(panels as u64);
    let mut sum = BigFloat::zero(p);
    let mut error = BigFloat::zero(p);
    for j in 0..panels {
        let lo = length.mul_int(j as i64);
        let hi = length.mul_int(j as i64 + 1);
        // digits this panel must deliver, given the integrand's size there
        let t = (j as f64 * plan.panel).max(1e-300);
        let ln_bound = plan.ln_amplitude
            - c.values()
                .iter()
                .map(|a| (a.to_f64() * t).ln().max(0.0))
                .sum::<f64>();
        let local = digits as f64 + 2.0 + (ln_bound + plan.panel.ln()) / std::f64::consts::LN_10;
        let (value, err) = integ.panel(&lo, &hi, local, &budget, BigFloat::zero(p), |t| integrand(c, t));
        sum = &sum + &value;
        error = &error + &err;
    }
    (sum, error)
}

fn working_precision(digits: u32, panels: usize, extra_bits: u32) -> u32 {
    let panel_digits = (panels.max(1) as f64).log10().ceil() as u32;
    bits_for_digits(digits + 10 + panel_digits) + extra_bits
}

fn finish(
    sum: BigFloat,
    error: BigFloat,
    panels: usize,
    truncation: f64,
    best_effort: bool,
) -> QuadratureResult {
    let pi = BigFloat::pi(sum.precision());
    QuadratureResult {
        estimate: &sum / &pi,
        // round the bound up by one unit so it stays an upper bound after division
        error_bound: &(&error / &pi) + &BigFloat::one(error.precision()).shifted(-(error.precision() as i64)),
        intervals_used: panels,
        truncation,
        best_effort,
    }
}

fn truncated(c: &Coefficients, config: &QuadratureConfig) -> Result<QuadratureResult> {
    let plan = Plan::new(c);
    let d = plan.d;
    if d < 2 {
        return Err(Error::NotSupported(
            "a single sinc factor does not decay fast enough to truncate".into(),
        ));
    }
    let tol = Plan::tolerance(config.digits);
    // Π min(1, 1/(a_k t)) ≤ Π 1/(a_k t) once t ≥ 1/a_min
    let a_min = c.values().last().expect("nonempty").to_f64();
    let ln_t = (plan.ln_amplitude - plan.ln_product - ((d - 1) as f64).ln() - (tol / 4.0).ln())
        / (d - 1) as f64;
    let t_star = ln_t.exp().max(1.0 / a_min).max(plan.panel);
    let panels = (t_star / plan.panel).ceil() as usize * config.truncation_multiplier.max(1) as usize;
    if panels > config.max_intervals {
        return Err(Error::NotSupported(format!(
            "truncation needs {panels} panels (limit {}); use the contour tail",
            config.max_intervals
        )));
    }
    let truncation = panels as f64 * plan.panel;
    let ln_tail = plan.ln_amplitude - plan.ln_product + (1.0 - d as f64) * truncation.ln()
        - ((d - 1) as f64).ln();

    let p = working_precision(config.digits, panels, 16);
    let mut integ = Integrator::new(config, p);
    let head_budget = BigFloat::from_f64(tol / 4.0, p);
    let (sum, head_error) = integrate_head(&mut integ, c, &plan, panels, &head_budget, config.digits);
    let tail_bound = BigFloat::from_f64(ln_tail.exp() * (1.0 + 1e-12), p);
    let roundoff = integ.roundoff(d as f64 + 4.0);
    let error = &(&head_error + &tail_bound) + &roundoff;
    Ok(finish(sum, error, integ.panels, truncation, false))
}

fn alternating(c: &Coefficients, config: &QuadratureConfig) -> Result<QuadratureResult> {
    if c.factor_count() != 1 {
        return Err(Error::NotSupported(
            "alternating blocks need a single sinc factor".into(),
        ));
    }
    let levels = config.digits as usize + 8;
    let blocks = 3 * levels;
    let p = working_precision(config.digits, blocks, 24);
    let mut integ = Integrator::new(config, p);
    // zeros of sin(ωt), with 2cos(at)·sin(at) = sin(2at) in cosine form
    let frequency = if c.cosine_form() {
        Rational::from(c.leading() * 2u32)
    } else {
        c.leading().clone()
    };
    let block = BigFloat::pi(p).mul_rational(&Rational::from(frequency.recip_ref()));
    let budget = ten_pow_neg(config.digits as f64 + 4.0, p);

    let mut partial = Vec::with_capacity(blocks);
    let mut running = BigFloat::zero(p);
    let mut rule_error = BigFloat::zero(p);
    for j in 0..blocks {
        let lo = block.mul_int(j as i64);
        let hi = block.mul_int(j as i64 + 1);
        let (value, err) = integ.panel(&lo, &hi, config.digits as f64 + 4.0, &budget, BigFloat::zero(p), |t| {
            integrand(c, t)
        });
        running = &running + &value;
        rule_error = &rule_error + &err;
        partial.push(running.clone());
    }
    // Euler: repeatedly average neighbouring partial sums.
    let mut previous = partial.last().cloned().expect("blocks");
    for _ in 0..levels {
        previous = partial.last().cloned().expect("blocks");
        partial = partial
            .windows(2)
            .map(|w| (&w[0] + &w[1]).shifted(-1))
            .collect();
    }
    let sum = partial.last().cloned().expect("blocks");
    let acceleration = (&sum - &previous).abs();
    let error = &(&rule_error + &acceleration) + &integ.roundoff(8.0);
    let truncation = block.to_f64() * blocks as f64;
    Ok(finish(sum, error, integ.panels, truncation, true))
}

mod contour {
    //! Tail integral by rotating each exponential onto `t = T(1 + iu)`.
    //!
    //! With `f(t) = C · i^{−d} · Σ_Ω W_Ω e^{iΩt} / t^d` and
    //! `C = prefactor / (2^d Π a_k)`,
    //!
    //! ```text
    //! ∫_T^∞ e^{iΩt} t^{−d} dt = i T^{1−d} e^{iΩT} ∫_0^∞ e^{−ΩTu} (1 + iu)^{−d} du   (Ω > 0)
    //! ```
    //!
    //! and `W_{−Ω} = (−1)^d W_Ω`. Writing `V = ∫_0^∞ (1+iu)^{−d} Σ_{Ω>0} W_Ω
    //! e^{iΩT} e^{−ΩTu} du`, the tail is `C T^{1−d}` times
    //! `(−1)^{d/2} (W_0/(d−1) − 2 Im V)` for even `d` and
    //! `2 (−1)^{(d−1)/2} Re V` for odd `d`.

    use super::*;

    #[derive(Clone, Debug)]
    struct Complex {
        re: BigFloat,
        im: BigFloat,
    }

    impl Complex {
        fn zero(p: u32) -> Self {
            Self {
                re: BigFloat::zero(p),
                im: BigFloat::zero(p),
            }
        }

        fn mul(&self, o: &Self) -> Self {
            Self {
                re: &(&self.re * &o.re) - &(&self.im * &o.im),
                im: &(&self.re * &o.im) + &(&self.im * &o.re),
            }
        }
    }

    impl Accumulate for Complex {
        fn add(&self, o: &Self) -> Self {
            Self {
                re: &self.re + &o.re,
                im: &self.im + &o.im,
            }
        }
        fn scale(&self, w: &BigFloat) -> Self {
            Self {
                re: &self.re * w,
                im: &self.im * w,
            }
        }
        fn distance(&self, o: &Self) -> BigFloat {
            // |Δre| + |Δim| bounds the modulus
            &(&self.re - &o.re).abs() + &(&self.im - &o.im).abs()
        }
    }

    /// Exponential expansion: frequency numerators (over `denominator`) with
    /// nonzero integer weights, for `Ω ≥ 0` only.
    struct Expansion {
        denominator: Integer,
        zero_weight: i64,
        positive: Vec<(Integer, i64)>,
    }

    fn expand(c: &Coefficients) -> Expansion {
        let denominator = c
            .values()
            .iter()
            .fold(Integer::from(1), |l, v| l.lcm(v.denom()));
        let scaled = |v: &Rational| Integer::from(v.numer() * &denominator) / v.denom();

        let mut terms: BTreeMap<Integer, i64> = BTreeMap::new();
        terms.insert(Integer::new(), 1);
        let step = |terms: &BTreeMap<Integer, i64>, a: &Integer, sign: i64| {
            let mut next: BTreeMap<Integer, i64> = BTreeMap::new();
            for (omega, w) in terms {
                *next.entry(Integer::from(omega + a)).or_default() += w;
                *next.entry(Integer::from(omega - a)).or_default() += sign * w;
            }
            next.retain(|_, w| *w != 0);
            next
        };
        for v in c.values() {
            terms = step(&terms, &scaled(v), -1);
        }
        if c.cosine_form() {
            terms = step(&terms, &scaled(c.leading()), 1);
        }
        let zero_weight = terms.get(&Integer::new()).copied().unwrap_or(0);
        let positive = terms.into_iter().filter(|(o, _)| *o > 0).collect();
        Expansion {
            denominator,
            zero_weight,
            positive,
        }
    }

    pub(super) fn integrate(c: &Coefficients, config: &QuadratureConfig) -> Result<QuadratureResult> {
        let d = c.factor_count();
        if d > config.max_expansion_factors {
            return Err(Error::NotSupported(format!(
                "{d} sinc factors exceed the exponential-expansion limit {}",
                config.max_expansion_factors
            )));
        }
        let plan = Plan::new(c);
        let tol = Plan::tolerance(config.digits);
        let expansion = expand(c);

        // Split where |C| · Σ|W| · T^{−d} drops to about one, so the
        // expansion's terms do not cancel catastrophically.
        let weight_total: f64 = expansion.positive.iter().map(|(_, w)| w.unsigned_abs() as f64).sum::<f64>() * 2.0
            + expansion.zero_weight.unsigned_abs() as f64;
        let ln_c = plan.ln_amplitude - (d as f64) * 2f64.ln() - plan.ln_product
            - if c.cosine_form() { 2f64.ln() } else { 0.0 };
        let ln_split = (ln_c + weight_total.max(1.0).ln()) / d as f64;
        let head_panels = ((ln_split.exp() / plan.panel).ceil().max(1.0) as usize)
            * config.truncation_multiplier.max(1) as usize;
        if head_panels > config.max_intervals {
            return Err(Error::NotSupported(format!(
                "split point needs {head_panels} panels (limit {})",
                config.max_intervals
            )));
        }
        let split = head_panels as f64 * plan.panel;
        // ln(C · T^{1−d}), the scale of the tail
        let ln_scale = ln_c + (1.0 - d as f64) * split.ln();

        // u-range: stop once the remainder bound is below tol/8.
        let omega_min = expansion
            .positive
            .first()
            .map(|(o, _)| Rational::from((o.clone(), expansion.denominator.clone())).to_f64() * split);
        let omega_max = expansion
            .positive
            .last()
            .map(|(o, _)| Rational::from((o.clone(), expansion.denominator.clone())).to_f64() * split);
        let positive_weight: f64 = expansion.positive.iter().map(|(_, w)| w.unsigned_abs() as f64).sum();
        let remainder = |u: f64| -> f64 {
            let Some(lambda) = omega_min else { return 0.0 };
            let exponential = (-lambda * u).exp() / (lambda * u.powi(d as i32));
            let algebraic = if d >= 2 {
                u.powf(1.0 - d as f64) / (d - 1) as f64
            } else {
                f64::INFINITY
            };
            2.0 * (ln_scale.exp()) * positive_weight * exponential.min(algebraic)
        };
        let first = omega_max.map_or(1.0, |l| (1.0 / l).min(1.0));
        let mut edges = vec![0.0, first];
        while remainder(*edges.last().unwrap()) > tol / 8.0 {
            let next = edges.last().unwrap() * 2.0;
            if edges.len() > 400 || !next.is_finite() {
                return Err(Error::NotSupported("tail integral does not decay".into()));
            }
            edges.push(next);
        }
        let tail_cut = remainder(*edges.last().unwrap());

        let max_numerator = expansion
            .positive
            .last()
            .map_or(1, |(o, _)| o.significant_bits());
        let magnitude_bits = (ln_scale.max(0.0) / std::f64::consts::LN_2).ceil() as u32
            + (weight_total.max(1.0).log2().ceil() as u32)
            + (plan.ln_amplitude.max(0.0) / std::f64::consts::LN_2).ceil() as u32;
        let p = working_precision(
            config.digits,
            head_panels + edges.len(),
            24 + max_numerator + magnitude_bits,
        );
        let mut integ = Integrator::new(config, p);

        let head_budget = BigFloat::from_f64(tol / 4.0, p);
        let (head, head_error) = integrate_head(&mut integ, c, &plan, head_panels, &head_budget, config.digits);

        // tail
        let t = BigFloat::pi(p).mul_int(head_panels as i64).mul_rational(&Rational::from(c.leading().recip_ref()));
        let phases: Vec<(Integer, Complex, i64)> = expansion
            .positive
            .iter()
            .map(|(o, w)| {
                let angle = t.mul_rational(&Rational::from((o.clone(), expansion.denominator.clone())));
                let (s, cs) = angle.sin_cos();
                (o.clone(), Complex { re: cs, im: s }, *w)
            })
            .collect();
        let t_over_den = t.mul_rational(&Rational::from((1, expansion.denominator.clone())));

        // C · T^{1−d}, exactly up to rounding
        let c_exact = Rational::from(c.prefactor() / c.product()) / Integer::from(Integer::u_pow_u(2, d as u32));
        let mut scale = BigFloat::from_rational(&c_exact, p);
        for _ in 1..d {
            scale = &scale / &t;
        }
        let scale_f = ln_scale.exp();
        let v_budget = BigFloat::from_f64(tol / 4.0 / (2.0 * scale_f * (edges.len() as f64)), p);
        let d_i64 = d as i64;

        let mut v = Complex::zero(p);
        let mut v_error = BigFloat::zero(p);
        for w in edges.windows(2) {
            let lo = BigFloat::from_f64(w[0], p);
            let hi = BigFloat::from_f64(w[1], p);
            let local = config.digits as f64 + 2.0 + (2.0 * scale_f * positive_weight).log10().max(0.0);
            let (value, err) = integ.panel(&lo, &hi, local, &v_budget, Complex::zero(p), |u| {
                // (1 + iu)^{−d} = (1 − iu)^d / (1 + u²)^d
                let mut power = Complex {
                    re: BigFloat::one(p),
                    im: BigFloat::zero(p),
                };
                let base = Complex {
                    re: BigFloat::one(p),
                    im: -u,
                };
                for _ in 0..d_i64 {
                    power = power.mul(&base);
                }
                let modulus = &BigFloat::one(p) + &(u * u);
                let mut denom = BigFloat::one(p);
                for _ in 0..d_i64 {
                    denom = &denom * &modulus;
                }
                let kernel = Complex {
                    re: &power.re / &denom,
                    im: &power.im / &denom,
                };

                // Σ W_Ω e^{iΩT} q^{m_Ω},  q = e^{−Tu/denominator}
                let q = (-&(&t_over_den * u)).exp();
                let mut sum = Complex::zero(p);
                let mut q_power = BigFloat::one(p);
                let mut exponent = Integer::new();
                for (m, phase, weight) in &phases {
                    let gap = Integer::from(m - &exponent);
                    q_power = &q_power * &pow(&q, &gap);
                    exponent = m.clone();
                    if q_power.is_zero() {
                        break;
                    }
                    let factor = q_power.mul_int(*weight);
                    sum = sum.add(&phase.scale(&factor));
                }
                sum.mul(&kernel)
            });
            v = v.add(&value);
            v_error = &v_error + &err;
        }

        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        let tail_unscaled = if d % 2 == 0 {
            let zero_term = BigFloat::from_int(expansion.zero_weight, p).div_int((d - 1) as u64);
            (&zero_term - &v.im.shifted(1)).mul_int(sign(d / 2))
        } else {
            v.re.shifted(1).mul_int(sign((d - 1) / 2))
        };
        let tail = &tail_unscaled * &scale;

        let tail_error = &(&v_error.shifted(1) * &scale) + &BigFloat::from_f64(tail_cut * (1.0 + 1e-9), p);
        let roundoff = integ.roundoff((d as f64 + 4.0) * (1.0 + 2.0 * scale_f * positive_weight) + phases.len() as f64);
        let sum = &head + &tail;
        let error = &(&head_error + &tail_error) + &roundoff;
        Ok(finish(sum, error, integ.panels, split, false))
    }

    fn pow(base: &BigFloat, exponent: &Integer) -> BigFloat {
        let mut result = BigFloat::one(base.precision());
        let mut square = base.clone();
        let bits = exponent.significant_bits();
        for i in 0..bits {
            if exponent.get_bit(i) {
                result = &result * &square;
            }
            if i + 1 < bits {
                square = &square * &square;
                if square.is_zero() {
                    // remaining set bits would only multiply by zero
                    if (i + 1..bits).any(|j| exponent.get_bit(j)) {
                        return BigFloat::zero(base.precision());
                    }
                    break;
                }
            }
        }
        result
    }
}
