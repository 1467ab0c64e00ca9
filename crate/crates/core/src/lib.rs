//! Exact and high-precision evaluation of integrals of sinc products,
//!
//! ```text
//! prefactor · ∫_0^∞ [2 cos(a_0 t)] · Π_{k=0}^n sinc(a_k t) dt,
//! ```
//!
//! with rational frequencies `a_0 ≥ a_1 ≥ … ≥ a_n > 0`.
//!
//! Exact values come out as rational multiples of π, either from closed
//! forms (the plateau and the first overshoot) or from one of two general
//! methods: sequential box convolution and a truncated-power sign sum. An
//! arbitrary-precision quadrature of the original oscillatory integrand
//! serves as an independent check.

pub mod bigfloat;
pub mod coefficients;
pub mod density;
pub mod error;
pub mod eval;
pub mod families;
pub mod quadrature;
pub mod rational;
pub mod record;
pub mod reproduce;
pub mod sums;

pub use bigfloat::BigFloat;
pub use coefficients::Coefficients;
pub use error::{Error, Result};
pub use eval::{evaluate, Evaluation, EvalConfig, Method};
pub use families::{absorb_cosine, classify, family_i, family_j, family_k, Regime, RegimeTag};
pub use quadrature::{integrate, QuadratureConfig, QuadratureResult};
pub use rational::{PiMultiple, Rational};
pub use sums::{first_violation, odd_reciprocal_sum, OddReciprocals};
