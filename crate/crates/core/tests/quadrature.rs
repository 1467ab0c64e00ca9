use rug::ops::Pow;
use sincprod::bigfloat::BigFloat;
use sincprod::eval::{evaluate_with, EvalConfig};
use sincprod::families::{family_i, family_j, family_k};
use sincprod::quadrature::{integrand, integrate_with, sinc_value, QuadratureConfig, TailMethod};
use sincprod::{Coefficients, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn gap(a: &BigFloat, b: &Rational) -> Rational {
    Rational::from(a.to_rational() - b).abs()
}

fn ten_to_minus(digits: u32) -> Rational {
    Rational::from((1, rug::Integer::from(10u32).pow(digits)))
}

#[test]
fn integrand_reference_points() {
    let p = 200;
    let zero = BigFloat::zero(p);
    assert_eq!(integrand(&family_j(0), &zero).to_rational(), 1);
    assert_eq!(integrand(&family_k(0), &zero).to_rational(), 2);
    let at_pi = integrand(&family_k(0), &BigFloat::pi(p));
    assert!(at_pi.abs().to_rational() < ten_to_minus(50));
    let half_pi = BigFloat::pi(p).shifted(-1);
    let two_over_pi = &BigFloat::from_int(2, p) / &BigFloat::pi(p);
    assert!(gap(&sinc_value(&half_pi, &q(1, 1)), &two_over_pi.to_rational()) < ten_to_minus(50));
}

#[test]
fn agrees_with_exact_at_thirty_digits() {
    let config = QuadratureConfig::new(30);
    for c in [
        family_j(3),
        family_i(&q(3, 2), 4).unwrap(),
        Coefficients::new(vec![q(1, 1), q(1, 2), q(1, 3), q(1, 4), q(1, 5), q(1, 6)], false).unwrap(),
        Coefficients::new(vec![q(1, 1), q(2, 3), q(1, 5)], true).unwrap(),
    ] {
        let exact = evaluate_with(&c, &EvalConfig::default()).unwrap().value.coefficient;
        let result = integrate_with(&c, &config).unwrap();
        assert!(gap(&result.estimate, &exact) < ten_to_minus(30), "{c}");
        assert!(result.error_bound.to_rational() < ten_to_minus(30));
    }
}

#[test]
fn more_digits_never_loosen_the_bound() {
    let c = family_i(&q(2, 1), 3).unwrap();
    let mut previous: Option<Rational> = None;
    for digits in [10, 20, 30, 40] {
        let bound = integrate_with(&c, &QuadratureConfig::new(digits)).unwrap().error_bound.to_rational();
        if let Some(p) = &previous {
            assert!(bound <= *p, "{digits}");
        }
        previous = Some(bound);
    }
}

#[test]
fn doubling_the_split_point_stays_within_the_bound() {
    // truncation is only practical once the integrand decays quickly
    for (tail, c) in [(TailMethod::Contour, family_j(2)), (TailMethod::Truncate, family_j(6))] {
        let config = QuadratureConfig::new(12).with_tail(tail);
        let first = integrate_with(&c, &config).unwrap();
        let second = integrate_with(&c, &QuadratureConfig { truncation_multiplier: 2, ..config.clone() }).unwrap();
        let change = gap(&first.estimate, &second.estimate.to_rational());
        let allowed = Rational::from(first.error_bound.to_rational() + second.error_bound.to_rational());
        assert!(change <= allowed, "{tail:?}");
    }
}

#[test]
fn many_factors_fall_back_to_truncation() {
    let c = family_k(20);
    let config = QuadratureConfig::new(15);
    assert!(c.factor_count() > config.max_expansion_factors);
    let result = integrate_with(&c, &config).unwrap();
    assert!(gap(&result.estimate, &q(1, 2)) < ten_to_minus(15));
}
