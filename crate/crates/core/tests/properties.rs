use proptest::prelude::*;
use rug::Integer;

use sincprod::density::{convolution_density, density_at};
use sincprod::eval::{eval_signsum, eval_spline, evaluate_with, EvalConfig, Method};
use sincprod::rational::{format_rational, parse_rational, to_decimal};
use sincprod::record::{Family, ResultRecord};
use sincprod::sums::first_violation_detailed;
use sincprod::{absorb_cosine, classify, evaluate, integrate, Coefficients, PiMultiple, Rational, RegimeTag};

fn rational(max: u32) -> impl Strategy<Value = Rational> {
    (1..=max, 1..=max).prop_map(|(n, d)| Rational::from((n, d)))
}

fn signed_rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rational_text_round_trips(r in signed_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn decimal_rounding_is_within_half_ulp(r in signed_rational(), digits in 0u32..12) {
        let text = to_decimal(&r, digits);
        let (w, f) = text.split_once('.').unwrap_or((&text, ""));
        let back = parse_rational(&format!("{w}{f}/1{}", "0".repeat(f.len()))).unwrap();
        let half_ulp = Rational::from((1, Integer::from(Integer::u_pow_u(10, digits)) * 2u32));
        prop_assert!(Rational::from(back - &r).abs() <= half_ulp);
    }

    #[test]
    fn evaluation_is_homogeneous(values in prop::collection::vec(rational(9), 1..=6), s in rational(7)) {
        // scaling every frequency by s divides the integral by s
        let c = Coefficients::new(values.clone(), false).unwrap();
        let scaled: Vec<Rational> = values.iter().map(|v| Rational::from(v * &s)).collect();
        let cs = Coefficients::new(scaled, false).unwrap();
        let v = evaluate_with(&c, &EvalConfig::default()).unwrap().value;
        let vs = evaluate_with(&cs, &EvalConfig::default()).unwrap().value;
        prop_assert_eq!(vs.scale(&s), v);
    }

    #[test]
    fn adding_a_factor_never_raises_the_value(values in prop::collection::vec(rational(9), 1..=6), extra in rational(9)) {
        // D_n(0) is the peak of a symmetric unimodal density
        let c = Coefficients::new(values.clone(), false).unwrap();
        let mut more = values;
        more.push(extra);
        let c2 = Coefficients::new(more, false).unwrap();
        prop_assert!(eval_spline(&c2).unwrap().coefficient * c2.leading() <= eval_spline(&c).unwrap().coefficient * c2.leading());
    }

    #[test]
    fn density_is_unimodal_and_nonnegative(widths in prop::collection::vec(rational(6), 1..=6)) {
        let d = convolution_density(&widths).unwrap();
        let zero = density_at(&d, &Rational::new());
        let bp = d.breakpoints();
        let mut previous = zero.clone();
        for x in bp.iter().filter(|x| **x >= 0) {
            let v = density_at(&d, x);
            prop_assert!(v >= 0);
            prop_assert!(v <= zero);
            if *x > 0 {
                prop_assert!(v <= previous);
            }
            previous = v;
        }
    }

    #[test]
    fn absorption_matches_direct_doubling(values in prop::collection::vec(rational(8), 1..=7)) {
        let eps = Coefficients::new(values, true).unwrap();
        let tau = absorb_cosine(&eps).unwrap();
        prop_assert_eq!(tau.values()[0].clone(), Rational::from(eps.leading() * 2u32));
        prop_assert_eq!(tau.prefactor().clone(), Rational::from(2));
        prop_assert_eq!(evaluate(&eps).unwrap().value, evaluate(&tau).unwrap().value);
    }

    #[test]
    fn closed_form_regimes_dispatch_to_closed_form(values in prop::collection::vec(rational(9), 1..=10)) {
        let c = Coefficients::new(values, false).unwrap();
        let e = evaluate(&c).unwrap();
        match classify(&c).tag {
            RegimeTag::Plateau => prop_assert_eq!(e.method, Method::Plateau),
            RegimeTag::FirstOvershoot => prop_assert_eq!(e.method, Method::Overshoot),
            RegimeTag::Deep => prop_assert_eq!(e.method, Method::Spline),
        }
        prop_assert_eq!(e.value, eval_signsum(&c).unwrap());
    }

    #[test]
    fn threshold_brackets_budget(budget in rational(4)) {
        let v = first_violation_detailed(&budget, sincprod::OddReciprocals::from(0), 1_000_000).unwrap();
        prop_assert!(v.below <= budget);
        prop_assert!(v.above > budget);
    }

    #[test]
    fn records_round_trip(values in prop::collection::vec(rational(9), 1..=5), digits in 1u32..40) {
        let family = Family::Tau(values);
        let e = evaluate(&family.coefficients().unwrap()).unwrap();
        let record = ResultRecord::from_exact(&family, &e.value, e.method, e.regime.tag.as_str(), digits, 7);
        let line = record.to_line();
        let back = ResultRecord::from_line(&line).unwrap();
        prop_assert_eq!(back.to_line(), line);
        prop_assert_eq!(back.exact_value().unwrap(), Some(e.value.clone()));
        prop_assert_eq!(back.decimal, to_decimal(&e.value.coefficient, digits));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quadrature_agrees_with_exact(values in prop::collection::vec(rational(5), 1..=5)) {
        let c = Coefficients::new(values, false).unwrap();
        let exact = evaluate(&c).unwrap().value;
        let r = integrate(&c, 18).unwrap();
        let diff = Rational::from(r.estimate.to_rational() - &exact.coefficient).abs();
        prop_assert!(diff < Rational::from((1, Integer::from(Integer::u_pow_u(10, 18)))), "{}", c);
        prop_assert!(exact <= PiMultiple::new(Rational::from((1, 2)) / c.leading()));
    }
}
