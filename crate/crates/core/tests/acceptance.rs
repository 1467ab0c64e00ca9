//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! with its timing, and exits nonzero if any line fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rug::ops::Pow;
use rug::Integer;

use sincprod::density::{convolve_box, density_at, box_density};
use sincprod::eval::{eval_closed, eval_signsum, eval_spline};
use sincprod::rational::{decimal_exponent, parse_rational, to_scientific};
use sincprod::record::{exact_value_and_record, Cache, Family};
use sincprod::{
    classify, evaluate, family_i, family_j, family_k, first_violation, integrate, Coefficients,
    OddReciprocals, PiMultiple, Rational, RegimeTag,
};

const I7_OF_2: &str = "168579263752211300739165075916829279/337158527504429357358419617830000000";

struct Outcome {
    passed: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { passed: ok, detail }
}

fn ten_pow_neg(k: u32) -> Rational {
    Rational::from((1, Integer::from(10).pow(k)))
}

fn decimal(s: &str) -> Rational {
    let (w, f) = s.split_once('.').expect("decimal point");
    parse_rational(&format!("{w}{f}/1{}", "0".repeat(f.len()))).expect("decimal")
}

fn criterion_1() -> Outcome {
    let expected = [(1u32, 1u64), (2, 7), (3, 56), (4, 418), (5, 3091)];
    let mut found = Vec::new();
    let mut ok = true;
    for (budget, n) in expected {
        match first_violation(&Rational::from(budget), OddReciprocals::from(0)) {
            Ok(got) => {
                ok &= got == n;
                found.push(format!("{budget}→{got}"));
            }
            Err(e) => return fail(e.to_string()),
        }
    }
    check(ok, found.join(" "))
}

fn criterion_2() -> Outcome {
    let expected = parse_rational(I7_OF_2).unwrap();
    let c = family_i(&Rational::from(2), 7).unwrap();
    let spline = eval_spline(&c).unwrap().coefficient;
    let signsum = eval_signsum(&c).unwrap().coefficient;
    let dispatched = evaluate(&c).unwrap().value.coefficient;
    check(
        spline == expected && signsum == expected && dispatched == expected,
        format!("spline, signsum and evaluate all equal {I7_OF_2}·π"),
    )
}

fn criterion_3() -> Outcome {
    let c = family_i(&Rational::from(2), 7).unwrap();
    let r = match integrate(&c, 22) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let diff = Rational::from(r.estimate.to_rational() - decimal("0.4999999999999899811")).abs();
    check(
        diff < ten_pow_neg(19),
        format!("{} (error bound {})", r.estimate.to_decimal(22), to_scientific(&r.error_bound.to_rational(), 2)),
    )
}

fn criterion_4() -> Outcome {
    for n in [0, 1, 7, 30, 55] {
        let e = evaluate(&family_k(n)).unwrap();
        if e.value != PiMultiple::half_pi() {
            return fail(format!("K_{n} = {}", e.value));
        }
    }
    let k56 = evaluate(&family_k(56)).unwrap();
    let deficit = k56.value.deficit_from_half();
    if deficit <= 0 {
        return fail("K_56 is not below π/2");
    }
    let exponent = decimal_exponent(&deficit).unwrap();
    check(
        (-140..=-136).contains(&exponent) && k56.value < PiMultiple::half_pi(),
        format!("K_0,1,7,30,55 = π/2; π/2 − K_56 = {}·π, exponent {exponent}", to_scientific(&deficit, 4)),
    )
}

fn criterion_5() -> Outcome {
    for n in 0..=6 {
        if evaluate(&family_j(n)).unwrap().value != PiMultiple::half_pi() {
            return fail(format!("J_{n} is not π/2"));
        }
    }
    let c = family_j(7);
    let closed = eval_closed(&c).unwrap().expect("first overshoot");
    let spline = eval_spline(&c).unwrap();
    let signsum = eval_signsum(&c).unwrap();
    if !(closed < PiMultiple::half_pi() && closed == spline && closed == signsum) {
        return fail("J_7 exact routes disagree or J_7 ≥ π/2");
    }
    let r = match integrate(&c, 25) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let diff = Rational::from(r.estimate.to_rational() - &closed.coefficient).abs();
    check(
        diff < ten_pow_neg(25),
        format!(
            "J_0..6 = π/2; J_7 three-way exact; quadrature {} off by {}",
            r.estimate.to_decimal(25),
            to_scientific(&diff, 2)
        ),
    )
}

fn rational_strategy(max: u32) -> impl Strategy<Value = Rational> {
    (1..=max, 1..=max).prop_map(|(n, d)| Rational::from((n, d)))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

const CASES: u32 = 200;

fn plateau_property() -> Result<(), String> {
    let strategy = (prop::collection::vec(rational_strategy(12), 1..=8), 0u32..4, rational_strategy(12));
    runner(CASES)
        .run(&strategy, |(rest, slack_kind, slack)| {
            let sum = rest.iter().fold(Rational::new(), |s, a| s + a);
            // exact boundary in a quarter of the cases
            let a0 = if slack_kind == 0 { sum } else { sum + slack };
            let mut values = rest.clone();
            values.push(a0.clone());
            let c = Coefficients::new(values, false).unwrap();
            let expected = PiMultiple::new(Rational::from((1, 2)) / &a0);
            prop_assert_eq!(classify(&c).tag, RegimeTag::Plateau);
            prop_assert_eq!(&evaluate(&c).unwrap().value, &expected);
            prop_assert_eq!(&eval_spline(&c).unwrap(), &expected);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn dual_method_property() -> Result<(), String> {
    let strategy = prop::collection::vec(rational_strategy(9), 1..=11);
    runner(CASES)
        .run(&strategy, |values| {
            let c = Coefficients::new(values, false).unwrap();
            let spline = eval_spline(&c).unwrap();
            let signsum = eval_signsum(&c).unwrap();
            prop_assert_eq!(&spline, &signsum);
            if let Some(closed) = eval_closed(&c).unwrap() {
                prop_assert_eq!(&closed, &spline);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn convolution_property() -> Result<(), String> {
    let strategy = prop::collection::vec(rational_strategy(9), 1..=8);
    runner(CASES)
        .run(&strategy, |widths| {
            let mut density = box_density(&widths[0]).unwrap();
            for (step, a) in widths.iter().enumerate() {
                if step > 0 {
                    density = convolve_box(&density, a).unwrap();
                }
                prop_assert_eq!(density.mass(), 1);
                let bp = density.breakpoints();
                for (lo, hi) in bp.iter().zip(bp.iter().rev()) {
                    prop_assert_eq!(Rational::from(-lo), hi.clone());
                }
                for w in bp.windows(2) {
                    let mid = Rational::from(&w[0] + &w[1]) / 2u32;
                    for x in [w[0].clone(), mid] {
                        prop_assert_eq!(density_at(&density, &x), density_at(&density, &Rational::from(-&x)));
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn cosine_identity_property() -> Result<(), String> {
    let strategy = prop::collection::vec(rational_strategy(6), 1..=7);
    runner(CASES)
        .run(&strategy, |values| {
            let eps = Coefficients::new(values, true).unwrap();
            let mut tau_values = eps.values().to_vec();
            tau_values[0] *= 2u32;
            let tau = Coefficients::new(tau_values, false).unwrap();
            let exact = evaluate(&tau).unwrap().value.coefficient * 2u32;
            let numeric = integrate(&eps, 20).map_err(|e| TestCaseError::fail(format!("{eps}: {e}")))?;
            let diff = Rational::from(numeric.estimate.to_rational() - &exact).abs();
            prop_assert!(diff < ten_pow_neg(20), "{}: off by {}", eps, to_scientific(&diff, 3));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, property) in [
        ("plateau", plateau_property as fn() -> Result<(), String>),
        ("spline=signsum", dual_method_property),
        ("mass/symmetry", convolution_property),
        ("cosine identity", cosine_identity_property),
    ] {
        let start = Instant::now();
        match property() {
            Ok(()) => parts.push(format!("{name} {CASES} cases {:.1?}", start.elapsed())),
            Err(e) => {
                ok = false;
                parts.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    check(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let family = Family::I {
        b: Rational::from(5),
        n: 3091,
    };
    let c = family.coefficients().unwrap();
    let regime = classify(&c);
    let min = c.rest().last().unwrap();
    let valid = regime.tag == RegimeTag::FirstOvershoot
        && regime.excess > 0
        && regime.excess <= Rational::from(min * 2u32);
    if !valid {
        return fail(format!("regime {} excess {}", regime.tag, regime.excess));
    }

    let dir = std::env::temp_dir().join(format!("sincprod-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cache.jsonl");
    let first = Instant::now();
    let (value, _) = exact_value_and_record(&family, &Default::default(), 30, &mut Cache::open(&path).unwrap()).unwrap();
    let computed = first.elapsed();
    let second = Instant::now();
    let (cached, record) = exact_value_and_record(&family, &Default::default(), 30, &mut Cache::open(&path).unwrap()).unwrap();
    let reloaded = second.elapsed();
    std::fs::remove_dir_all(&dir).unwrap();

    let deficit = value.deficit_from_half();
    check(
        deficit > 0 && cached == value && record.method == "overshoot",
        format!(
            "first overshoot verified; π/2 − I = {}·π; computed {computed:.1?}, from cache {reloaded:.1?}",
            to_scientific(&deficit, 4)
        ),
    )
}

fn criterion_8() -> Outcome {
    let output = Command::new(env!("CARGO_BIN_EXE_sincprod"))
        .arg("reproduce")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    let passes = lines.iter().filter(|l| l.starts_with("PASS")).count();
    let covers = (1..=5).all(|k| lines.iter().any(|l| l.starts_with(&format!("PASS [{k}]"))));
    check(
        output.status.success() && covers && passes == lines.len(),
        format!("exit {:?}, {passes}/{} PASS lines", output.status.code(), lines.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome, Option<Duration>); 8] = [
        (1, "thresholds", criterion_1, Some(Duration::from_secs(10))),
        (2, "I_7(2) exact", criterion_2, Some(Duration::from_secs(5))),
        (3, "I_7(2) numeric", criterion_3, Some(Duration::from_secs(60))),
        (4, "K family", criterion_4, Some(Duration::from_secs(10))),
        (5, "J family", criterion_5, Some(Duration::from_secs(60))),
        (6, "property suite", criterion_6, None),
        (7, "I_3091(5) closed form", criterion_7, Some(Duration::from_secs(120))),
        (8, "reproduce CLI", criterion_8, None),
    ];
    let mut failures = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed >= limit {
                outcome.passed = false;
                outcome.detail.push_str(&format!("; over the {limit:?} limit"));
            }
        }
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {id} ({name}, {elapsed:.2?}): {}", outcome.detail);
        failures += usize::from(!outcome.passed);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
