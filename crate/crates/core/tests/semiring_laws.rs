use gameprov::gen;
use gameprov::semiring::{check_law, Law, Semiring, Value};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

const HANDLES: &[&str] = &[
    "bool",
    "nat",
    "natinf",
    "tropical",
    "viterbi",
    "access",
    "minmax:lo,mid,hi",
    "natpoly",
    "boolpoly",
    "whypoly",
    "sorp",
    "posbool",
    "dualnatpoly",
    "sorpinf",
    "sorpinfdual",
    "series:3",
    "seriesdual:3",
];

fn samples(sr: &Semiring, seed: u64, n: usize) -> Vec<Value> {
    let mut rng = gen::rng(seed);
    let toks = if sr.poly_kind().is_some_and(|k| k.is_dual()) {
        gen::dual_tokens(2)
    } else {
        gen::tokens(2)
    };
    let mut out = vec![sr.zero(), sr.one()];
    out.extend((0..n).map(|_| gen::random_value(&mut rng, sr, &toks)));
    out
}

fn assert_law(sr: &Semiring, xs: &[Value], law: Law) {
    let rep = check_law(sr, xs, law);
    assert!(rep.passed(), "{} fails {}: {:?}", sr.name(), law, rep.counterexamples);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn axioms_hold_on_random_samples(seed in any::<u64>()) {
        for h in HANDLES {
            let sr = Semiring::from_name(h).unwrap();
            assert_law(&sr, &samples(&sr, seed, 5), Law::Axioms);
        }
    }

    #[test]
    fn every_handle_is_plus_positive(seed in any::<u64>()) {
        for h in HANDLES {
            let sr = Semiring::from_name(h).unwrap();
            assert_law(&sr, &samples(&sr, seed, 8), Law::PlusPositive);
        }
    }

    #[test]
    fn handles_except_dual_series_are_root_integral(seed in any::<u64>()) {
        for h in HANDLES.iter().filter(|h| !h.starts_with("seriesdual")) {
            let sr = Semiring::from_name(h).unwrap();
            assert_law(&sr, &samples(&sr, seed, 8), Law::RootIntegral);
        }
    }

    #[test]
    fn natural_order_is_a_partial_order(seed in any::<u64>()) {
        for h in HANDLES {
            let sr = Semiring::from_name(h).unwrap();
            assert_law(&sr, &samples(&sr, seed, 5), Law::NaturalOrder);
        }
    }

    #[test]
    fn star_unfolds_once(seed in any::<u64>()) {
        for h in HANDLES {
            let sr = Semiring::from_name(h).unwrap();
            if sr.flags().omega_continuous {
                assert_law(&sr, &samples(&sr, seed, 8), Law::OmegaContinuous);
            }
        }
    }

    #[test]
    fn declared_flags_hold(seed in any::<u64>()) {
        for h in HANDLES {
            let sr = Semiring::from_name(h).unwrap();
            let xs = samples(&sr, seed, 6);
            for law in Law::ALL.into_iter().filter(|l| l.is_declared(&sr)) {
                assert_law(&sr, &xs, law);
            }
        }
    }

    #[test]
    fn natural_numbers_match_machine_arithmetic(a in 0u64..1_000_000, b in 0u64..1_000_000) {
        let sr = Semiring::natural();
        let (x, y) = (Value::Nat(BigUint::from(a)), Value::Nat(BigUint::from(b)));
        prop_assert_eq!(sr.add(&x, &y).unwrap(), Value::Nat(BigUint::from(a + b)));
        prop_assert_eq!(sr.mul(&x, &y).unwrap(), Value::Nat(BigUint::from(a) * BigUint::from(b)));
    }

    #[test]
    fn tropical_is_min_plus(a in 0i64..1000, b in 0i64..1000) {
        let sr = Semiring::tropical();
        let v = |n: i64| sr.parse_value(&n.to_string()).unwrap();
        prop_assert_eq!(sr.add(&v(a), &v(b)).unwrap(), v(a.min(b)));
        prop_assert_eq!(sr.mul(&v(a), &v(b)).unwrap(), v(a + b));
    }

    #[test]
    fn viterbi_is_max_times(p in 0i64..=8, q in 0i64..=8) {
        let sr = Semiring::viterbi();
        let r = |n: i64| BigRational::new(n.into(), 8.into());
        let (x, y) = (Value::Viterbi(r(p)), Value::Viterbi(r(q)));
        prop_assert_eq!(sr.add(&x, &y).unwrap(), Value::Viterbi(r(p.max(q))));
        prop_assert_eq!(sr.mul(&x, &y).unwrap(), Value::Viterbi(r(p) * r(q)));
    }
}

#[test]
fn dual_polynomials_have_zero_divisors() {
    let sr = Semiring::from_name("dualnatpoly").unwrap();
    let rep = check_law(&sr, &sr.default_samples(), Law::Positive);
    assert!(!rep.passed());
    assert!(
        rep.counterexamples.iter().any(|c| c.contains("p * ~p")),
        "{:?}",
        rep.counterexamples
    );
    assert!(!sr.flags().positive);
}

#[test]
fn dual_series_square_to_zero_above_the_bound() {
    // Up to degree 3, (p*q)^2 has no surviving term.
    let sr = Semiring::from_name("seriesdual:3").unwrap();
    let pq = sr.parse_value("p*q").unwrap();
    assert!(sr.is_zero(&sr.mul(&pq, &pq).unwrap()));
    assert!(!sr.flags().root_integral);
    let rep = check_law(&sr, &[pq], Law::RootIntegral);
    assert!(!rep.passed());
}

#[test]
fn every_handle_is_consistent_and_round_trips_samples() {
    for h in HANDLES {
        let sr = Semiring::from_name(h).unwrap();
        assert!(sr.flags().is_consistent(), "{h}");
        for x in samples(&sr, 11, 10) {
            let text = sr.format(&x);
            assert_eq!(sr.parse_value(&text).unwrap(), x, "{h}: {text}");
        }
    }
}
