use std::collections::BTreeMap;

use gameprov::gen::{self, GenRng};
use gameprov::poly::{is_antichain, mono_absorbs, normalize_antichain, Exp, Monomial, PolyKind, Polynomial, Token};
use gameprov::semiring::{Semiring, Value};
use proptest::prelude::*;
use rand::Rng;

const KINDS: &[&str] = &[
    "natpoly",
    "boolpoly",
    "whypoly",
    "sorp",
    "posbool",
    "dualnatpoly",
    "sorpinf",
    "sorpinfdual",
    "series:4",
    "seriesdual:4",
];

fn poly(v: Value) -> Polynomial {
    match v {
        Value::Poly(p) => p,
        other => panic!("not a polynomial: {other:?}"),
    }
}

fn random_poly(rng: &mut GenRng, sr: &Semiring, toks: &[Token]) -> Polynomial {
    poly(gen::random_value(rng, sr, toks))
}

fn toks_for(sr: &Semiring, k: usize) -> Vec<Token> {
    if sr.poly_kind().unwrap().is_dual() {
        gen::dual_tokens(k)
    } else {
        gen::tokens(k)
    }
}

/// Quotient kinds paired with target semirings in which the quotient
/// identities hold.
fn quotient_targets() -> Vec<(PolyKind, Vec<Semiring>)> {
    let idem_add = || {
        vec![
            Semiring::boolean(),
            Semiring::tropical(),
            Semiring::viterbi(),
            Semiring::access(),
            Semiring::min_max(&["lo", "mid", "hi"]).unwrap(),
        ]
    };
    let both_idem = || {
        vec![
            Semiring::boolean(),
            Semiring::access(),
            Semiring::min_max(&["lo", "mid", "hi"]).unwrap(),
        ]
    };
    vec![
        (PolyKind::BoolPoly, idem_add()),
        (PolyKind::Sorp, idem_add()),
        (PolyKind::SorpInf, idem_add()),
        (PolyKind::WhyPoly, both_idem()),
        (PolyKind::PosBool, both_idem()),
    ]
}

fn random_assignment(rng: &mut GenRng, target: &Semiring, toks: &[Token]) -> BTreeMap<Token, Value> {
    toks.iter()
        .map(|t| (t.clone(), gen::random_value(rng, target, &[])))
        .collect()
}

/// Assignment with f(p)·f(~p) = 0 for every pair.
fn dual_assignment(rng: &mut GenRng, target: &Semiring, k: usize) -> BTreeMap<Token, Value> {
    let mut out = BTreeMap::new();
    for t in gen::tokens(k) {
        let v = gen::random_value(rng, target, &[]);
        let c = if target.is_zero(&v) || rng.gen_bool(0.3) {
            gen::random_value(rng, target, &[])
        } else {
            target.zero()
        };
        let c = if target.is_zero(&target.mul(&v, &c).unwrap()) {
            c
        } else {
            target.zero()
        };
        out.insert(t.complement(), c);
        out.insert(t, v);
    }
    out
}

fn random_monomial(rng: &mut GenRng, inf: bool) -> Monomial {
    Monomial::from_exponents((1..=3).filter_map(|i| {
        let e = rng.gen_range(0..4u64);
        let exp = if inf && rng.gen_bool(0.15) {
            Exp::Inf
        } else {
            Exp::Fin(e)
        };
        (exp != Exp::Fin(0)).then(|| (Token::positive(&format!("t{i}")), exp))
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ring_laws_on_random_polynomials(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        for name in KINDS {
            let sr = Semiring::from_name(name).unwrap();
            let toks = toks_for(&sr, 3);
            let (a, b, c) = (random_poly(&mut rng, &sr, &toks), random_poly(&mut rng, &sr, &toks), random_poly(&mut rng, &sr, &toks));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap(), "{}", name);
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn projection_then_specialization_is_specialization(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let nat = Semiring::from_name("natpoly").unwrap();
        let toks = gen::tokens(3);
        let p = random_poly(&mut rng, &nat, &toks);
        for (kind, targets) in quotient_targets() {
            let q = p.project(kind).unwrap();
            for target in &targets {
                let f = random_assignment(&mut rng, target, &toks);
                let direct = p.specialize(target, |t| f.get(t).cloned()).unwrap();
                let via = q.specialize(target, |t| f.get(t).cloned()).unwrap();
                prop_assert_eq!(&direct, &via, "{} -> {} via {}", p, target.name(), kind);
            }
        }
    }

    #[test]
    fn complementary_tokens_annihilate(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        for name in ["dualnatpoly", "sorpinfdual", "seriesdual:4"] {
            let sr = Semiring::from_name(name).unwrap();
            for t in gen::tokens(3) {
                let prod = sr.mul(&sr.token(&t).unwrap(), &sr.token(&t.complement()).unwrap()).unwrap();
                prop_assert!(sr.is_zero(&prod));
            }
            let toks = gen::dual_tokens(3);
            let mut acc = random_poly(&mut rng, &sr, &toks);
            for _ in 0..3 {
                let x = random_poly(&mut rng, &sr, &toks);
                acc = if rng.gen_bool(0.5) { acc.mul(&x).unwrap() } else { acc.add(&x).unwrap() };
                prop_assert!(acc.terms().all(|(m, _)| !m.has_complementary_pair()), "{}", acc);
            }
        }
    }

    #[test]
    fn absorptive_kinds_stay_antichains(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        for name in ["sorp", "posbool", "sorpinf", "sorpinfdual"] {
            let sr = Semiring::from_name(name).unwrap();
            let toks = toks_for(&sr, 3);
            let mut acc = random_poly(&mut rng, &sr, &toks);
            for _ in 0..4 {
                let x = random_poly(&mut rng, &sr, &toks);
                acc = if rng.gen_bool(0.5) { acc.mul(&x).unwrap() } else { acc.add(&x).unwrap() };
                prop_assert!(is_antichain(acc.terms().map(|(m, _)| m)), "{}", acc);
            }
        }
    }

    #[test]
    fn absorption_is_a_partial_order(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let ms: Vec<Monomial> = (0..8).map(|_| random_monomial(&mut rng, true)).collect();
        for a in &ms {
            prop_assert!(mono_absorbs(a, a));
            for b in &ms {
                if mono_absorbs(a, b) && mono_absorbs(b, a) {
                    prop_assert_eq!(a, b);
                }
                for c in &ms {
                    if mono_absorbs(a, b) && mono_absorbs(b, c) {
                        prop_assert!(mono_absorbs(a, c));
                    }
                }
            }
        }
        let once = normalize_antichain(ms.clone());
        prop_assert!(is_antichain(once.iter()));
        prop_assert_eq!(normalize_antichain(once.clone()), once);
    }

    #[test]
    fn specialization_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let cases: Vec<(&str, Semiring)> = vec![
            ("natpoly", Semiring::natural()),
            ("natpoly", Semiring::nat_inf()),
            ("natpoly", Semiring::viterbi()),
            ("dualnatpoly", Semiring::natural()),
            ("dualnatpoly", Semiring::boolean()),
            ("dualnatpoly", Semiring::nat_inf()),
            ("sorp", Semiring::tropical()),
            ("sorpinf", Semiring::viterbi()),
            ("sorpinfdual", Semiring::boolean()),
        ];
        for (src, target) in cases {
            let sr = Semiring::from_name(src).unwrap();
            let dual = sr.poly_kind().unwrap().is_dual();
            let toks = toks_for(&sr, 3);
            let f = if dual { dual_assignment(&mut rng, &target, 3) } else { random_assignment(&mut rng, &target, &toks) };
            let h = |p: &Polynomial| p.specialize(&target, |t| f.get(t).cloned()).unwrap();
            let (a, b) = (random_poly(&mut rng, &sr, &toks), random_poly(&mut rng, &sr, &toks));
            prop_assert_eq!(h(&a.add(&b).unwrap()), target.add(&h(&a), &h(&b)).unwrap(), "{} -> {}", src, target.name());
            prop_assert_eq!(h(&a.mul(&b).unwrap()), target.mul(&h(&a), &h(&b)).unwrap(), "{} -> {}", src, target.name());
        }
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        for name in KINDS {
            let sr = Semiring::from_name(name).unwrap();
            let p = random_poly(&mut rng, &sr, &toks_for(&sr, 3));
            prop_assert_eq!(Polynomial::parse(p.kind(), &p.to_string()).unwrap(), p);
        }
    }
}

#[test]
fn geometric_series_examples() {
    let k = PolyKind::TruncSeries(4);
    let s = Polynomial::var(k, Token::positive("s"));
    let t = Monomial::var(Token::positive("t"));
    let g = gameprov::poly::series_geom(&s, &t, 4).unwrap();
    assert_eq!(g.to_string(), "s + s*t + s*t^2 + s*t^3 + ...");
    assert!(g.is_truncated());
    let g1 =
        gameprov::poly::series_geom(&Polynomial::var(PolyKind::TruncSeries(1), Token::positive("s")), &t, 1).unwrap();
    assert_eq!(g1.to_string(), "s + ...");
    let z = gameprov::poly::series_geom(&Polynomial::zero(k), &t, 4).unwrap();
    assert!(z.is_zero() && !z.is_truncated());
}

#[test]
fn dual_assignments_must_respect_duality() {
    let sr = Semiring::from_name("dualnatpoly").unwrap();
    let p = poly(sr.parse_value("p + ~p").unwrap());
    let nat = Semiring::natural();
    let f = |t: &Token| Some(nat.parse_value(if t.is_negative() { "2" } else { "3" }).unwrap());
    assert!(matches!(
        p.specialize(&nat, f),
        Err(gameprov::Error::DualityViolated(_))
    ));
}
