mod common;

use std::collections::BTreeMap;

use common::{boolean_interpretation, cases, models, random_structure, semiring, vocab};
use gameprov::game::Player;
use gameprov::gen::{self, FormulaParams, GenRng};
use gameprov::logic::{
    fo_eval, game_eval, make_tracking_interpretation, parse_formula, poslfp_eval_direct, to_nnf, Formula,
    KInterpretation, Literal, Structure, Universe,
};
use gameprov::poly::Token;
use gameprov::semiring::{Semiring, Value};
use proptest::prelude::*;
use rand::Rng;

fn universe(rng: &mut GenRng) -> Universe {
    let k = rng.gen_range(1..=3);
    Universe::new(&["a", "b", "c"][..k]).unwrap()
}

fn tokens_for(sr: &Semiring) -> Vec<Token> {
    if sr.poly_kind().is_some_and(|k| k.is_dual()) {
        gen::dual_tokens(2)
    } else {
        gen::tokens(2)
    }
}

fn params() -> FormulaParams {
    FormulaParams {
        max_depth: 3,
        ..FormulaParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(cases(48)))]

    #[test]
    fn game_and_compositional_values_agree_on_first_order(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let phi = gen::fo_sentence(&mut rng, &params(), &u);
        for name in ["bool", "nat", "viterbi", "dualnatpoly", "sorpinf"] {
            let sr = semiring(name);
            let pi = gen::random_interpretation(&mut rng, &sr, &u, &vocab(), &tokens_for(&sr)).unwrap();
            let f = fo_eval(&pi, &phi).unwrap();
            prop_assert_eq!(game_eval(&pi, &phi, Player::Zero).unwrap(), f.clone(), "{} {}", name, phi);
            let neg = fo_eval(&pi, &Formula::not(phi.clone())).unwrap();
            prop_assert_eq!(game_eval(&pi, &phi, Player::One).unwrap(), neg, "{} not {}", name, phi);
        }
    }

    #[test]
    fn game_and_direct_values_agree_on_poslfp(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let phi = gen::poslfp_sentence(&mut rng, &params(), &u);
        for name in ["bool", "natinf", "sorpinf"] {
            let sr = semiring(name);
            let pi = gen::random_interpretation(&mut rng, &sr, &u, &vocab(), &tokens_for(&sr)).unwrap();
            prop_assert_eq!(
                game_eval(&pi, &phi, Player::Zero).unwrap(),
                poslfp_eval_direct(&pi, &phi).unwrap(),
                "{} {}", name, phi
            );
        }
    }

    #[test]
    fn boolean_values_decide_satisfaction(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let s = random_structure(&mut rng, &u);
        let pi = boolean_interpretation(&s);
        let phi = gen::fo_sentence(&mut rng, &params(), &u);
        let truth = models(&s, &phi);
        prop_assert_eq!(game_eval(&pi, &phi, Player::Zero).unwrap(), Value::Bool(truth), "{}", phi);
        prop_assert_eq!(game_eval(&pi, &phi, Player::One).unwrap(), Value::Bool(!truth), "{}", phi);
        let psi = gen::poslfp_sentence(&mut rng, &params(), &u);
        prop_assert_eq!(game_eval(&pi, &psi, Player::Zero).unwrap(), Value::Bool(models(&s, &psi)), "{}", psi);
    }

    #[test]
    fn model_interpretations_are_nonzero_exactly_on_true_sentences(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let sr = semiring("natpoly");
        let pi = gen::random_model_interpretation(&mut rng, &sr, &u, &vocab(), &gen::tokens(3)).unwrap();
        let s = pi.induced_structure().unwrap();
        let phi = gen::fo_sentence(&mut rng, &params(), &u);
        prop_assert_eq!(!sr.is_zero(&fo_eval(&pi, &phi).unwrap()), models(&s, &phi), "{}", phi);
    }

    #[test]
    fn tracking_keeps_complementary_tokens_apart(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let s = random_structure(&mut rng, &u);
        // Track a random selection of the literals true in s.
        let tracked: Vec<Literal> = vocab()
            .iter()
            .flat_map(|(r, a)| u.tuples(*a).into_iter().map(move |t| (r.clone(), t)))
            .map(|(r, t)| Literal::new(&r, t.clone(), s.satisfies(&Literal::new(&r, t, true))))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let pi = make_tracking_interpretation(&s, &tracked).unwrap();
        prop_assert!(pi.is_model_defining());
        let mut truth = BTreeMap::new();
        for lit in &tracked {
            for t in pi.value(lit).as_poly().unwrap().tokens() {
                truth.insert(t.complement(), false);
                truth.insert(t, true);
            }
        }
        let phi = gen::fo_sentence(&mut rng, &params(), &u);
        for f in [phi.clone(), Formula::not(phi.clone())] {
            let v = fo_eval(&pi, &f).unwrap();
            let p = v.as_poly().unwrap();
            prop_assert!(p.terms().all(|(m, _)| !m.has_complementary_pair()), "{}", p);
            // Every tracked literal is true in s, so sending its token to 1
            // and the complement to 0 recovers satisfaction.
            let b = Semiring::boolean();
            let spec = p.specialize(&b, |t| Some(Value::Bool(truth.get(t).copied().unwrap_or(false)))).unwrap();
            prop_assert_eq!(spec, Value::Bool(models(&s, &f)), "{}", f);
        }
    }

    #[test]
    fn nnf_is_idempotent_and_preserves_truth(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let u = universe(&mut rng);
        let s = random_structure(&mut rng, &u);
        let phi = if rng.gen_bool(0.5) {
            gen::fo_sentence(&mut rng, &params(), &u)
        } else {
            gen::poslfp_sentence(&mut rng, &params(), &u)
        };
        for f in [phi.clone(), Formula::not(phi.clone())] {
            let n = to_nnf(&f);
            prop_assert!(n.is_nnf(), "{}", n);
            prop_assert_eq!(to_nnf(&n), n.clone());
            prop_assert_eq!(models(&s, &n), models(&s, &f), "{} vs {}", f, n);
        }
    }
}

#[test]
fn transitive_closure_counts_paths() {
    // a→b→c and a→c: two derivations of R(a,c).
    let sr = semiring("natinf");
    let u = Universe::new(&["a", "b", "c"]).unwrap();
    let mut pi = KInterpretation::new(sr.clone(), u);
    for (x, y) in [(0, 1), (1, 2), (0, 2)] {
        pi.set(Literal::new("E", vec![x, y], true), sr.one()).unwrap();
    }
    let phi = parse_formula("[lfp R(x,y). E(x,y) | exists z. (E(x,z) & R(z,y))](a,c)").unwrap();
    let two = sr.parse_value("2").unwrap();
    assert_eq!(game_eval(&pi, &phi, Player::Zero).unwrap(), two);
    assert_eq!(poslfp_eval_direct(&pi, &phi).unwrap(), two);
}

#[test]
fn tracking_rejects_false_literals() {
    let u = Universe::new(&["a"]).unwrap();
    let mut s = Structure::new(u);
    s.declare("P", 1).unwrap();
    let err = make_tracking_interpretation(&s, &[Literal::new("P", vec![0], true)]);
    assert!(matches!(err, Err(gameprov::Error::TrackedFalseLiteral(_))));
}

#[test]
fn opponent_value_of_poslfp_is_rejected() {
    let sr = semiring("bool");
    let pi = KInterpretation::new(sr, Universe::new(&["a"]).unwrap());
    let phi = parse_formula("[lfp R(x). P(x) | R(x)](a)").unwrap();
    assert!(game_eval(&pi, &phi, Player::One).is_err());
}
