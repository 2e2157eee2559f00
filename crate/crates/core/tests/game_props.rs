mod common;

use std::collections::BTreeMap;

use common::{cases, permuted, play_product, positional_strategies, semiring, separated, strongly_separated};
use gameprov::game::io::parse_game;
use gameprov::game::{
    absorption_dominates, acyclic_valuation, check_separating, enumerate_strategies, strategy_value, truncate,
    verify_counting_bisim, BasicValuation, Boundary, EnumerateOptions, GameGraph, Player, SeparationMode, ValueMode,
};
use gameprov::gen::{self, GameParams, GenRng};
use gameprov::poly::{Exp, Token};
use gameprov::semiring::{NatInf, Value};
use gameprov::Error;
use proptest::prelude::*;
use rand::Rng;

fn player(rng: &mut GenRng) -> Player {
    if rng.gen_bool(0.5) {
        Player::Zero
    } else {
        Player::One
    }
}

fn opts() -> EnumerateOptions {
    EnumerateOptions {
        max_count: 5_000,
        ..EnumerateOptions::default()
    }
}

/// Σ F(S) over all strategies from `v`, or None when there are too many.
fn strategy_sum(g: &GameGraph, basic: &BasicValuation, v: usize) -> Option<Value> {
    let sr = basic.semiring();
    let en = match enumerate_strategies(g, basic.player(), v, opts()) {
        Ok(en) => en,
        Err(Error::BudgetExceeded(_)) => return None,
        Err(e) => panic!("{e}"),
    };
    let mut acc = sr.zero();
    for s in &en.strategies {
        acc = sr
            .add(&acc, &strategy_value(s, basic, ValueMode::Acyclic).unwrap())
            .unwrap();
    }
    Some(acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(cases(48)))]

    #[test]
    fn valuation_is_the_sum_over_strategies(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        let sr = semiring("natpoly");
        let p = player(&mut rng);
        let basic = gen::random_valuation(&mut rng, &g, p, &sr, &gen::tokens(3), 0.3).unwrap();
        let f = acyclic_valuation(&g, &basic).unwrap();
        for v in g.positions() {
            if let Some(sum) = strategy_sum(&g, &basic, v) {
                prop_assert_eq!(&f[v], &sum, "position {}", g.name(v));
            }
        }
    }

    #[test]
    fn strategy_value_is_the_play_product_when_moves_are_neutral(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        let sr = semiring("natpoly");
        let p = player(&mut rng);
        let basic = gen::random_valuation(&mut rng, &g, p, &sr, &gen::tokens(3), 0.0).unwrap();
        let en = enumerate_strategies(&g, basic.player(), 0, EnumerateOptions { allow_partial: true, ..opts() }).unwrap();
        for s in &en.strategies {
            prop_assert_eq!(strategy_value(s, &basic, ValueMode::Acyclic).unwrap(), play_product(s, &basic));
        }
    }

    #[test]
    fn strategy_value_is_the_play_product_when_multiplication_is_idempotent(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        for sr in [semiring("posbool"), semiring("bool"), semiring("minmax:lo,mid,hi")] {
            let p = player(&mut rng);
        let basic = gen::random_valuation(&mut rng, &g, p, &sr, &gen::tokens(3), 0.5).unwrap();
            let en = enumerate_strategies(&g, basic.player(), 0, EnumerateOptions { allow_partial: true, ..opts() }).unwrap();
            for s in &en.strategies {
                prop_assert_eq!(strategy_value(s, &basic, ValueMode::Acyclic).unwrap(), play_product(s, &basic));
            }
        }
    }

    #[test]
    fn counting_bisimilar_games_have_equal_valuations(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams { max_positions: 8, ..GameParams::default() });
        let sr = semiring("natpoly");
        let p = player(&mut rng);
        let basic = gen::random_valuation(&mut rng, &g, p, &sr, &gen::tokens(3), 0.3).unwrap();
        let f = acyclic_valuation(&g, &basic).unwrap();

        // The full unraveling, related to the game by the projection.
        let t = truncate(&g, &basic, g.len() + 1, Boundary::Zero).unwrap();
        let z: Vec<(usize, usize)> = t.origin.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rep = verify_counting_bisim(&g, &t.game, &z, Some(&[(&basic, &t.valuation)]));
        prop_assert!(rep.holds(), "{:?}", rep);
        let ft = acyclic_valuation(&t.game, &t.valuation).unwrap();
        for &(v, i) in &z {
            prop_assert_eq!(&f[v], &ft[i]);
        }

        // A renamed copy.
        let (h, vals, map) = permuted(&mut rng, &g, &[&basic]);
        let z: Vec<(usize, usize)> = g.positions().map(|v| (v, map[v])).collect();
        prop_assert!(verify_counting_bisim(&g, &h, &z, Some(&[(&basic, &vals[0])])).holds());
        let fh = acyclic_valuation(&h, &vals[0]).unwrap();
        for &(v, w) in &z {
            prop_assert_eq!(&f[v], &fh[w]);
        }
    }

    #[test]
    fn changed_terminal_value_breaks_value_respect(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        let sr = semiring("natpoly");
        let basic = gen::outcome_valuation(&g, Player::Zero, &sr).unwrap();
        let (h, mut vals, map) = permuted(&mut rng, &g, &[&basic]);
        let t = g.terminals().next().unwrap();
        vals[0].set_terminal(&h, map[t], sr.token(&Token::positive("other")).unwrap()).unwrap();
        let z: Vec<(usize, usize)> = g.positions().map(|v| (v, map[v])).collect();
        let rep = verify_counting_bisim(&g, &h, &z, Some(&[(&basic, &vals[0])]));
        prop_assert!(rep.is_bisimulation());
        prop_assert!(!rep.respects_values());
    }

    #[test]
    fn monomial_coefficients_count_strategies_by_outcome(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        let sr = semiring("natpoly");
        let basic = gen::outcome_valuation(&g, player(&mut rng), &sr).unwrap();
        let f = acyclic_valuation(&g, &basic).unwrap();
        let v = 0;
        let Ok(en) = enumerate_strategies(&g, basic.player(), v, opts()) else { return Ok(()); };
        // Outcome multisets as token exponents.
        let mut census: BTreeMap<BTreeMap<String, u64>, u64> = BTreeMap::new();
        for s in &en.strategies {
            let key = s
                .outcomes(&g)
                .into_iter()
                .filter(|(_, n)| !n.is_zero())
                .map(|(t, n)| (g.name(t).to_string(), n.to_u64().unwrap()))
                .collect();
            *census.entry(key).or_default() += 1;
        }
        let poly = f[v].as_poly().unwrap();
        let mut from_poly: BTreeMap<BTreeMap<String, u64>, u64> = BTreeMap::new();
        for (m, c) in poly.terms() {
            let key = m
                .iter()
                .map(|(t, e)| match e {
                    Exp::Fin(n) => (t.name().to_string(), n),
                    Exp::Inf => panic!("infinite exponent"),
                })
                .collect();
            from_poly.insert(key, c.to_u64().unwrap());
        }
        prop_assert_eq!(census, from_poly);
    }

    #[test]
    fn absorption_matches_the_value_order(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::cyclic_game(&mut rng, &GameParams { max_positions: 6, max_out_degree: 2, terminal_fraction: 0.35 });
        let sr = semiring("sorpinf");
        let basic = gen::outcome_valuation(&g, Player::Zero, &sr).unwrap();
        let ss = positional_strategies(&g, &basic, 0);
        let values: Vec<(Value, Value)> = ss
            .iter()
            .map(|s| {
                (
                    strategy_value(s, &basic, ValueMode::Mu).unwrap(),
                    strategy_value(s, &basic, ValueMode::Nu).unwrap(),
                )
            })
            .collect();
        for (i, s1) in ss.iter().enumerate() {
            for (j, s2) in ss.iter().enumerate() {
                let by_values = sr.leq(&values[j].0, &values[i].0).unwrap() && sr.leq(&values[j].1, &values[i].1).unwrap();
                prop_assert_eq!(absorption_dominates(&g, s1, s2), by_values);
            }
        }
    }

    #[test]
    fn separation_propagates_from_terminals(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        for name in ["natpoly", "dualnatpoly", "natinf", "sorpinfdual"] {
            let sr = semiring(name);
            let toks = if name.contains("dual") { gen::dual_tokens(2) } else { gen::tokens(2) };
            let (f0, f1) = separated(&mut rng, &g, &sr, &toks, false);
            prop_assert!(check_separating(&g, &f0, &f1, SeparationMode::Separating, None).unwrap().holds());
            let (f0, f1) = separated(&mut rng, &g, &sr, &toks, true);
            prop_assert!(check_separating(&g, &f0, &f1, SeparationMode::Weak, None).unwrap().holds());
        }
    }

    #[test]
    fn strong_separation_propagates_in_positive_semirings(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::acyclic_game(&mut rng, &GameParams::default());
        for name in ["natpoly", "bool", "natinf", "sorpinf", "viterbi"] {
            let sr = semiring(name);
            prop_assert!(sr.flags().positive);
            let (f0, f1) = strongly_separated(&mut rng, &g, &sr, &gen::tokens(2));
            let terminals: Vec<usize> = g.terminals().collect();
            prop_assert!(check_separating(&g, &f0, &f1, SeparationMode::Strong, Some(&terminals)).unwrap().holds());
            prop_assert!(check_separating(&g, &f0, &f1, SeparationMode::Strong, None).unwrap().holds());
        }
    }
}

#[test]
fn strong_separation_can_fail_with_zero_divisors() {
    let sr = semiring("dualnatpoly");
    let src = "node v 0\nnode a T\nnode b T\nmove v a\nmove v b\nvalue 1 a p\nvalue 1 b ~p\n";
    let (g, vals) = parse_game(src, &sr).unwrap();
    let terminals: Vec<usize> = g.terminals().collect();
    assert!(
        check_separating(&g, &vals[0], &vals[1], SeparationMode::Strong, Some(&terminals))
            .unwrap()
            .holds()
    );
    let all = check_separating(&g, &vals[0], &vals[1], SeparationMode::Strong, None).unwrap();
    assert_eq!(all.failures().map(|v| g.name(v)).collect::<Vec<_>>(), ["v"]);
}

#[test]
fn play_product_differs_when_moves_carry_values() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/playprod.game")).unwrap();
    let sr = semiring("natpoly");
    let (g, vals) = parse_game(&src, &sr).unwrap();
    let v = g.position("v").unwrap();
    let en = enumerate_strategies(&g, Player::Zero, v, EnumerateOptions::default()).unwrap();
    assert_eq!(en.strategies.len(), 1);
    let s = &en.strategies[0];
    assert_eq!(
        sr.format(&strategy_value(s, &vals[0], ValueMode::Acyclic).unwrap()),
        "a"
    );
    assert_eq!(sr.format(&play_product(s, &vals[0])), "a^2");
}

#[test]
fn absorption_example_strategies() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/absdom.game")).unwrap();
    let sr = semiring("natpoly");
    let (g, vals) = parse_game(&src, &sr).unwrap();
    let u = g.position("u").unwrap();
    let en = enumerate_strategies(&g, Player::Zero, u, EnumerateOptions::default()).unwrap();
    let mut values: Vec<String> = en
        .strategies
        .iter()
        .map(|s| sr.format(&strategy_value(s, &vals[0], ValueMode::Acyclic).unwrap()))
        .collect();
    values.sort();
    assert_eq!(values, ["s*t", "s*t", "s^2", "t^2"]);
    assert!(gameprov::game::dominant_flags(&g, &en.strategies).iter().all(|d| *d));
    assert_eq!(
        sr.format(&acyclic_valuation(&g, &vals[0]).unwrap()[u]),
        "s^2 + 2*s*t + t^2"
    );
    for s in &en.strategies {
        assert_eq!(
            s.outcomes(&g).values().cloned().fold(NatInf::zero(), |a, b| a.add(&b)),
            NatInf::from_u64(2)
        );
    }
}
