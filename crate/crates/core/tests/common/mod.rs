#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use gameprov::game::{BasicValuation, GameGraph, Owner, Player, PosId, Strategy};
use gameprov::gen::{self, FormulaParams, GenRng};
use gameprov::logic::{FixKind, Formula, KInterpretation, Literal, Structure, Term, Universe};
use gameprov::poly::Token;
use gameprov::semiring::{Semiring, Value};
use rand::seq::SliceRandom;
use rand::Rng;

/// Number of property-test cases, overridable through `PROPTEST_CASES`.
pub fn cases(default: u32) -> u32 {
    std::env::var("PROPTEST_CASES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

/// Product over all plays of the play value `Π h(e) · f(terminal)`.
pub fn play_product(s: &Strategy, basic: &BasicValuation) -> Value {
    let sr = basic.semiring();
    let mut acc = sr.one();
    for play in s.plays().unwrap() {
        let mut v = basic.terminal_value(*play.last().unwrap());
        for w in play.windows(2) {
            v = sr.mul(&v, &basic.move_value(w[0], w[1])).unwrap();
        }
        acc = sr.mul(&acc, &v).unwrap();
    }
    acc
}

/// Copy of `g` with shuffled position ids and renamed positions.
/// Returns the copy, the transported valuations and the map old → new.
pub fn permuted(
    rng: &mut GenRng,
    g: &GameGraph,
    basics: &[&BasicValuation],
) -> (GameGraph, Vec<BasicValuation>, Vec<PosId>) {
    let mut order: Vec<PosId> = g.positions().collect();
    order.shuffle(rng);
    let mut b = GameGraph::builder();
    let mut map = vec![0; g.len()];
    for &v in &order {
        map[v] = b.position(&format!("q{v}"), g.owner(v)).unwrap();
    }
    for (v, w) in g.moves() {
        b.add_move(map[v], map[w]).unwrap();
    }
    let h = b.build().unwrap();
    let vals = basics
        .iter()
        .map(|basic| {
            let mut out = BasicValuation::new(basic.player(), basic.semiring().clone());
            for t in g.terminals() {
                out.set_terminal(&h, map[t], basic.terminal_value(t)).unwrap();
            }
            for (v, w) in g.moves() {
                out.set_move(&h, map[v], map[w], basic.move_value(v, w)).unwrap();
            }
            out
        })
        .collect();
    (h, vals, map)
}

/// Every positional strategy of the owner of `basic` from `root`.
pub fn positional_strategies(g: &GameGraph, basic: &BasicValuation, root: PosId) -> Vec<Strategy> {
    let own = Owner::of(basic.player());
    let mine: Vec<PosId> = g.positions().filter(|&v| g.owner(v) == own).collect();
    let mut out = Vec::new();
    let mut choice = BTreeMap::new();
    fn rec(
        g: &GameGraph,
        basic: &BasicValuation,
        root: PosId,
        mine: &[PosId],
        choice: &mut BTreeMap<PosId, PosId>,
        out: &mut Vec<Strategy>,
    ) {
        match mine.split_first() {
            None => out.push(Strategy::positional(g, basic.player(), root, choice).unwrap()),
            Some((&v, rest)) => {
                for &w in g.successors(v) {
                    choice.insert(v, w);
                    rec(g, basic, root, rest, choice, out);
                }
            }
        }
    }
    rec(g, basic, root, &mine, &mut choice, &mut out);
    out
}

pub fn semiring(name: &str) -> Semiring {
    Semiring::from_name(name).unwrap()
}

/// Relation symbols used by the formula generator.
pub fn vocab() -> Vec<(String, usize)> {
    FormulaParams::default().vocabulary
}

/// Textbook satisfaction relation over a finite structure, with fixed
/// points computed on sets of tuples.
struct Naive<'a> {
    s: &'a Structure,
    rels: Vec<(String, BTreeSet<Vec<usize>>)>,
}

impl<'a> Naive<'a> {
    fn new(s: &'a Structure) -> Self {
        Naive { s, rels: Vec::new() }
    }

    fn elem(&self, t: &Term, env: &HashMap<String, usize>) -> usize {
        env.get(t.name())
            .copied()
            .or_else(|| self.s.universe().index(t.name()))
            .unwrap_or_else(|| panic!("unbound {}", t.name()))
    }

    fn holds(&mut self, f: &Formula, env: &mut HashMap<String, usize>) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom { rel, args } => {
                let tuple: Vec<usize> = args.iter().map(|a| self.elem(a, env)).collect();
                if let Some((_, set)) = self.rels.iter().rev().find(|(r, _)| r == rel) {
                    return set.contains(&tuple);
                }
                self.s.satisfies(&Literal::new(rel, tuple, true))
            }
            Formula::Eq(a, b) => self.elem(a, env) == self.elem(b, env),
            Formula::Neq(a, b) => self.elem(a, env) != self.elem(b, env),
            Formula::Not(g) => !self.holds(g, env),
            Formula::And(a, b) => self.holds(a, env) && self.holds(b, env),
            Formula::Or(a, b) => self.holds(a, env) || self.holds(b, env),
            Formula::Exists(x, g) | Formula::Forall(x, g) => {
                let all = matches!(f, Formula::Forall(..));
                let saved = env.get(x).copied();
                let mut result = all;
                for i in 0..self.s.universe().len() {
                    env.insert(x.clone(), i);
                    if self.holds(g, env) != all {
                        result = !all;
                        break;
                    }
                }
                match saved {
                    Some(i) => env.insert(x.clone(), i),
                    None => env.remove(x),
                };
                result
            }
            Formula::Fix {
                kind,
                rel,
                vars,
                body,
                args,
            } => {
                let tuples = self.s.universe().tuples(vars.len());
                let mut cur: BTreeSet<Vec<usize>> = match kind {
                    FixKind::Lfp => BTreeSet::new(),
                    FixKind::Gfp => tuples.iter().cloned().collect(),
                };
                loop {
                    self.rels.push((rel.clone(), cur.clone()));
                    let next: BTreeSet<Vec<usize>> = tuples
                        .iter()
                        .filter(|t| {
                            let mut inner: HashMap<String, usize> =
                                vars.iter().cloned().zip(t.iter().copied()).collect();
                            self.holds(body, &mut inner)
                        })
                        .cloned()
                        .collect();
                    self.rels.pop();
                    if next == cur {
                        break;
                    }
                    cur = next;
                }
                let tuple: Vec<usize> = args.iter().map(|a| self.elem(a, env)).collect();
                cur.contains(&tuple)
            }
        }
    }
}

pub fn models(s: &Structure, f: &Formula) -> bool {
    Naive::new(s).holds(f, &mut HashMap::new())
}

pub fn random_structure(rng: &mut GenRng, u: &Universe) -> Structure {
    let mut s = Structure::new(u.clone());
    for (rel, arity) in vocab() {
        s.declare(&rel, arity).unwrap();
        for t in u.tuples(arity) {
            if rng.gen_bool(0.5) {
                s.insert(&rel, t).unwrap();
            }
        }
    }
    s
}

/// Every literal gets 1 if true in `s` and 0 otherwise.
pub fn boolean_interpretation(s: &Structure) -> KInterpretation {
    let b = Semiring::boolean();
    let mut pi = KInterpretation::new(b.clone(), s.universe().clone());
    for (rel, arity) in vocab() {
        for t in s.universe().tuples(arity) {
            for positive in [true, false] {
                let lit = Literal::new(&rel, t.clone(), positive);
                pi.set(lit.clone(), Value::Bool(s.satisfies(&lit))).unwrap();
            }
        }
    }
    pi
}

/// Terminal values with f0 = 0 or f1 = 0 (or, `weak`, with f0·f1 = 0 via
/// complementary tokens), nonzero move values for both players.
pub fn separated(
    rng: &mut GenRng,
    g: &GameGraph,
    sr: &Semiring,
    toks: &[Token],
    weak: bool,
) -> (BasicValuation, BasicValuation) {
    let mut f0 = BasicValuation::new(Player::Zero, sr.clone());
    let mut f1 = BasicValuation::new(Player::One, sr.clone());
    for t in g.terminals() {
        let x = gen::random_value(rng, sr, toks);
        let (a, b) = if weak && sr.poly_kind().is_some_and(|k| k.is_dual()) {
            let p = Token::positive(&format!("w{t}"));
            (sr.token(&p).unwrap(), sr.token(&p.complement()).unwrap())
        } else if rng.gen_bool(0.5) {
            (x, sr.zero())
        } else {
            (sr.zero(), x)
        };
        f0.set_terminal(g, t, a).unwrap();
        f1.set_terminal(g, t, b).unwrap();
    }
    for (v, w) in g.moves() {
        if rng.gen_bool(0.3) {
            f0.set_move(g, v, w, gen::random_nonzero(rng, sr, toks)).unwrap();
            f1.set_move(g, v, w, gen::random_nonzero(rng, sr, toks)).unwrap();
        }
    }
    (f0, f1)
}

/// Exactly one of f0, f1 is nonzero at each terminal.
pub fn strongly_separated(
    rng: &mut GenRng,
    g: &GameGraph,
    sr: &Semiring,
    toks: &[Token],
) -> (BasicValuation, BasicValuation) {
    let mut f0 = BasicValuation::new(Player::Zero, sr.clone());
    let mut f1 = BasicValuation::new(Player::One, sr.clone());
    for t in g.terminals() {
        let x = gen::random_nonzero(rng, sr, toks);
        let (a, b) = if rng.gen_bool(0.5) {
            (x, sr.zero())
        } else {
            (sr.zero(), x)
        };
        f0.set_terminal(g, t, a).unwrap();
        f1.set_terminal(g, t, b).unwrap();
    }
    for (v, w) in g.moves() {
        if rng.gen_bool(0.3) {
            f0.set_move(g, v, w, gen::random_nonzero(rng, sr, toks)).unwrap();
            f1.set_move(g, v, w, gen::random_nonzero(rng, sr, toks)).unwrap();
        }
    }
    (f0, f1)
}
