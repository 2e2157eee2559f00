//! Seeded random games, valuations, formulas and interpretations for
//! property tests.

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::game::{BasicValuation, GameGraph, Owner, Player, PosId};
use crate::logic::{Formula, KInterpretation, Literal, Term, Universe};
use crate::poly::Token;
use crate::semiring::{ExtRat, NatInf, Semiring, SemiringKind, Value};

pub use rand::SeedableRng;

pub type GenRng = ChaCha8Rng;

/// Seed from `PROV_SEED`, falling back to `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("PROV_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct GameParams {
    pub max_positions: usize,
    pub max_out_degree: usize,
    /// Share of positions that are terminal (at least one always is).
    pub terminal_fraction: f64,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams {
            max_positions: 12,
            max_out_degree: 3,
            terminal_fraction: 0.3,
        }
    }
}

/// Terminal flags: the last positions are terminal, at least one of them.
fn terminal_flags(n: usize, params: &GameParams) -> Vec<bool> {
    let k = ((n as f64 * params.terminal_fraction).round() as usize).clamp(1, n - 1);
    (0..n).map(|i| i >= n - k).collect()
}

fn assemble(rng: &mut GenRng, terminal: &[bool], succ: impl Fn(&mut GenRng, usize) -> Vec<PosId>) -> GameGraph {
    let mut b = GameGraph::builder();
    for (i, &term) in terminal.iter().enumerate() {
        let owner = if term {
            Owner::Terminal
        } else if rng.gen_bool(0.5) {
            Owner::Player0
        } else {
            Owner::Player1
        };
        b.position(&format!("p{i}"), owner).expect("fresh name");
    }
    for (i, &t) in terminal.iter().enumerate() {
        if t {
            continue;
        }
        for j in succ(rng, i) {
            b.add_move(i, j).expect("distinct successors");
        }
    }
    b.build().expect("every non-terminal has a move")
}

fn pick_successors(rng: &mut GenRng, candidates: Vec<PosId>, max_out: usize) -> Vec<PosId> {
    let k = rng.gen_range(1..=max_out.min(candidates.len()));
    let mut c = candidates;
    c.shuffle(rng);
    c.truncate(k);
    c.sort_unstable();
    c
}

/// A layered DAG: moves only go to higher-numbered positions, which makes
/// position 0 a natural root.
pub fn acyclic_game(rng: &mut GenRng, params: &GameParams) -> GameGraph {
    let n = rng.gen_range(2..=params.max_positions.max(2));
    let terminal = terminal_flags(n, params);
    let max_out = params.max_out_degree.max(1);
    assemble(rng, &terminal, |rng, i| {
        pick_successors(rng, (i + 1..n).collect(), max_out)
    })
}

/// Arbitrary successors, self-loops included; usually cyclic.
pub fn cyclic_game(rng: &mut GenRng, params: &GameParams) -> GameGraph {
    let n = rng.gen_range(2..=params.max_positions.max(2));
    let terminal = terminal_flags(n, params);
    let max_out = params.max_out_degree.max(1);
    assemble(rng, &terminal, |rng, _| pick_successors(rng, (0..n).collect(), max_out))
}

/// A random value; polynomial semirings draw monomials over `tokens`.
pub fn random_value(rng: &mut GenRng, sr: &Semiring, tokens: &[Token]) -> Value {
    match sr.kind() {
        SemiringKind::Boolean => Value::Bool(rng.gen_bool(0.6)),
        SemiringKind::Natural => Value::Nat(BigUint::from(rng.gen_range(0u32..4))),
        SemiringKind::NatInf => {
            if rng.gen_bool(0.1) {
                Value::NatInf(NatInf::Inf)
            } else {
                Value::NatInf(NatInf::from_u64(rng.gen_range(0..4)))
            }
        }
        SemiringKind::Tropical => {
            if rng.gen_bool(0.2) {
                Value::Tropical(ExtRat::Inf)
            } else {
                Value::Tropical(ExtRat::Fin(BigRational::from_integer(rng.gen_range(0..6).into())))
            }
        }
        SemiringKind::Viterbi => Value::Viterbi(BigRational::new(rng.gen_range(0..=4).into(), 4.into())),
        SemiringKind::MinMax(labels) => Value::MinMax(rng.gen_range(0..labels.len())),
        SemiringKind::Access => {
            let all = crate::semiring::Clearance::ALL;
            Value::Access(all[rng.gen_range(0..all.len())])
        }
        SemiringKind::Poly(kind) => {
            if tokens.is_empty() || rng.gen_bool(0.15) {
                return if rng.gen_bool(0.5) { sr.zero() } else { sr.one() };
            }
            let inf = kind.allows_inf_exponent();
            let mut p = sr.zero();
            for _ in 0..rng.gen_range(1..=2) {
                let mut m = if rng.gen_bool(0.2) {
                    sr.parse_value(&rng.gen_range(2..4).to_string())
                        .unwrap_or_else(|_| sr.one())
                } else {
                    sr.one()
                };
                for _ in 0..rng.gen_range(1..=2) {
                    let mut t = sr
                        .token(&tokens[rng.gen_range(0..tokens.len())])
                        .expect("token of a polynomial kind");
                    if inf && rng.gen_bool(0.15) {
                        t = sr.pow_inf(&t).expect("infinite powers allowed");
                    }
                    m = sr.mul(&m, &t).expect("same semiring");
                }
                p = sr.add(&p, &m).expect("same semiring");
            }
            p
        }
    }
}

/// Nonzero random value (falls back to 1).
pub fn random_nonzero(rng: &mut GenRng, sr: &Semiring, tokens: &[Token]) -> Value {
    let v = random_value(rng, sr, tokens);
    if sr.is_zero(&v) {
        sr.one()
    } else {
        v
    }
}

/// Positive tokens `t1, …, tk`.
pub fn tokens(k: usize) -> Vec<Token> {
    (1..=k).map(|i| Token::positive(&format!("t{i}"))).collect()
}

/// `t1, …, tk` followed by their complements.
pub fn dual_tokens(k: usize) -> Vec<Token> {
    let pos = tokens(k);
    let neg: Vec<Token> = pos.iter().map(Token::complement).collect();
    pos.into_iter().chain(neg).collect()
}

/// Random terminal values and, with probability `move_prob` per move, a
/// random nonzero move value.
pub fn random_valuation(
    rng: &mut GenRng,
    g: &GameGraph,
    player: Player,
    sr: &Semiring,
    tokens: &[Token],
    move_prob: f64,
) -> Result<BasicValuation> {
    let mut b = BasicValuation::new(player, sr.clone());
    for t in g.terminals() {
        b.set_terminal(g, t, random_value(rng, sr, tokens))?;
    }
    for (v, w) in g.moves() {
        if rng.gen_bool(move_prob) {
            b.set_move(g, v, w, random_nonzero(rng, sr, tokens))?;
        }
    }
    Ok(b)
}

/// Each terminal gets its own token `t<i>` (the outcome-tracking valuation).
pub fn outcome_valuation(g: &GameGraph, player: Player, sr: &Semiring) -> Result<BasicValuation> {
    let mut b = BasicValuation::new(player, sr.clone());
    for t in g.terminals() {
        b.set_terminal(g, t, sr.token(&Token::positive(g.name(t)))?)?;
    }
    Ok(b)
}

#[derive(Clone, Debug)]
pub struct FormulaParams {
    pub max_depth: usize,
    /// Relation symbols with arities.
    pub vocabulary: Vec<(String, usize)>,
}

impl Default for FormulaParams {
    fn default() -> Self {
        FormulaParams {
            max_depth: 4,
            vocabulary: vec![("P".into(), 1), ("E".into(), 2)],
        }
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "u"];

struct FormulaGen<'a> {
    params: &'a FormulaParams,
    universe: &'a Universe,
}

impl FormulaGen<'_> {
    fn term(&self, rng: &mut GenRng, scope: &[String]) -> Term {
        if !scope.is_empty() && rng.gen_bool(0.8) {
            Term::Var(scope[rng.gen_range(0..scope.len())].clone())
        } else {
            Term::Elem(self.universe.name(rng.gen_range(0..self.universe.len())).to_string())
        }
    }

    fn literal(&self, rng: &mut GenRng, scope: &[String], fix: Option<(&str, usize)>) -> Formula {
        let roll = rng.gen_range(0..10);
        if let Some((rel, arity)) = fix {
            if roll < 3 {
                let args = (0..arity).map(|_| self.term(rng, scope)).collect();
                return Formula::Atom { rel: rel.into(), args };
            }
        }
        match roll {
            0 => {
                let (a, b) = (self.term(rng, scope), self.term(rng, scope));
                if rng.gen_bool(0.5) {
                    Formula::Eq(a, b)
                } else {
                    Formula::Neq(a, b)
                }
            }
            _ => {
                let (rel, arity) = &self.params.vocabulary[rng.gen_range(0..self.params.vocabulary.len())];
                let args = (0..*arity).map(|_| self.term(rng, scope)).collect();
                let atom = Formula::Atom { rel: rel.clone(), args };
                if rng.gen_bool(0.35) {
                    Formula::not(atom)
                } else {
                    atom
                }
            }
        }
    }

    fn formula(
        &self,
        rng: &mut GenRng,
        depth: usize,
        scope: &mut Vec<String>,
        fix: Option<(&str, usize)>,
        lfp: bool,
    ) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.literal(rng, scope, fix);
        }
        let choices = if lfp && fix.is_none() { 6 } else { 5 };
        match rng.gen_range(0..choices) {
            0 | 1 => {
                let a = self.formula(rng, depth - 1, scope, fix, lfp);
                let b = self.formula(rng, depth - 1, scope, fix, lfp);
                if rng.gen_bool(0.5) {
                    Formula::and(a, b)
                } else {
                    Formula::or(a, b)
                }
            }
            2..=4 => {
                let v = VARS[scope.len() % VARS.len()].to_string();
                scope.push(v.clone());
                let body = Box::new(self.formula(rng, depth - 1, scope, fix, lfp));
                scope.pop();
                if rng.gen_bool(0.5) {
                    Formula::Exists(v, body)
                } else {
                    Formula::Forall(v, body)
                }
            }
            _ => self.fixpoint(rng, depth - 1, scope),
        }
    }

    fn fixpoint(&self, rng: &mut GenRng, depth: usize, scope: &[String]) -> Formula {
        let arity = rng.gen_range(1..=2);
        let vars: Vec<String> = (0..arity).map(|i| format!("r{i}")).collect();
        let mut inner = vars.clone();
        // Guarantee a base case next to the recursive part.
        let base = self.formula(rng, depth.saturating_sub(1), &mut inner, None, false);
        let step = self.formula(rng, depth, &mut inner, Some(("R", arity)), false);
        let args = (0..arity).map(|_| self.term(rng, scope)).collect();
        Formula::Fix {
            kind: crate::logic::FixKind::Lfp,
            rel: "R".into(),
            vars,
            body: Box::new(Formula::or(base, step)),
            args,
        }
    }
}

/// A random first-order sentence over `universe`, possibly with negations
/// above atoms only.
pub fn fo_sentence(rng: &mut GenRng, params: &FormulaParams, universe: &Universe) -> Formula {
    let g = FormulaGen { params, universe };
    g.formula(rng, params.max_depth, &mut Vec::new(), None, false)
}

/// A random posLFP sentence containing at least one least fixed point.
pub fn poslfp_sentence(rng: &mut GenRng, params: &FormulaParams, universe: &Universe) -> Formula {
    let g = FormulaGen { params, universe };
    let mut scope = Vec::new();
    if rng.gen_bool(0.5) {
        g.fixpoint(rng, params.max_depth.saturating_sub(1), &scope)
    } else {
        let v = VARS[0].to_string();
        scope.push(v.clone());
        let fix = g.fixpoint(rng, params.max_depth.saturating_sub(2), &scope);
        let other = g.formula(rng, 1, &mut scope, None, false);
        let body = if rng.gen_bool(0.5) {
            Formula::and(fix, other)
        } else {
            Formula::or(fix, other)
        };
        if rng.gen_bool(0.5) {
            Formula::Exists(v, Box::new(body))
        } else {
            Formula::Forall(v, Box::new(body))
        }
    }
}

/// Random values for every literal of `vocabulary` over `universe`.
pub fn random_interpretation(
    rng: &mut GenRng,
    sr: &Semiring,
    universe: &Universe,
    vocabulary: &[(String, usize)],
    tokens: &[Token],
) -> Result<KInterpretation> {
    let mut pi = KInterpretation::new(sr.clone(), universe.clone());
    for (rel, arity) in vocabulary {
        pi.declare(rel, *arity)?;
        for t in universe.tuples(*arity) {
            for positive in [true, false] {
                pi.set(Literal::new(rel, t.clone(), positive), random_value(rng, sr, tokens))?;
            }
        }
    }
    Ok(pi)
}

/// A random model-defining interpretation: each atom is true or false and
/// the true literal gets a random nonzero value.
pub fn random_model_interpretation(
    rng: &mut GenRng,
    sr: &Semiring,
    universe: &Universe,
    vocabulary: &[(String, usize)],
    tokens: &[Token],
) -> Result<KInterpretation> {
    let mut pi = KInterpretation::new(sr.clone(), universe.clone());
    for (rel, arity) in vocabulary {
        pi.declare(rel, *arity)?;
        for t in universe.tuples(*arity) {
            let holds = rng.gen_bool(0.5);
            let v = random_nonzero(rng, sr, tokens);
            pi.set(Literal::new(rel, t.clone(), holds), v)?;
            pi.set(Literal::new(rel, t.clone(), !holds), sr.zero())?;
        }
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let p = GameParams::default();
        let a = acyclic_game(&mut rng(7), &p);
        let b = acyclic_game(&mut rng(7), &p);
        assert_eq!(a.len(), b.len());
        assert_eq!(a.moves().collect::<Vec<_>>(), b.moves().collect::<Vec<_>>());
        assert!(a.is_acyclic());
    }

    #[test]
    fn generated_sentences_parse_back() {
        let u = Universe::new(&["a", "b"]).unwrap();
        let params = FormulaParams::default();
        let mut r = rng(3);
        for _ in 0..50 {
            let f = poslfp_sentence(&mut r, &params, &u);
            let g = crate::logic::parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, g);
            let h = fo_sentence(&mut r, &params, &u);
            assert_eq!(crate::logic::parse_formula(&h.to_string()).unwrap(), h);
        }
    }
}
