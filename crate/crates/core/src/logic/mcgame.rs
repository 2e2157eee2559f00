use std::collections::{BTreeMap, HashMap};

use super::eval::check_vocabulary;
use super::formula::{FixKind, Formula, Term};
use super::interp::{KInterpretation, Literal, Universe};
use super::nnf::{check_poslfp, to_nnf};
use crate::error::{Error, Result};
use crate::fixpoint::{solve_game, Fixpoint};
use crate::game::{acyclic_valuation, BasicValuation, GameGraph, Owner, Player, PosId};
use crate::semiring::Value;

/// What a terminal position of the model-checking game stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalKind {
    Literal(Literal),
    /// Equalities, inequalities and the constants `true`/`false`.
    Truth(bool),
}

#[derive(Clone, Debug)]
pub struct McGame {
    pub game: GameGraph,
    pub root: PosId,
    pub terminals: BTreeMap<PosId, TerminalKind>,
}

impl McGame {
    /// `f0` from the interpretation, `f1(ℓ) = π(¬ℓ)`; moves are worth 1.
    pub fn valuations(&self, pi: &KInterpretation) -> Result<[BasicValuation; 2]> {
        let sr = pi.semiring();
        let mut f0 = BasicValuation::new(Player::Zero, sr.clone());
        let mut f1 = BasicValuation::new(Player::One, sr.clone());
        let truth = |b: bool| if b { sr.one() } else { sr.zero() };
        for (&t, kind) in &self.terminals {
            let (a, b) = match kind {
                TerminalKind::Literal(l) => (pi.value(l), pi.value(&l.complement())),
                TerminalKind::Truth(v) => (truth(*v), truth(!*v)),
            };
            f0.set_terminal(&self.game, t, a)?;
            f1.set_terminal(&self.game, t, b)?;
        }
        Ok([f0, f1])
    }
}

/// Variables in scope with their values.
type Env = Vec<(String, usize)>;

struct Pending<'f> {
    id: PosId,
    node: &'f Formula,
    env: Env,
    /// Fixed points in scope: relation, variables, body.
    fixes: Vec<(&'f str, &'f [String], &'f Formula)>,
}

struct Builder<'f, 'u> {
    universe: &'u Universe,
    ids: HashMap<(usize, Vec<usize>), PosId>,
    names: Vec<String>,
    owners: Vec<Owner>,
    moves: Vec<(PosId, PosId)>,
    terminals: BTreeMap<PosId, TerminalKind>,
    queue: Vec<Pending<'f>>,
}

impl<'f> Builder<'f, '_> {
    fn element(&self, t: &Term, env: &Env) -> Result<usize> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, i)| *i)
                .ok_or_else(|| Error::NotSentence(v.clone())),
            Term::Elem(e) => self.universe.index(e).ok_or_else(|| Error::NotSentence(e.clone())),
        }
    }

    /// The position of `node` under `env`, created and queued on first use.
    fn position(
        &mut self,
        node: &'f Formula,
        env: Env,
        fixes: &[(&'f str, &'f [String], &'f Formula)],
    ) -> Result<PosId> {
        let key = (node as *const Formula as usize, env.iter().map(|(_, i)| *i).collect());
        if let Some(&id) = self.ids.get(&key) {
            return Ok(id);
        }
        let id = self.names.len();
        self.ids.insert(key, id);
        let owner = match node {
            Formula::Or(..) | Formula::Exists(..) | Formula::Fix { .. } => Owner::Player0,
            Formula::And(..) | Formula::Forall(..) => Owner::Player1,
            Formula::Atom { rel, .. } if fixes.iter().any(|(r, _, _)| r == rel) => Owner::Player0,
            _ => Owner::Terminal,
        };
        let name = format!("{}", instantiate(node, &env, self.universe));
        let name = if self.names.contains(&name) {
            format!("{name} #{id}")
        } else {
            name
        };
        self.names.push(name);
        self.owners.push(owner);
        self.queue.push(Pending {
            id,
            node,
            env,
            fixes: fixes.to_vec(),
        });
        Ok(id)
    }

    fn expand(&mut self, p: Pending<'f>) -> Result<()> {
        let Pending { id, node, env, fixes } = p;
        let truth = |b: bool| TerminalKind::Truth(b);
        match node {
            Formula::True => {
                self.terminals.insert(id, truth(true));
            }
            Formula::False => {
                self.terminals.insert(id, truth(false));
            }
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                let same = self.element(a, &env)? == self.element(b, &env)?;
                self.terminals
                    .insert(id, truth(same == matches!(node, Formula::Eq(..))));
            }
            Formula::Atom { rel, args } => {
                let tuple: Vec<usize> = args.iter().map(|t| self.element(t, &env)).collect::<Result<_>>()?;
                match fixes.iter().rev().find(|(r, _, _)| r == rel) {
                    Some(&(_, vars, body)) => {
                        let inner: Env = vars.iter().cloned().zip(tuple).collect();
                        let w = self.position(body, inner, &fixes)?;
                        self.moves.push((id, w));
                    }
                    None => {
                        self.terminals
                            .insert(id, TerminalKind::Literal(Literal::new(rel, tuple, true)));
                    }
                }
            }
            Formula::Not(g) => match &**g {
                Formula::Atom { rel, args } => {
                    if fixes.iter().any(|(r, _, _)| r == rel) {
                        return Err(Error::NotPosLfp(format!("`{rel}` occurs negatively")));
                    }
                    let tuple = args.iter().map(|t| self.element(t, &env)).collect::<Result<_>>()?;
                    self.terminals
                        .insert(id, TerminalKind::Literal(Literal::new(rel, tuple, false)));
                }
                _ => return Err(Error::NotNnf),
            },
            Formula::And(a, b) | Formula::Or(a, b) => {
                for child in [a, b] {
                    let w = self.position(child, env.clone(), &fixes)?;
                    self.moves.push((id, w));
                }
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                for i in 0..self.universe.len() {
                    let mut inner = env.clone();
                    inner.push((v.clone(), i));
                    let w = self.position(g, inner, &fixes)?;
                    self.moves.push((id, w));
                }
            }
            Formula::Fix {
                kind,
                rel,
                vars,
                body,
                args,
            } => {
                if *kind == FixKind::Gfp {
                    return Err(Error::NotPosLfp(format!("greatest fixed point on `{rel}`")));
                }
                let tuple: Vec<usize> = args.iter().map(|t| self.element(t, &env)).collect::<Result<_>>()?;
                let mut inner_fixes = fixes.clone();
                inner_fixes.push((rel.as_str(), vars.as_slice(), &**body));
                let inner: Env = vars.iter().cloned().zip(tuple).collect();
                let w = self.position(body, inner, &inner_fixes)?;
                self.moves.push((id, w));
            }
        }
        Ok(())
    }
}

/// Substitutes bound variables by their elements, for position names.
fn instantiate(f: &Formula, env: &Env, universe: &Universe) -> Formula {
    let term = |t: &Term, env: &Env| match t {
        Term::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
            Some((_, i)) => Term::Elem(universe.name(*i).to_string()),
            None => t.clone(),
        },
        Term::Elem(_) => t.clone(),
    };
    let without = |v: &str| -> Env { env.iter().filter(|(n, _)| n != v).cloned().collect() };
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom { rel, args } => Formula::Atom {
            rel: rel.clone(),
            args: args.iter().map(|t| term(t, env)).collect(),
        },
        Formula::Eq(a, b) => Formula::Eq(term(a, env), term(b, env)),
        Formula::Neq(a, b) => Formula::Neq(term(a, env), term(b, env)),
        Formula::Not(g) => Formula::not(instantiate(g, env, universe)),
        Formula::And(a, b) => Formula::and(instantiate(a, env, universe), instantiate(b, env, universe)),
        Formula::Or(a, b) => Formula::or(instantiate(a, env, universe), instantiate(b, env, universe)),
        Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(instantiate(g, &without(v), universe))),
        Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(instantiate(g, &without(v), universe))),
        Formula::Fix {
            kind,
            rel,
            vars,
            body,
            args,
        } => Formula::Fix {
            kind: *kind,
            rel: rel.clone(),
            vars: vars.clone(),
            body: body.clone(),
            args: args.iter().map(|t| term(t, env)).collect(),
        },
    }
}

/// The model-checking game of a sentence in negation normal form. Positions
/// are subformula occurrences together with the values of the variables in
/// scope; fixed-point and bound-relation positions belong to Player 0 and
/// have a single move into the fixed-point body.
pub fn build_mc_game(universe: &Universe, f: &Formula) -> Result<McGame> {
    if !f.is_nnf() {
        return Err(Error::NotNnf);
    }
    let mut b = Builder {
        universe,
        ids: HashMap::new(),
        names: Vec::new(),
        owners: Vec::new(),
        moves: Vec::new(),
        terminals: BTreeMap::new(),
        queue: Vec::new(),
    };
    let root = b.position(f, Vec::new(), &[])?;
    while let Some(p) = b.queue.pop() {
        b.expand(p)?;
    }
    let mut gb = GameGraph::builder();
    for (name, owner) in b.names.iter().zip(&b.owners) {
        gb.position(name, *owner)?;
    }
    for (from, to) in &b.moves {
        gb.add_move(*from, *to)?;
    }
    Ok(McGame {
        game: gb.build()?,
        root,
        terminals: b.terminals,
    })
}

/// The model-checking game of `sentence` and the valuation of `player` at
/// every position.
pub fn game_valuation(pi: &KInterpretation, sentence: &Formula, player: Player) -> Result<(McGame, Vec<Value>)> {
    check_vocabulary(pi, sentence)?;
    let f = to_nnf(sentence);
    let fo = f.is_first_order();
    if !fo {
        check_poslfp(&f)?;
        if player == Player::One {
            return Err(Error::NotPosLfp(
                "the falsifier's valuation needs the negated formula, which is not in posLFP".into(),
            ));
        }
    }
    let mc = build_mc_game(pi.universe(), &f)?;
    let vals = mc.valuations(pi)?;
    let basic = &vals[player.index() as usize];
    let values = if fo {
        acyclic_valuation(&mc.game, basic)?
    } else {
        solve_game(&mc.game, basic, Fixpoint::Mu, None)?.values
    };
    Ok((mc, values))
}

/// `f_σ` at the root of the model-checking game.
pub fn game_eval(pi: &KInterpretation, sentence: &Formula, player: Player) -> Result<Value> {
    let (mc, values) = game_valuation(pi, sentence, player)?;
    Ok(values[mc.root].clone())
}
