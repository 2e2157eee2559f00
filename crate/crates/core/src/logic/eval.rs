use std::collections::HashMap;
use std::rc::Rc;

use super::formula::{FixKind, Formula, Term};
use super::interp::{KInterpretation, Literal};
use super::nnf::{check_poslfp, to_nnf};
use crate::error::{Error, Result};
use crate::fixpoint::{iterate_to_fixpoint, Fixpoint, SolverConfig};
use crate::semiring::Value;

/// Formula relations must agree in arity with the interpretation.
pub(crate) fn check_vocabulary(pi: &KInterpretation, f: &Formula) -> Result<()> {
    for (rel, arity) in f.vocabulary() {
        if let Some(&m) = pi.vocabulary().get(&rel) {
            if m != arity {
                return Err(Error::Arity {
                    rel,
                    expected: m,
                    found: arity,
                });
            }
        }
    }
    Ok(())
}

/// Compositional value of a first-order sentence; negation goes through
/// negation normal form.
pub fn fo_eval(pi: &KInterpretation, sentence: &Formula) -> Result<Value> {
    if !sentence.is_first_order() {
        return Err(Error::NotFirstOrder);
    }
    check_vocabulary(pi, sentence)?;
    let f = to_nnf(sentence);
    Evaluator::new(pi).eval(&f, &mut Vec::new())
}

/// Value of a posLFP sentence, with each fixed point computed by Kleene
/// iteration of its update operator on relation valuations.
pub fn poslfp_eval_direct(pi: &KInterpretation, sentence: &Formula) -> Result<Value> {
    check_vocabulary(pi, sentence)?;
    let f = to_nnf(sentence);
    check_poslfp(&f)?;
    if !f.is_first_order() && !pi.semiring().flags().omega_continuous {
        return Err(Error::NotOmegaContinuous(pi.semiring().name()));
    }
    Evaluator::new(pi).eval(&f, &mut Vec::new())
}

struct Binding {
    rel: String,
    values: Rc<Vec<Value>>,
    stamp: u64,
}

struct Evaluator<'a> {
    pi: &'a KInterpretation,
    rels: Vec<Binding>,
    next_stamp: u64,
    /// Fixed-point relations keyed by node address and the stamps of the
    /// enclosing bindings.
    cache: HashMap<(usize, Vec<u64>), Rc<Vec<Value>>>,
}

impl<'a> Evaluator<'a> {
    fn new(pi: &'a KInterpretation) -> Self {
        Evaluator {
            pi,
            rels: Vec::new(),
            next_stamp: 0,
            cache: HashMap::new(),
        }
    }

    fn element(&self, t: &Term, env: &[(String, usize)]) -> Result<usize> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, i)| *i)
                .ok_or_else(|| Error::NotSentence(v.clone())),
            Term::Elem(e) => self.pi.universe().index(e).ok_or_else(|| Error::NotSentence(e.clone())),
        }
    }

    fn tuple(&self, args: &[Term], env: &[(String, usize)]) -> Result<Vec<usize>> {
        args.iter().map(|t| self.element(t, env)).collect()
    }

    fn tuple_index(&self, tuple: &[usize]) -> usize {
        let n = self.pi.universe().len();
        tuple.iter().fold(0, |acc, &i| acc * n + i)
    }

    fn eval(&mut self, f: &Formula, env: &mut Vec<(String, usize)>) -> Result<Value> {
        let sr = self.pi.semiring();
        match f {
            Formula::True => Ok(sr.one()),
            Formula::False => Ok(sr.zero()),
            Formula::Atom { rel, args } => {
                let tuple = self.tuple(args, env)?;
                if let Some(b) = self.rels.iter().rev().find(|b| &b.rel == rel) {
                    return Ok(b.values[self.tuple_index(&tuple)].clone());
                }
                Ok(self.pi.value(&Literal::new(rel, tuple, true)))
            }
            Formula::Not(g) => match &**g {
                Formula::Atom { rel, args } => {
                    if self.rels.iter().any(|b| &b.rel == rel) {
                        return Err(Error::NotPosLfp(format!("`{rel}` occurs negatively")));
                    }
                    let tuple = self.tuple(args, env)?;
                    Ok(self.pi.value(&Literal::new(rel, tuple, false)))
                }
                _ => Err(Error::NotNnf),
            },
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                let same = self.element(a, env)? == self.element(b, env)?;
                Ok(if same == matches!(f, Formula::Eq(..)) {
                    sr.one()
                } else {
                    sr.zero()
                })
            }
            Formula::And(a, b) => {
                let x = self.eval(a, env)?;
                let y = self.eval(b, env)?;
                sr.mul(&x, &y)
            }
            Formula::Or(a, b) => {
                let x = self.eval(a, env)?;
                let y = self.eval(b, env)?;
                sr.add(&x, &y)
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let exists = matches!(f, Formula::Exists(..));
                let mut acc = if exists { sr.zero() } else { sr.one() };
                for i in 0..self.pi.universe().len() {
                    env.push((v.clone(), i));
                    let x = self.eval(g, env);
                    env.pop();
                    let x = x?;
                    acc = if exists { sr.add(&acc, &x)? } else { sr.mul(&acc, &x)? };
                }
                Ok(acc)
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
                let tuple = self.tuple(args, env)?;
                let g = self.relation(f, rel, vars, body)?;
                Ok(g[self.tuple_index(&tuple)].clone())
            }
        }
    }

    /// The least fixed point of the update operator of `body`, over all
    /// tuples in lexicographic order.
    fn relation(&mut self, node: &Formula, rel: &str, vars: &[String], body: &Formula) -> Result<Rc<Vec<Value>>> {
        let key = (
            node as *const Formula as usize,
            self.rels.iter().map(|b| b.stamp).collect::<Vec<_>>(),
        );
        if let Some(g) = self.cache.get(&key) {
            return Ok(g.clone());
        }
        let sr = self.pi.semiring().clone();
        let tuples = self.pi.universe().tuples(vars.len());
        let cfg = SolverConfig::for_size(tuples.len());
        let report = iterate_to_fixpoint(&sr, cfg, Fixpoint::Mu, vec![sr.zero(); tuples.len()], |g| {
            self.next_stamp += 1;
            self.rels.push(Binding {
                rel: rel.to_string(),
                values: Rc::new(g.to_vec()),
                stamp: self.next_stamp,
            });
            let result = tuples
                .iter()
                .map(|t| {
                    let mut env: Vec<(String, usize)> = vars.iter().cloned().zip(t.iter().copied()).collect();
                    self.eval(body, &mut env)
                })
                .collect::<Result<Vec<_>>>();
            self.rels.pop();
            result
        })?;
        let g = Rc::new(report.values);
        self.cache.insert(key, g.clone());
        Ok(g)
    }
}
