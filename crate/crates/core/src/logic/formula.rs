use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A variable bound by a quantifier or fixed-point tuple, or a name that is
/// free in the formula (resolved against the universe at evaluation time).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Elem(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Elem(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixKind {
    Lfp,
    Gfp,
}

impl FixKind {
    pub fn dual(self) -> FixKind {
        match self {
            FixKind::Lfp => FixKind::Gfp,
            FixKind::Gfp => FixKind::Lfp,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom {
        rel: String,
        args: Vec<Term>,
    },
    Eq(Term, Term),
    Neq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Fix {
        kind: FixKind,
        rel: String,
        vars: Vec<String>,
        body: Box<Formula>,
        args: Vec<Term>,
    },
}

impl Formula {
    pub fn atom<S: Into<String>>(rel: &str, args: impl IntoIterator<Item = S>) -> Formula {
        Formula::Atom {
            rel: rel.to_string(),
            args: args.into_iter().map(|a| Term::Elem(a.into())).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn is_first_order(&self) -> bool {
        match self {
            Formula::Fix { .. } => false,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.is_first_order(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_first_order() && b.is_first_order(),
            _ => true,
        }
    }

    /// Negation only in front of atoms.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Not(f) => matches!(**f, Formula::Atom { .. }),
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.is_nnf(),
            Formula::Fix { body, .. } => body.is_nnf(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_nnf() && b.is_nnf(),
            _ => true,
        }
    }

    /// Names occurring free (as `Term::Elem`).
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| {
            if let Term::Elem(n) = t {
                out.insert(n.clone());
            }
        });
        out
    }

    fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom { args, .. } => args.iter().for_each(&mut *f),
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_terms(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::Fix { body, args, .. } => {
                body.visit_terms(f);
                args.iter().for_each(f);
            }
        }
    }

    /// Relation symbols not bound by a fixed-point operator, with arities.
    pub fn vocabulary(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.collect_vocabulary(&mut Vec::new(), &mut out);
        out
    }

    fn collect_vocabulary(&self, bound: &mut Vec<String>, out: &mut BTreeMap<String, usize>) {
        match self {
            Formula::Atom { rel, args } if !bound.contains(rel) => {
                out.insert(rel.clone(), args.len());
            }
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.collect_vocabulary(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vocabulary(bound, out);
                b.collect_vocabulary(bound, out);
            }
            Formula::Fix { rel, body, .. } => {
                bound.push(rel.clone());
                body.collect_vocabulary(bound, out);
                bound.pop();
            }
            _ => {}
        }
    }

    /// Checks that every relation symbol is used with one arity and that
    /// fixed-point bodies only refer to their own tuple variables.
    pub fn check(&self) -> Result<()> {
        let mut arities = BTreeMap::new();
        self.check_rec(&mut arities, &mut Vec::new())
    }

    fn check_rec(&self, arities: &mut BTreeMap<String, usize>, scope: &mut Vec<Scope>) -> Result<()> {
        let mut use_arity = |rel: &str, n: usize| match arities.get(rel) {
            Some(&m) if m != n => Err(Error::Arity {
                rel: rel.to_string(),
                expected: m,
                found: n,
            }),
            Some(_) => Ok(()),
            None => {
                arities.insert(rel.to_string(), n);
                Ok(())
            }
        };
        let check_terms = |terms: &[&Term], scope: &[Scope]| -> Result<()> {
            for t in terms {
                if let Term::Var(v) = t {
                    parameter_check(v, scope)?;
                }
            }
            Ok(())
        };
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom { rel, args } => {
                use_arity(rel, args.len())?;
                check_terms(&args.iter().collect::<Vec<_>>(), scope)
            }
            Formula::Eq(a, b) | Formula::Neq(a, b) => check_terms(&[a, b], scope),
            Formula::Not(g) => g.check_rec(arities, scope),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.check_rec(arities, scope)?;
                b.check_rec(arities, scope)
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                scope.push(Scope::Var(v.clone()));
                let r = g.check_rec(arities, scope);
                scope.pop();
                r
            }
            Formula::Fix {
                rel, vars, body, args, ..
            } => {
                if vars.len() != args.len() {
                    return Err(Error::Arity {
                        rel: rel.clone(),
                        expected: vars.len(),
                        found: args.len(),
                    });
                }
                use_arity(rel, vars.len())?;
                check_terms(&args.iter().collect::<Vec<_>>(), scope)?;
                scope.push(Scope::Fix(rel.clone()));
                scope.extend(vars.iter().map(|v| Scope::Var(v.clone())));
                let r = body.check_rec(arities, scope);
                scope.truncate(scope.len() - vars.len() - 1);
                r
            }
        }
    }
}

enum Scope {
    Var(String),
    Fix(String),
}

/// A variable used inside a fixed-point body must be bound inside it.
fn parameter_check(var: &str, scope: &[Scope]) -> Result<()> {
    let mut crossed: Option<&str> = None;
    for s in scope.iter().rev() {
        match s {
            Scope::Var(v) if v == var => {
                return match crossed {
                    Some(rel) => Err(Error::ParameterizedFixpoint {
                        rel: rel.to_string(),
                        var: var.to_string(),
                    }),
                    None => Ok(()),
                };
            }
            Scope::Fix(rel) if crossed.is_none() => crossed = Some(rel),
            _ => {}
        }
    }
    Ok(())
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    let names: Vec<&str> = terms.iter().map(|t| t.name()).collect();
    write!(f, "({})", names.join(","))
}

/// Operands of binary connectives: quantifiers get parentheses so their
/// scope does not swallow the right operand on re-parsing.
struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            g @ (Formula::Exists(..) | Formula::Forall(..)) => write!(f, "({g})"),
            g => write!(f, "{g}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom { rel, args } => {
                write!(f, "{rel}")?;
                write_terms(f, args)
            }
            Formula::Eq(a, b) => write!(f, "{} = {}", a.name(), b.name()),
            Formula::Neq(a, b) => write!(f, "{} != {}", a.name(), b.name()),
            Formula::Not(g) => match **g {
                Formula::Eq(..) | Formula::Neq(..) => write!(f, "!({g})"),
                _ => write!(f, "!{}", Operand(g)),
            },
            Formula::And(a, b) => write!(f, "({} & {})", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "({} | {})", Operand(a), Operand(b)),
            Formula::Exists(v, g) => write!(f, "exists {v}. {g}"),
            Formula::Forall(v, g) => write!(f, "forall {v}. {g}"),
            Formula::Fix {
                kind,
                rel,
                vars,
                body,
                args,
            } => {
                let k = match kind {
                    FixKind::Lfp => "lfp",
                    FixKind::Gfp => "gfp",
                };
                write!(f, "[{k} {rel}({}). {body}]", vars.join(","))?;
                write_terms(f, args)
            }
        }
    }
}
