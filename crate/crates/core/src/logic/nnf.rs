use super::formula::{FixKind, Formula};
use crate::error::{Error, Result};

/// Negation normal form. Negated fixed points use the duality
/// `¬[lfp R x. ψ](t) ≡ [gfp R x. ¬ψ[R/¬R]](t)`.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, false, &mut Vec::new())
}

/// `flipped` holds fixed-point relations substituted by their negation.
fn nnf(f: &Formula, neg: bool, flipped: &mut Vec<String>) -> Formula {
    match f {
        Formula::True | Formula::False => {
            if neg == matches!(f, Formula::True) {
                Formula::False
            } else {
                Formula::True
            }
        }
        Formula::Atom { rel, .. } => {
            let flip = flipped.iter().rev().any(|r| r == rel);
            if neg != flip {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Eq(a, b) if neg => Formula::Neq(a.clone(), b.clone()),
        Formula::Neq(a, b) if neg => Formula::Eq(a.clone(), b.clone()),
        Formula::Eq(..) | Formula::Neq(..) => f.clone(),
        Formula::Not(g) => nnf(g, !neg, flipped),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (nnf(a, neg, flipped), nnf(b, neg, flipped));
            if matches!(f, Formula::And(..)) != neg {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let g = Box::new(nnf(g, neg, flipped));
            if matches!(f, Formula::Exists(..)) != neg {
                Formula::Exists(v.clone(), g)
            } else {
                Formula::Forall(v.clone(), g)
            }
        }
        Formula::Fix {
            kind,
            rel,
            vars,
            body,
            args,
        } => {
            // An inner binding of the same name shadows any outer flip.
            let mut inner: Vec<String> = flipped.iter().filter(|r| *r != rel).cloned().collect();
            if neg {
                inner.push(rel.clone());
            }
            let body = nnf(body, neg, &mut inner);
            Formula::Fix {
                kind: if neg { kind.dual() } else { *kind },
                rel: rel.clone(),
                vars: vars.clone(),
                body: Box::new(body),
                args: args.clone(),
            }
        }
    }
}

/// Checks membership in posLFP: negation normal form, only least fixed
/// points, and bound relations used positively.
pub fn check_poslfp(f: &Formula) -> Result<()> {
    if !f.is_nnf() {
        return Err(Error::NotNnf);
    }
    walk(f, &mut Vec::new())
}

fn walk(f: &Formula, bound: &mut Vec<String>) -> Result<()> {
    match f {
        Formula::Not(g) => match &**g {
            Formula::Atom { rel, .. } if bound.contains(rel) => Err(Error::NotPosLfp(format!(
                "`{rel}` occurs negatively in its fixed-point body"
            ))),
            _ => Ok(()),
        },
        Formula::And(a, b) | Formula::Or(a, b) => {
            walk(a, bound)?;
            walk(b, bound)
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => walk(g, bound),
        Formula::Fix { kind, rel, body, .. } => {
            if *kind == FixKind::Gfp {
                return Err(Error::NotPosLfp(format!("greatest fixed point on `{rel}`")));
            }
            bound.push(rel.clone());
            let r = walk(body, bound);
            bound.pop();
            r
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn n(src: &str) -> String {
        to_nnf(&parse_formula(src).unwrap()).to_string()
    }

    #[test]
    fn de_morgan() {
        assert_eq!(n("!(R(a) & !S(b))"), "(!R(a) | S(b))");
        assert_eq!(n("!forall x. R(x)"), "exists x. !R(x)");
        assert_eq!(n("!(x = a)"), "x != a");
    }

    #[test]
    fn negated_lfp_becomes_gfp() {
        let f = to_nnf(&parse_formula("![lfp R(x). P(x) | exists y. (E(x,y) & R(y))](a)").unwrap());
        assert_eq!(f.to_string(), "[gfp R(x). (!P(x) & (forall y. (!E(x,y) | R(y))))](a)");
        assert!(matches!(check_poslfp(&f), Err(Error::NotPosLfp(_))));
    }

    #[test]
    fn idempotent() {
        let f = to_nnf(&parse_formula("!(exists x. !(P(x) | !Q(x)))").unwrap());
        assert_eq!(to_nnf(&f), f);
    }
}
