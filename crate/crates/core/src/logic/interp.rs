use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{PolyKind, Polynomial, Token};
use crate::semiring::{Semiring, Value};

/// A finite non-empty set of element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::Parse("universe must not be empty".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Parse("universe elements must be distinct".into()));
        }
        Ok(Universe { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// All tuples of the given arity, in lexicographic order.
    pub fn tuples(&self, arity: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub rel: String,
    pub args: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: GroundAtom,
    pub positive: bool,
}

impl Literal {
    pub fn new(rel: &str, args: Vec<usize>, positive: bool) -> Self {
        Literal {
            atom: GroundAtom {
                rel: rel.to_string(),
                args,
            },
            positive,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    /// Parses `R(a,b)` or `!R(a,b)`.
    pub fn parse(text: &str, universe: &Universe) -> Result<Literal> {
        let t = text.trim();
        let (positive, t) = match t.strip_prefix('!') {
            Some(rest) => (false, rest.trim_start()),
            None => (true, t),
        };
        let bad = || Error::Parse(format!("malformed literal `{text}`"));
        let open = t.find('(').ok_or_else(bad)?;
        let inner = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let rel = t[..open].trim();
        if rel.is_empty() || !rel.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad());
        }
        let args = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|a| {
                    universe
                        .index(a.trim())
                        .ok_or_else(|| Error::Parse(format!("`{}` is not in the universe", a.trim())))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Literal::new(rel, args, positive))
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        LiteralDisplay(self, universe)
    }
}

struct LiteralDisplay<'a>(&'a Literal, &'a Universe);

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = self.0;
        let args: Vec<&str> = lit.atom.args.iter().map(|i| self.1.name(*i)).collect();
        let bang = if lit.positive { "" } else { "!" };
        write!(f, "{bang}{}({})", lit.atom.rel, args.join(","))
    }
}

/// A relational structure over a universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    universe: Universe,
    relations: BTreeMap<String, (usize, BTreeSet<Vec<usize>>)>,
}

impl Structure {
    pub fn new(universe: Universe) -> Self {
        Structure {
            universe,
            relations: BTreeMap::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn declare(&mut self, rel: &str, arity: usize) -> Result<()> {
        match self.relations.get(rel) {
            Some((m, _)) if *m != arity => Err(Error::Arity {
                rel: rel.to_string(),
                expected: *m,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.relations.insert(rel.to_string(), (arity, BTreeSet::new()));
                Ok(())
            }
        }
    }

    pub fn insert(&mut self, rel: &str, tuple: Vec<usize>) -> Result<()> {
        self.declare(rel, tuple.len())?;
        self.relations.get_mut(rel).expect("declared").1.insert(tuple);
        Ok(())
    }

    pub fn vocabulary(&self) -> BTreeMap<String, usize> {
        self.relations.iter().map(|(r, (a, _))| (r.clone(), *a)).collect()
    }

    pub fn holds(&self, atom: &GroundAtom) -> bool {
        self.relations
            .get(&atom.rel)
            .is_some_and(|(_, set)| set.contains(&atom.args))
    }

    pub fn satisfies(&self, lit: &Literal) -> bool {
        self.holds(&lit.atom) == lit.positive
    }

    pub fn facts(&self) -> impl Iterator<Item = GroundAtom> + '_ {
        self.relations.iter().flat_map(|(r, (_, set))| {
            set.iter().map(move |t| GroundAtom {
                rel: r.clone(),
                args: t.clone(),
            })
        })
    }
}

/// A map from literals over a universe to semiring values. Equalities are
/// fixed to their truth values and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KInterpretation {
    semiring: Semiring,
    universe: Universe,
    vocabulary: BTreeMap<String, usize>,
    values: BTreeMap<Literal, Value>,
    model_default: bool,
}

impl KInterpretation {
    pub fn new(semiring: Semiring, universe: Universe) -> Self {
        KInterpretation {
            semiring,
            universe,
            vocabulary: BTreeMap::new(),
            values: BTreeMap::new(),
            model_default: false,
        }
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn vocabulary(&self) -> &BTreeMap<String, usize> {
        &self.vocabulary
    }

    /// When set, an unlisted literal whose complement is unlisted (negative
    /// literals) or listed as 0 gets value 1.
    pub fn set_model_default(&mut self, on: bool) {
        self.model_default = on;
    }

    pub fn declare(&mut self, rel: &str, arity: usize) -> Result<()> {
        match self.vocabulary.get(rel) {
            Some(&m) if m != arity => Err(Error::Arity {
                rel: rel.to_string(),
                expected: m,
                found: arity,
            }),
            _ => {
                self.vocabulary.insert(rel.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn set(&mut self, lit: Literal, value: Value) -> Result<()> {
        self.declare(&lit.atom.rel, lit.atom.args.len())?;
        if lit.atom.args.iter().any(|&i| i >= self.universe.len()) {
            return Err(Error::Parse("literal argument outside the universe".into()));
        }
        self.semiring.check(&value)?;
        self.values.insert(lit, value);
        Ok(())
    }

    pub fn value(&self, lit: &Literal) -> Value {
        if let Some(v) = self.values.get(lit) {
            return v.clone();
        }
        if self.model_default {
            let comp = self.values.get(&lit.complement());
            let one = match comp {
                Some(c) => self.semiring.is_zero(c),
                None => !lit.positive,
            };
            if one {
                return self.semiring.one();
            }
        }
        self.semiring.zero()
    }

    pub fn explicit(&self) -> impl Iterator<Item = (&Literal, &Value)> {
        self.values.iter()
    }

    /// All atoms over the vocabulary.
    pub fn atoms(&self) -> Vec<GroundAtom> {
        self.vocabulary
            .iter()
            .flat_map(|(r, &a)| {
                self.universe
                    .tuples(a)
                    .into_iter()
                    .map(move |args| GroundAtom { rel: r.clone(), args })
            })
            .collect()
    }

    fn model_defining_failure(&self) -> Option<GroundAtom> {
        self.atoms().into_iter().find(|atom| {
            let pos = self.value(&Literal {
                atom: atom.clone(),
                positive: true,
            });
            let neg = self.value(&Literal {
                atom: atom.clone(),
                positive: false,
            });
            self.semiring.is_zero(&pos) == self.semiring.is_zero(&neg)
        })
    }

    /// Each atom has exactly one of itself and its negation at a nonzero value.
    pub fn is_model_defining(&self) -> bool {
        self.model_defining_failure().is_none()
    }

    /// The structure of literals with nonzero value.
    pub fn induced_structure(&self) -> Result<Structure> {
        if let Some(atom) = self.model_defining_failure() {
            let lit = Literal { atom, positive: true };
            return Err(Error::NotModelDefining(lit.display(&self.universe).to_string()));
        }
        let mut s = Structure::new(self.universe.clone());
        for (r, &a) in &self.vocabulary {
            s.declare(r, a)?;
        }
        for atom in self.atoms() {
            let lit = Literal {
                atom: atom.clone(),
                positive: true,
            };
            if !self.semiring.is_zero(&self.value(&lit)) {
                s.insert(&atom.rel, atom.args)?;
            }
        }
        Ok(s)
    }

    /// Maps every stored value into `target`.
    pub fn map_into<F>(&self, target: Semiring, f: F) -> Result<KInterpretation>
    where
        F: Fn(&Value) -> Result<Value>,
    {
        let mut out = KInterpretation::new(target, self.universe.clone());
        out.vocabulary = self.vocabulary.clone();
        out.model_default = self.model_default;
        for (lit, v) in &self.values {
            out.set(lit.clone(), f(v)?)?;
        }
        Ok(out)
    }
}

/// Tracked atoms get fresh tokens `p1, p2, …` (numbered by atom order),
/// tracked negated atoms the complementary tokens; every other literal is 0
/// or 1 by its truth in `structure`. Values live in the dual-indeterminate
/// polynomials.
pub fn make_tracking_interpretation(structure: &Structure, tracked: &[Literal]) -> Result<KInterpretation> {
    let kind = PolyKind::DualNatPoly;
    let sr = Semiring::poly(kind);
    let universe = structure.universe().clone();
    let mut pi = KInterpretation::new(sr.clone(), universe.clone());
    for (r, a) in structure.vocabulary() {
        pi.declare(&r, a)?;
    }
    for lit in tracked {
        pi.declare(&lit.atom.rel, lit.atom.args.len())?;
        if !structure.satisfies(lit) {
            return Err(Error::TrackedFalseLiteral(lit.display(&universe).to_string()));
        }
    }
    let tracked_atoms: BTreeSet<&GroundAtom> = tracked.iter().map(|l| &l.atom).collect();
    let tokens: BTreeMap<&GroundAtom, String> = tracked_atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (*a, format!("p{}", i + 1)))
        .collect();
    let tracked: BTreeSet<&Literal> = tracked.iter().collect();
    for atom in pi.atoms() {
        for positive in [true, false] {
            let lit = Literal {
                atom: atom.clone(),
                positive,
            };
            let value = if tracked.contains(&lit) {
                let name = &tokens[&atom];
                let token = if positive {
                    Token::positive(name)
                } else {
                    Token::negative(name)
                };
                Value::Poly(Polynomial::var(kind, token))
            } else if structure.satisfies(&lit) {
                sr.one()
            } else {
                sr.zero()
            };
            pi.set(lit, value)?;
        }
    }
    Ok(pi)
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

fn universe_line(rest: &str, line: usize) -> Result<Universe> {
    let names: Vec<&str> = rest
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    Universe::new(&names).map_err(|e| syntax(line, e.to_string()))
}

/// Relation declaration `relation E/2`.
fn relation_line(rest: &str, line: usize) -> Result<(String, usize)> {
    let (r, a) = rest
        .trim()
        .split_once('/')
        .ok_or_else(|| syntax(line, "expected `relation NAME/ARITY`"))?;
    let a = a.trim().parse().map_err(|_| syntax(line, "bad arity"))?;
    Ok((r.trim().to_string(), a))
}

/// Reads an interpretation file:
///
/// ```text
/// universe a b
/// relation E/2
/// E(a,b) = p
/// !E(a,b) = ~p
/// ```
pub fn parse_interpretation(text: &str, semiring: &Semiring) -> Result<KInterpretation> {
    let mut pi: Option<KInterpretation> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("universe") {
            if pi.is_some() {
                return Err(syntax(line, "duplicate universe line"));
            }
            pi = Some(KInterpretation::new(semiring.clone(), universe_line(rest, line)?));
            continue;
        }
        let pi = pi
            .as_mut()
            .ok_or_else(|| syntax(line, "the universe must be declared first"))?;
        if let Some(rest) = l.strip_prefix("relation ") {
            let (r, a) = relation_line(rest, line)?;
            pi.declare(&r, a)?;
            continue;
        }
        let (lhs, rhs) = l
            .split_once(" = ")
            .or_else(|| l.split_once('='))
            .ok_or_else(|| syntax(line, "expected `LITERAL = VALUE`"))?;
        let lit = Literal::parse(lhs, &pi.universe).map_err(|e| syntax(line, e.to_string()))?;
        let value = semiring.parse_value(rhs.trim()).map_err(|e| match e {
            Error::Syntax { column, message, .. } => Error::Syntax { line, column, message },
            other => other,
        })?;
        pi.set(lit, value)?;
    }
    pi.ok_or_else(|| syntax(1, "missing universe line"))
}

/// Reads a structure file: a universe line, optional relation
/// declarations, and one fact `R(a,b)` per line.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut s: Option<Structure> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("universe") {
            s = Some(Structure::new(universe_line(rest, line)?));
            continue;
        }
        let s = s
            .as_mut()
            .ok_or_else(|| syntax(line, "the universe must be declared first"))?;
        if let Some(rest) = l.strip_prefix("relation ") {
            let (r, a) = relation_line(rest, line)?;
            s.declare(&r, a)?;
            continue;
        }
        let lit = Literal::parse(l, s.universe()).map_err(|e| syntax(line, e.to_string()))?;
        if !lit.positive {
            return Err(syntax(line, "structure files list facts only"));
        }
        s.insert(&lit.atom.rel, lit.atom.args)?;
    }
    s.ok_or_else(|| syntax(1, "missing universe line"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Universe {
        Universe::new(&["a", "b"]).unwrap()
    }

    fn poly(text: &str) -> Value {
        Value::Poly(Polynomial::parse(PolyKind::DualNatPoly, text).unwrap())
    }

    #[test]
    fn model_defining_cases() {
        let sr = Semiring::poly(PolyKind::DualNatPoly);
        let mut pi = KInterpretation::new(sr.clone(), Universe::new(&["a"]).unwrap());
        pi.set(Literal::new("R", vec![0], true), poly("p")).unwrap();
        pi.set(Literal::new("R", vec![0], false), sr.zero()).unwrap();
        assert!(pi.is_model_defining());
        let s = pi.induced_structure().unwrap();
        assert!(s.holds(&GroundAtom {
            rel: "R".into(),
            args: vec![0]
        }));

        pi.set(Literal::new("R", vec![0], false), poly("~p")).unwrap();
        assert!(!pi.is_model_defining());
        assert!(matches!(pi.induced_structure(), Err(Error::NotModelDefining(_))));

        pi.set(Literal::new("R", vec![0], true), sr.zero()).unwrap();
        pi.set(Literal::new("R", vec![0], false), sr.zero()).unwrap();
        assert!(!pi.is_model_defining());
    }

    #[test]
    fn tracking() {
        let mut s = Structure::new(ab());
        s.insert("R", vec![0]).unwrap();
        let tracked = [Literal::new("R", vec![0], true), Literal::new("R", vec![1], false)];
        let pi = make_tracking_interpretation(&s, &tracked).unwrap();
        let sr = pi.semiring().clone();
        let show = |rel: usize, pos: bool| sr.format(&pi.value(&Literal::new("R", vec![rel], pos)));
        assert_eq!(
            [show(0, true), show(1, false), show(0, false), show(1, true)],
            ["p1", "~p2", "0", "0"]
        );

        let plain = make_tracking_interpretation(&s, &[]).unwrap();
        assert_eq!(
            [true, false].map(|p| sr.format(&plain.value(&Literal::new("R", vec![0], p)))),
            ["1", "0"]
        );

        let err = make_tracking_interpretation(&s, &[Literal::new("R", vec![1], true)]).unwrap_err();
        assert!(matches!(err, Error::TrackedFalseLiteral(_)));
    }

    #[test]
    fn model_default_fills_complements() {
        let text = "universe a b\nrelation E/2\nE(a,b) = 1\n";
        let mut pi = parse_interpretation(text, &Semiring::natural()).unwrap();
        let e = |x, y, p| Literal::new("E", vec![x, y], p);
        assert_eq!(pi.value(&e(1, 0, false)), Semiring::natural().zero());
        pi.set_model_default(true);
        assert_eq!(pi.value(&e(1, 0, false)), Semiring::natural().one());
        assert_eq!(pi.value(&e(0, 1, false)), Semiring::natural().zero());
        assert!(pi.is_model_defining());
    }
}
