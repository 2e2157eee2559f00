use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A provenance token. Positive tokens annotate atoms; the negative token
/// with the same name (written `~p`) annotates the negated atom.
///
/// Ordered with all positive tokens first, each group by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    negative: bool,
    name: Arc<str>,
}

impl Token {
    pub fn positive(name: &str) -> Self {
        Token {
            name: Arc::from(name),
            negative: false,
        }
    }

    pub fn negative(name: &str) -> Self {
        Token {
            name: Arc::from(name),
            negative: true,
        }
    }

    /// Parses `p` or `~p`.
    pub fn parse(text: &str) -> Option<Self> {
        let (negative, name) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let valid = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        valid.then(|| Token {
            name: Arc::from(name),
            negative,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// The paired token of opposite polarity.
    pub fn complement(&self) -> Token {
        Token {
            name: self.name.clone(),
            negative: !self.negative,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "~{}", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// A finite token space: positive tokens together with their paired negatives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenSpace {
    tokens: BTreeSet<Token>,
}

impl TokenSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, token: Token) {
        self.tokens.insert(token);
    }

    pub fn contains(&self, token: &Token) -> bool {
        self.tokens.contains(token)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Every token whose complement is also present, listed once (positive side).
    pub fn pairs(&self) -> impl Iterator<Item = (&Token, Token)> {
        self.tokens
            .iter()
            .filter(|t| !t.is_negative() && self.tokens.contains(&t.complement()))
            .map(|t| (t, t.complement()))
    }

    pub fn extend<I: IntoIterator<Item = Token>>(&mut self, tokens: I) {
        self.tokens.extend(tokens);
    }
}

impl FromIterator<Token> for TokenSpace {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        TokenSpace {
            tokens: iter.into_iter().collect(),
        }
    }
}

/// Exponent in ℕ ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exp {
    Fin(u64),
    Inf,
}

impl Exp {
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Exp) -> Exp {
        match (self, other) {
            (Exp::Fin(a), Exp::Fin(b)) => a.checked_add(b).map_or(Exp::Inf, Exp::Fin),
            _ => Exp::Inf,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Exp::Inf
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exp::Fin(n) => write!(f, "{n}"),
            Exp::Inf => f.write_str("inf"),
        }
    }
}

/// A monomial: a finitely supported map from tokens to nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Token, Exp>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(token: Token) -> Self {
        Self::power(token, Exp::Fin(1))
    }

    pub fn power(token: Token, exp: Exp) -> Self {
        let mut m = BTreeMap::new();
        if exp != Exp::Fin(0) {
            m.insert(token, exp);
        }
        Monomial(m)
    }

    pub fn from_exponents<I: IntoIterator<Item = (Token, Exp)>>(iter: I) -> Self {
        let mut out = Monomial::one();
        for (t, e) in iter {
            out = out.mul(&Monomial::power(t, e));
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, token: &Token) -> Exp {
        self.0.get(token).copied().unwrap_or(Exp::Fin(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Token, Exp)> {
        self.0.iter().map(|(t, e)| (t, *e))
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.0.keys()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (t, e) in &other.0 {
            let entry = out.entry(t.clone()).or_insert(Exp::Fin(0));
            *entry = entry.add(*e);
        }
        Monomial(out)
    }

    pub fn total_degree(&self) -> Exp {
        self.0.values().fold(Exp::Fin(0), |acc, e| acc.add(*e))
    }

    pub fn has_infinite_exponent(&self) -> bool {
        self.0.values().any(|e| e.is_inf())
    }

    /// True iff some token occurs together with its complement.
    pub fn has_complementary_pair(&self) -> bool {
        self.0
            .keys()
            .any(|t| !t.is_negative() && self.0.contains_key(&t.complement()))
    }

    /// Caps every exponent at one (drops exponents, keeps the variable set).
    pub fn multilinear(&self) -> Monomial {
        Monomial(self.0.keys().map(|t| (t.clone(), Exp::Fin(1))).collect())
    }

    /// Replaces every finite exponent `>= threshold` by ∞.
    pub fn saturate(&self, threshold: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(t, e)| match e {
                    Exp::Fin(n) if *n >= threshold => (t.clone(), Exp::Inf),
                    _ => (t.clone(), *e),
                })
                .collect(),
        )
    }

    /// Raises every nonzero exponent to ∞.
    pub fn infinite_power(&self) -> Monomial {
        Monomial(self.0.keys().map(|t| (t.clone(), Exp::Inf)).collect())
    }

    /// `self ⪯ other` in the absorption order: `other` absorbs `self`
    /// iff `self(x) >= other(x)` for every token `x`.
    pub fn absorbed_by(&self, other: &Monomial) -> bool {
        other.0.iter().all(|(t, e)| self.exponent(t) >= *e)
    }

    /// Display order: ascending total degree, then descending exponent
    /// vectors over the lexicographically sorted token list.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let keys: BTreeSet<&Token> = self.0.keys().chain(other.0.keys()).collect();
            for t in keys {
                let c = other.exponent(t).cmp(&self.exponent(t));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (t, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                Exp::Fin(1) => write!(f, "{t}")?,
                _ => write!(f, "{t}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Whether `m1` is absorbed by `m2` (`m1 ⪯ m2`).
pub fn mono_absorbs(m1: &Monomial, m2: &Monomial) -> bool {
    m1.absorbed_by(m2)
}

/// Keeps the ⪯-maximal monomials; the result is an antichain.
pub fn normalize_antichain<I: IntoIterator<Item = Monomial>>(monomials: I) -> BTreeSet<Monomial> {
    let mut all: Vec<Monomial> = monomials.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    // Fewer/lower exponents first: a monomial can only be absorbed by one
    // that does not come after it in this order.
    all.sort_by(|a, b| a.display_cmp(b));
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|k| m.absorbed_by(k)) {
            kept.retain(|k| !k.absorbed_by(&m));
            kept.push(m);
        }
    }
    kept.into_iter().collect()
}

pub fn is_antichain<'a, I: IntoIterator<Item = &'a Monomial>>(monomials: I) -> bool {
    let v: Vec<&Monomial> = monomials.into_iter().collect();
    v.iter()
        .enumerate()
        .all(|(i, a)| v.iter().enumerate().all(|(j, b)| i == j || !a.absorbed_by(b)))
}
