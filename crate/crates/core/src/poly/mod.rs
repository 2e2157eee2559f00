//! Exact provenance polynomials in several quotient and completion variants.

mod monomial;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use monomial::{is_antichain, mono_absorbs, normalize_antichain, Exp, Monomial, Token, TokenSpace};

use crate::error::{Error, Result};
use crate::semiring::num::NatInf;
use crate::semiring::{Semiring, Value};

/// Default degree bound for truncated power series.
pub const DEFAULT_TRUNC_DEGREE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    /// ℕ[X]
    NatPoly,
    /// 𝔹[X]: coefficients dropped.
    BoolPoly,
    /// 𝕎[X]: coefficients and exponents dropped.
    WhyPoly,
    /// 𝕊[X]: absorptive polynomials.
    Sorp,
    /// PosBool(X): irredundant sets of variable sets.
    PosBool,
    /// ℕ[X, X̄]: p·~p = 0.
    DualNatPoly,
    /// 𝕊^∞[X]: antichains of monomials with exponents in ℕ ∪ {∞}.
    SorpInf,
    /// 𝕊^∞[X, X̄]
    SorpInfDual,
    /// ℕ^∞[[X]] cut at the given total degree.
    TruncSeries(u32),
    /// ℕ^∞[[X, X̄]] cut at the given total degree.
    TruncSeriesDual(u32),
}

impl PolyKind {
    pub fn name(self) -> String {
        match self {
            PolyKind::NatPoly => "natpoly".into(),
            PolyKind::BoolPoly => "boolpoly".into(),
            PolyKind::WhyPoly => "whypoly".into(),
            PolyKind::Sorp => "sorp".into(),
            PolyKind::PosBool => "posbool".into(),
            PolyKind::DualNatPoly => "dualnatpoly".into(),
            PolyKind::SorpInf => "sorpinf".into(),
            PolyKind::SorpInfDual => "sorpinfdual".into(),
            PolyKind::TruncSeries(d) => format!("series:{d}"),
            PolyKind::TruncSeriesDual(d) => format!("seriesdual:{d}"),
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(
            self,
            PolyKind::DualNatPoly | PolyKind::SorpInfDual | PolyKind::TruncSeriesDual(_)
        )
    }

    pub fn is_multilinear(self) -> bool {
        matches!(self, PolyKind::WhyPoly | PolyKind::PosBool)
    }

    pub fn is_coefficient_free(self) -> bool {
        matches!(
            self,
            PolyKind::BoolPoly
                | PolyKind::WhyPoly
                | PolyKind::Sorp
                | PolyKind::PosBool
                | PolyKind::SorpInf
                | PolyKind::SorpInfDual
        )
    }

    pub fn is_absorptive(self) -> bool {
        matches!(
            self,
            PolyKind::Sorp | PolyKind::PosBool | PolyKind::SorpInf | PolyKind::SorpInfDual
        )
    }

    pub fn allows_inf_exponent(self) -> bool {
        matches!(self, PolyKind::SorpInf | PolyKind::SorpInfDual)
    }

    pub fn trunc_degree(self) -> Option<u32> {
        match self {
            PolyKind::TruncSeries(d) | PolyKind::TruncSeriesDual(d) => Some(d),
            _ => None,
        }
    }

    /// Whether `self` maps onto `target` by a canonical quotient homomorphism.
    pub fn projects_to(self, target: PolyKind) -> bool {
        use PolyKind::*;
        if self == target {
            return true;
        }
        match (self, target) {
            (NatPoly, _) => true,
            (BoolPoly, WhyPoly | PosBool | Sorp | SorpInf | SorpInfDual) => true,
            (WhyPoly, PosBool) => true,
            (Sorp, PosBool | SorpInf | SorpInfDual) => true,
            (SorpInf, PosBool | SorpInfDual) => true,
            (DualNatPoly, SorpInfDual | TruncSeriesDual(_)) => true,
            (TruncSeries(d), TruncSeries(e) | TruncSeriesDual(e)) => e <= d,
            (TruncSeriesDual(d), TruncSeriesDual(e)) => e <= d,
            _ => false,
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A polynomial in canonical form for its kind.
///
/// For truncated series, `truncated` records that terms above the degree
/// bound were discarded, so the stored terms are a prefix of the true value.
/// With dual tokens a discarded tail can later be annihilated by `p·~p = 0`,
/// so there the marker is only a display hint and equality compares the
/// stored prefix.
#[derive(Clone, Debug)]
pub struct Polynomial {
    kind: PolyKind,
    terms: BTreeMap<Monomial, NatInf>,
    truncated: bool,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.terms == other.terms
            && (matches!(self.kind, PolyKind::TruncSeriesDual(_)) || self.truncated == other.truncated)
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(kind: PolyKind) -> Self {
        Polynomial {
            kind,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn one(kind: PolyKind) -> Self {
        Self::monomial(kind, Monomial::one())
    }

    pub fn monomial(kind: PolyKind, m: Monomial) -> Self {
        Self::canonical(kind, [(m, NatInf::one())], false)
    }

    pub fn var(kind: PolyKind, token: Token) -> Self {
        Self::monomial(kind, Monomial::var(token))
    }

    /// Builds a polynomial from raw terms, checking that exponents and
    /// coefficients fit the kind.
    pub fn from_terms<I>(kind: PolyKind, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, NatInf)>,
    {
        let terms: Vec<(Monomial, NatInf)> = terms.into_iter().collect();
        for (m, c) in &terms {
            check_term(kind, m, c)?;
        }
        Ok(Self::canonical(kind, terms, false))
    }

    /// The constant `n·1`.
    pub fn constant(kind: PolyKind, n: &NatInf) -> Result<Self> {
        Self::from_terms(kind, [(Monomial::one(), n.clone())])
    }

    /// A truncated series known only to be nonzero above the degree bound.
    pub fn truncated_tail(kind: PolyKind) -> Result<Self> {
        if kind.trunc_degree().is_none() {
            return Err(Error::invalid(
                &kind.name(),
                "...",
                "only truncated series have a tail marker",
            ));
        }
        Ok(Polynomial {
            kind,
            terms: BTreeMap::new(),
            truncated: true,
        })
    }

    fn canonical<I>(kind: PolyKind, terms: I, truncated: bool) -> Self
    where
        I: IntoIterator<Item = (Monomial, NatInf)>,
    {
        let mut acc: BTreeMap<Monomial, NatInf> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let m = if kind.is_multilinear() { m.multilinear() } else { m };
            if kind.is_dual() && m.has_complementary_pair() {
                continue;
            }
            let entry = acc.entry(m).or_insert_with(NatInf::zero);
            *entry = entry.add(&c);
        }
        let mut truncated = truncated;
        if let Some(d) = kind.trunc_degree() {
            let before = acc.len();
            acc.retain(|m, _| m.total_degree() <= Exp::Fin(u64::from(d)));
            truncated |= acc.len() != before;
        } else {
            truncated = false;
        }
        if kind.is_coefficient_free() {
            for c in acc.values_mut() {
                *c = NatInf::one();
            }
        }
        if kind.is_absorptive() {
            acc = normalize_antichain(acc.into_keys())
                .into_iter()
                .map(|m| (m, NatInf::one()))
                .collect();
        }
        Polynomial {
            kind,
            terms: acc,
            truncated,
        }
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &NatInf)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> NatInf {
        self.terms.get(m).cloned().unwrap_or_else(NatInf::zero)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && !self.truncated
    }

    pub fn is_one(&self) -> bool {
        !self.truncated && self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(NatInf::is_one)
    }

    pub fn tokens(&self) -> BTreeSet<Token> {
        self.terms.keys().flat_map(|m| m.tokens().cloned()).collect()
    }

    /// Monomials in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &NatInf)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    fn same_kind(&self, other: &Polynomial) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.kind.name(),
                right: other.kind.name(),
            })
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_kind(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        Ok(Self::canonical(self.kind, terms, self.truncated || other.truncated))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_kind(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.kind));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Ok(Self::canonical(self.kind, terms, self.truncated || other.truncated))
    }

    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        let mut result = Polynomial::one(self.kind);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `self^∞`, the infimum of the descending powers, where it is representable.
    pub fn pow_inf(&self) -> Result<Polynomial> {
        if self.is_zero() || self.is_one() {
            return Ok(self.clone());
        }
        match self.kind {
            PolyKind::PosBool => Ok(self.clone()),
            PolyKind::SorpInf | PolyKind::SorpInfDual if self.terms.len() == 1 => {
                let m = self.terms.keys().next().expect("one term").infinite_power();
                Ok(Polynomial::monomial(self.kind, m))
            }
            _ => Err(Error::InfExponentUnsupported(format!("{} (value {self})", self.kind))),
        }
    }

    /// Natural order `self ≤ other`.
    pub fn leq(&self, other: &Polynomial) -> Result<bool> {
        self.same_kind(other)?;
        if self.kind.is_coefficient_free() {
            return Ok(&self.add(other)? == other);
        }
        if self.truncated && !other.truncated {
            return Ok(false);
        }
        Ok(self.terms.iter().all(|(m, c)| *c <= other.coefficient(m)))
    }

    /// Kleene star `Σ aⁱ` where it exists.
    pub fn star(&self) -> Result<Polynomial> {
        let kind = self.kind;
        if kind.is_absorptive() {
            return Ok(Polynomial::one(kind));
        }
        match kind {
            PolyKind::WhyPoly => {
                let mut sum = Polynomial::one(kind);
                let mut power = Polynomial::one(kind);
                loop {
                    power = power.mul(self)?;
                    let next = sum.add(&power)?;
                    if next == sum {
                        return Ok(sum);
                    }
                    sum = next;
                }
            }
            PolyKind::TruncSeries(d) | PolyKind::TruncSeriesDual(d) => {
                // (c + r)* = c*·(r·c*)* with c the constant term.
                let c = self.coefficient(&Monomial::one());
                let c_star = if c.is_zero() { NatInf::one() } else { NatInf::Inf };
                let c_star = Polynomial::constant(kind, &c_star)?;
                let rest = Polynomial {
                    kind,
                    terms: self
                        .terms
                        .iter()
                        .filter(|(m, _)| !m.is_one())
                        .map(|(m, c)| (m.clone(), c.clone()))
                        .collect(),
                    truncated: self.truncated,
                };
                let q = rest.mul(&c_star)?;
                let mut sum = Polynomial::one(kind);
                let mut power = Polynomial::one(kind);
                for _ in 0..=d {
                    power = power.mul(&q)?;
                    sum = sum.add(&power)?;
                }
                c_star.mul(&sum)
            }
            _ => Err(Error::NotOmegaContinuous(kind.name())),
        }
    }

    /// Replaces exponents `>= threshold` by ∞ (generalized absorptive kinds only).
    pub fn saturate_exponents(&self, threshold: u64) -> Polynomial {
        if !self.kind.allows_inf_exponent() {
            return self.clone();
        }
        Self::canonical(
            self.kind,
            self.terms.iter().map(|(m, c)| (m.saturate(threshold), c.clone())),
            self.truncated,
        )
    }

    /// Replaces every coefficient that differs from `reference` by ∞
    /// (truncated series only).
    pub fn pin_changed_coefficients(&self, reference: &Polynomial) -> Polynomial {
        if self.kind.trunc_degree().is_none() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            if reference.coefficient(m) == *c {
                (m.clone(), c.clone())
            } else {
                (m.clone(), NatInf::Inf)
            }
        });
        Self::canonical(self.kind, terms, self.truncated)
    }

    /// Image under the canonical quotient map onto `target`.
    pub fn project(&self, target: PolyKind) -> Result<Polynomial> {
        if !self.kind.projects_to(target) {
            return Err(Error::IllegalProjection {
                from: self.kind.name(),
                to: target.name(),
            });
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.clone()));
        Ok(Self::canonical(target, terms, self.truncated))
    }

    /// Evaluates under the homomorphism induced by `assignment`.
    ///
    /// The discarded tail of a truncated series contributes nothing.
    pub fn specialize<F>(&self, target: &Semiring, assignment: F) -> Result<Value>
    where
        F: Fn(&Token) -> Option<Value>,
    {
        let mut cache: BTreeMap<Token, Value> = BTreeMap::new();
        for t in self.tokens() {
            let v = assignment(&t).ok_or_else(|| Error::UnassignedToken(t.to_string()))?;
            target.check(&v)?;
            cache.insert(t, v);
        }
        if self.kind.is_dual() {
            for t in cache.keys().filter(|t| !t.is_negative()) {
                let comp = t.complement();
                let other = cache.get(&comp).cloned().or_else(|| assignment(&comp));
                if let Some(other) = other {
                    if !target.is_zero(&target.mul(&cache[t], &other)?) {
                        return Err(Error::DualityViolated(t.to_string()));
                    }
                }
            }
        }
        let mut total = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.one();
            for (t, e) in m.iter() {
                let base = &cache[t];
                let p = match e {
                    Exp::Fin(n) => target.pow(base, n)?,
                    Exp::Inf => target.pow_inf(base)?,
                };
                term = target.mul(&term, &p)?;
            }
            let term = target.scale(c, &term)?;
            total = target.add(&total, &term)?;
        }
        Ok(total)
    }

    pub fn parse(kind: PolyKind, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(kind, text)
    }
}

fn check_term(kind: PolyKind, m: &Monomial, c: &NatInf) -> Result<()> {
    if m.has_infinite_exponent() && !kind.allows_inf_exponent() {
        return Err(Error::invalid(
            &kind.name(),
            &m.to_string(),
            "infinite exponents are not allowed",
        ));
    }
    if c.is_inf() && !kind.is_coefficient_free() && kind.trunc_degree().is_none() {
        return Err(Error::invalid(
            &kind.name(),
            "inf",
            "infinite coefficients are not allowed",
        ));
    }
    Ok(())
}

/// `numerator · (1 + ratio + ratio² + …)` cut at degree `d`.
pub fn series_geom(numerator: &Polynomial, ratio: &Monomial, d: u32) -> Result<Polynomial> {
    let kind = if numerator.kind.is_dual() {
        PolyKind::TruncSeriesDual(d)
    } else {
        PolyKind::TruncSeries(d)
    };
    let num = Polynomial::canonical(
        kind,
        numerator.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        numerator.truncated,
    );
    let ratio = Polynomial::monomial(kind, ratio.clone());
    num.mul(&ratio.star()?)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str(if self.truncated { "..." } else { "0" });
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (c.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{m}")?,
            }
        }
        if self.truncated {
            f.write_str(" + ...")?;
        }
        Ok(())
    }
}
