//! Commutative semirings with capability flags, and the concrete application
//! semirings used for game and formula valuations.

mod laws;
pub mod num;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use laws::{check_declared_laws, check_law, Law, LawReport};
use num::rational_to_string;
pub use num::{parse_rational, ExtRat, NatInf};

use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, PolyKind, Polynomial, Token, DEFAULT_TRUNC_DEGREE};

/// Clearance levels of the access-control semiring, in increasing order of
/// required clearance. `Zero` means inaccessible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clearance {
    P,
    C,
    S,
    T,
    Zero,
}

impl Clearance {
    pub const ALL: [Clearance; 5] = [Clearance::P, Clearance::C, Clearance::S, Clearance::T, Clearance::Zero];
}

impl fmt::Display for Clearance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clearance::P => "P",
            Clearance::C => "C",
            Clearance::S => "S",
            Clearance::T => "T",
            Clearance::Zero => "0",
        })
    }
}

impl FromStr for Clearance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "P" => Ok(Clearance::P),
            "C" => Ok(Clearance::C),
            "S" => Ok(Clearance::S),
            "T" => Ok(Clearance::T),
            "0" => Ok(Clearance::Zero),
            other => Err(format!("`{other}` is not one of P, C, S, T, 0")),
        }
    }
}

/// A semiring element. The variant must agree with the semiring it is used in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    NatInf(NatInf),
    Tropical(ExtRat),
    Viterbi(BigRational),
    /// Index into the label list of a min-max semiring.
    MinMax(usize),
    Access(Clearance),
    Poly(Polynomial),
}

impl Value {
    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    fn variant_name(&self) -> String {
        match self {
            Value::Bool(_) => "bool".into(),
            Value::Nat(_) => "nat".into(),
            Value::NatInf(_) => "natinf".into(),
            Value::Tropical(_) => "tropical".into(),
            Value::Viterbi(_) => "viterbi".into(),
            Value::MinMax(_) => "minmax".into(),
            Value::Access(_) => "access".into(),
            Value::Poly(p) => p.kind().name(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CapabilityFlags {
    pub plus_positive: bool,
    pub root_integral: bool,
    /// No zero divisors (and +-positive).
    pub positive: bool,
    pub idempotent_add: bool,
    pub idempotent_mul: bool,
    pub absorptive: bool,
    pub omega_continuous: bool,
    pub fully_omega_continuous: bool,
    pub chain_positive: bool,
}

impl CapabilityFlags {
    /// The implications between flags hold.
    pub fn is_consistent(&self) -> bool {
        (!self.absorptive || self.idempotent_add)
            && (!self.positive || self.plus_positive)
            && (!self.fully_omega_continuous || self.omega_continuous)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiringKind {
    Boolean,
    Natural,
    NatInf,
    Tropical,
    Viterbi,
    /// Labels in increasing order; the first is 0, the last is 1.
    MinMax(Arc<[String]>),
    Access,
    Poly(PolyKind),
}

/// A read-only semiring instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semiring {
    kind: SemiringKind,
    flags: CapabilityFlags,
}

/// A semiring expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Value),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
}

const ALL_TRUE: CapabilityFlags = CapabilityFlags {
    plus_positive: true,
    root_integral: true,
    positive: true,
    idempotent_add: true,
    idempotent_mul: true,
    absorptive: true,
    omega_continuous: true,
    fully_omega_continuous: true,
    chain_positive: true,
};

const FREE: CapabilityFlags = CapabilityFlags {
    plus_positive: true,
    root_integral: true,
    positive: true,
    idempotent_add: false,
    idempotent_mul: false,
    absorptive: false,
    omega_continuous: false,
    fully_omega_continuous: false,
    chain_positive: true,
};

impl Semiring {
    pub fn new(kind: SemiringKind) -> Result<Self> {
        let flags = match &kind {
            SemiringKind::Boolean | SemiringKind::Access => ALL_TRUE,
            SemiringKind::MinMax(labels) => {
                let distinct: BTreeSet<&String> = labels.iter().collect();
                if labels.len() < 2 || distinct.len() != labels.len() {
                    return Err(Error::UnknownSemiring(format!(
                        "minmax needs at least two distinct labels, got {}",
                        labels.join(",")
                    )));
                }
                ALL_TRUE
            }
            SemiringKind::Natural => FREE,
            SemiringKind::NatInf => CapabilityFlags {
                omega_continuous: true,
                fully_omega_continuous: true,
                ..FREE
            },
            SemiringKind::Tropical | SemiringKind::Viterbi => CapabilityFlags {
                idempotent_mul: false,
                chain_positive: false,
                ..ALL_TRUE
            },
            SemiringKind::Poly(k) => poly_flags(*k),
        };
        debug_assert!(flags.is_consistent());
        Ok(Semiring { kind, flags })
    }

    pub fn boolean() -> Self {
        Self::new(SemiringKind::Boolean).expect("static")
    }

    pub fn natural() -> Self {
        Self::new(SemiringKind::Natural).expect("static")
    }

    pub fn nat_inf() -> Self {
        Self::new(SemiringKind::NatInf).expect("static")
    }

    pub fn tropical() -> Self {
        Self::new(SemiringKind::Tropical).expect("static")
    }

    pub fn viterbi() -> Self {
        Self::new(SemiringKind::Viterbi).expect("static")
    }

    pub fn access() -> Self {
        Self::new(SemiringKind::Access).expect("static")
    }

    pub fn min_max<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Self::new(SemiringKind::MinMax(labels.into()))
    }

    pub fn poly(kind: PolyKind) -> Self {
        Self::new(SemiringKind::Poly(kind)).expect("static")
    }

    /// Parses a selector such as `viterbi`, `minmax:lo,mid,hi` or `series:6`.
    pub fn from_name(selector: &str) -> Result<Self> {
        let (name, param) = match selector.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (selector.trim(), None),
        };
        let degree = || -> Result<u32> {
            match param {
                None => Ok(DEFAULT_TRUNC_DEGREE),
                Some(p) => p
                    .parse::<u32>()
                    .ok()
                    .filter(|d| *d >= 1)
                    .ok_or_else(|| Error::UnknownSemiring(selector.to_string())),
            }
        };
        let simple = |s: Semiring| -> Result<Semiring> {
            match param {
                None => Ok(s),
                Some(_) => Err(Error::UnknownSemiring(selector.to_string())),
            }
        };
        match name {
            "bool" | "boolean" => simple(Self::boolean()),
            "nat" | "natural" => simple(Self::natural()),
            "natinf" => simple(Self::nat_inf()),
            "tropical" => simple(Self::tropical()),
            "viterbi" => simple(Self::viterbi()),
            "access" => simple(Self::access()),
            "minmax" => {
                let labels: Vec<&str> = param
                    .ok_or_else(|| Error::UnknownSemiring(selector.to_string()))?
                    .split(',')
                    .map(str::trim)
                    .collect();
                Self::min_max(&labels)
            }
            "natpoly" => simple(Self::poly(PolyKind::NatPoly)),
            "boolpoly" => simple(Self::poly(PolyKind::BoolPoly)),
            "whypoly" => simple(Self::poly(PolyKind::WhyPoly)),
            "sorp" => simple(Self::poly(PolyKind::Sorp)),
            "posbool" => simple(Self::poly(PolyKind::PosBool)),
            "dualnatpoly" => simple(Self::poly(PolyKind::DualNatPoly)),
            "sorpinf" => simple(Self::poly(PolyKind::SorpInf)),
            "sorpinfdual" => simple(Self::poly(PolyKind::SorpInfDual)),
            "series" => Ok(Self::poly(PolyKind::TruncSeries(degree()?))),
            "seriesdual" => Ok(Self::poly(PolyKind::TruncSeriesDual(degree()?))),
            _ => Err(Error::UnknownSemiring(selector.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            SemiringKind::Boolean => "bool".into(),
            SemiringKind::Natural => "nat".into(),
            SemiringKind::NatInf => "natinf".into(),
            SemiringKind::Tropical => "tropical".into(),
            SemiringKind::Viterbi => "viterbi".into(),
            SemiringKind::MinMax(labels) => format!("minmax:{}", labels.join(",")),
            SemiringKind::Access => "access".into(),
            SemiringKind::Poly(k) => k.name(),
        }
    }

    pub fn kind(&self) -> &SemiringKind {
        &self.kind
    }

    pub fn flags(&self) -> CapabilityFlags {
        self.flags
    }

    pub fn poly_kind(&self) -> Option<PolyKind> {
        match self.kind {
            SemiringKind::Poly(k) => Some(k),
            _ => None,
        }
    }

    pub fn zero(&self) -> Value {
        match &self.kind {
            SemiringKind::Boolean => Value::Bool(false),
            SemiringKind::Natural => Value::Nat(BigUint::zero()),
            SemiringKind::NatInf => Value::NatInf(NatInf::zero()),
            SemiringKind::Tropical => Value::Tropical(ExtRat::Inf),
            SemiringKind::Viterbi => Value::Viterbi(BigRational::zero()),
            SemiringKind::MinMax(_) => Value::MinMax(0),
            SemiringKind::Access => Value::Access(Clearance::Zero),
            SemiringKind::Poly(k) => Value::Poly(Polynomial::zero(*k)),
        }
    }

    pub fn one(&self) -> Value {
        match &self.kind {
            SemiringKind::Boolean => Value::Bool(true),
            SemiringKind::Natural => Value::Nat(BigUint::one()),
            SemiringKind::NatInf => Value::NatInf(NatInf::one()),
            SemiringKind::Tropical => Value::Tropical(ExtRat::zero()),
            SemiringKind::Viterbi => Value::Viterbi(BigRational::one()),
            SemiringKind::MinMax(labels) => Value::MinMax(labels.len() - 1),
            SemiringKind::Access => Value::Access(Clearance::P),
            SemiringKind::Poly(k) => Value::Poly(Polynomial::one(*k)),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    /// The value of a provenance token (polynomial semirings only).
    pub fn token(&self, t: &Token) -> Result<Value> {
        match self.kind {
            SemiringKind::Poly(k) => Ok(Value::Poly(Polynomial::var(k, t.clone()))),
            _ => Err(Error::invalid(
                &self.name(),
                &t.to_string(),
                "tokens need a polynomial semiring",
            )),
        }
    }

    fn mismatch(&self, v: &Value) -> Error {
        Error::VariantMismatch {
            expected: self.name(),
            found: v.variant_name(),
        }
    }

    /// Verifies that `v` is an element of this semiring.
    pub fn check(&self, v: &Value) -> Result<()> {
        let ok = match (&self.kind, v) {
            (SemiringKind::Boolean, Value::Bool(_))
            | (SemiringKind::Natural, Value::Nat(_))
            | (SemiringKind::NatInf, Value::NatInf(_))
            | (SemiringKind::Access, Value::Access(_)) => true,
            (SemiringKind::Tropical, Value::Tropical(x)) => match x {
                ExtRat::Fin(r) => *r >= BigRational::zero(),
                ExtRat::Inf => true,
            },
            (SemiringKind::Viterbi, Value::Viterbi(r)) => *r >= BigRational::zero() && *r <= BigRational::one(),
            (SemiringKind::MinMax(labels), Value::MinMax(i)) => *i < labels.len(),
            (SemiringKind::Poly(k), Value::Poly(p)) => p.kind() == *k,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(v))
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Value::Bool(x), Value::Bool(y)) => Value::Bool(*x || *y),
            (Value::Nat(x), Value::Nat(y)) => Value::Nat(x + y),
            (Value::NatInf(x), Value::NatInf(y)) => Value::NatInf(x.add(y)),
            (Value::Tropical(x), Value::Tropical(y)) => Value::Tropical(x.min(y)),
            (Value::Viterbi(x), Value::Viterbi(y)) => Value::Viterbi(x.max(y).clone()),
            (Value::MinMax(x), Value::MinMax(y)) => Value::MinMax(*x.max(y)),
            (Value::Access(x), Value::Access(y)) => Value::Access(*x.min(y)),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(y)?),
            _ => unreachable!("checked above"),
        })
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Value::Bool(x), Value::Bool(y)) => Value::Bool(*x && *y),
            (Value::Nat(x), Value::Nat(y)) => Value::Nat(x * y),
            (Value::NatInf(x), Value::NatInf(y)) => Value::NatInf(x.mul(y)),
            (Value::Tropical(x), Value::Tropical(y)) => Value::Tropical(x.plus(y)),
            (Value::Viterbi(x), Value::Viterbi(y)) => Value::Viterbi(x * y),
            (Value::MinMax(x), Value::MinMax(y)) => Value::MinMax(*x.min(y)),
            (Value::Access(x), Value::Access(y)) => Value::Access(*x.max(y)),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.mul(y)?),
            _ => unreachable!("checked above"),
        })
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Value>>(&self, values: I) -> Result<Value> {
        values.into_iter().try_fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Value>>(&self, values: I) -> Result<Value> {
        values.into_iter().try_fold(self.one(), |acc, v| self.mul(&acc, v))
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value> {
        match expr {
            Expr::Const(v) => {
                self.check(v)?;
                Ok(v.clone())
            }
            Expr::Add(xs) => xs.iter().try_fold(self.zero(), |acc, x| self.add(&acc, &self.eval(x)?)),
            Expr::Mul(xs) => xs.iter().try_fold(self.one(), |acc, x| self.mul(&acc, &self.eval(x)?)),
        }
    }

    /// The natural order: `a ≤ b` iff `a + x = b` for some `x`.
    pub fn leq(&self, a: &Value, b: &Value) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Value::Bool(x), Value::Bool(y)) => !*x || *y,
            (Value::Nat(x), Value::Nat(y)) => x <= y,
            (Value::NatInf(x), Value::NatInf(y)) => x <= y,
            (Value::Tropical(x), Value::Tropical(y)) => y <= x,
            (Value::Viterbi(x), Value::Viterbi(y)) => x <= y,
            (Value::MinMax(x), Value::MinMax(y)) => x <= y,
            (Value::Access(x), Value::Access(y)) => y <= x,
            (Value::Poly(x), Value::Poly(y)) => x.leq(y)?,
            _ => unreachable!("checked above"),
        })
    }

    pub fn pow(&self, a: &Value, n: u64) -> Result<Value> {
        if let Value::Poly(p) = a {
            self.check(a)?;
            return Ok(Value::Poly(p.pow(n)?));
        }
        let mut result = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    /// `a^∞`, the infimum of the descending chain of powers, where declared.
    pub fn pow_inf(&self, a: &Value) -> Result<Value> {
        self.check(a)?;
        if self.is_zero(a) || self.is_one(a) {
            return Ok(a.clone());
        }
        match a {
            Value::Bool(_) | Value::MinMax(_) | Value::Access(_) => Ok(a.clone()),
            Value::NatInf(_) => Ok(Value::NatInf(NatInf::Inf)),
            Value::Tropical(_) | Value::Viterbi(_) => Ok(self.zero()),
            Value::Poly(p) => Ok(Value::Poly(p.pow_inf()?)),
            Value::Nat(_) => Err(Error::InfExponentUnsupported(self.name())),
        }
    }

    pub fn pow_natinf(&self, a: &Value, n: &NatInf) -> Result<Value> {
        match n {
            NatInf::Inf => self.pow_inf(a),
            NatInf::Fin(k) => match u64::try_from(k) {
                Ok(k) => self.pow(a, k),
                Err(_) if self.flags.idempotent_mul || self.is_zero(a) || self.is_one(a) => Ok(a.clone()),
                Err(_) => Err(Error::InfExponentUnsupported(format!("{} (exponent {k})", self.name()))),
            },
        }
    }

    /// `n·a`, the n-fold sum of `a`.
    pub fn scale(&self, n: &NatInf, a: &Value) -> Result<Value> {
        self.check(a)?;
        if n.is_zero() {
            return Ok(self.zero());
        }
        if n.is_one() || self.flags.idempotent_add || self.is_zero(a) {
            return Ok(a.clone());
        }
        match (a, n) {
            (Value::Nat(x), NatInf::Fin(k)) => Ok(Value::Nat(x * k)),
            (Value::NatInf(x), _) => Ok(Value::NatInf(x.mul(n))),
            (Value::Poly(p), _) => Ok(Value::Poly(Polynomial::constant(p.kind(), n)?.mul(p)?)),
            _ => Err(Error::InfExponentUnsupported(format!(
                "{} (infinite multiple)",
                self.name()
            ))),
        }
    }

    /// Kleene star `a* = Σ aⁱ`.
    pub fn star(&self, a: &Value) -> Result<Value> {
        self.check(a)?;
        if !self.flags.omega_continuous {
            return Err(Error::NotOmegaContinuous(self.name()));
        }
        match a {
            Value::NatInf(x) => Ok(Value::NatInf(if x.is_zero() { NatInf::one() } else { NatInf::Inf })),
            Value::Poly(p) => Ok(Value::Poly(p.star()?)),
            _ if self.flags.absorptive => Ok(self.one()),
            _ => Err(Error::NotOmegaContinuous(self.name())),
        }
    }

    /// Greatest element, the starting point of descending Kleene iteration.
    /// For polynomial semirings the top depends on the token set.
    pub fn top(&self, tokens: &BTreeSet<Token>) -> Result<Value> {
        if !self.flags.fully_omega_continuous {
            return Err(Error::NotFullyOmegaContinuous(self.name()));
        }
        match &self.kind {
            SemiringKind::NatInf => Ok(Value::NatInf(NatInf::Inf)),
            SemiringKind::Poly(PolyKind::WhyPoly) => {
                let toks: Vec<&Token> = tokens.iter().collect();
                if toks.len() > 16 {
                    return Err(Error::NotFullyOmegaContinuous(format!(
                        "{} over {} tokens (top too large)",
                        self.name(),
                        toks.len()
                    )));
                }
                let monos = (0u32..1 << toks.len()).map(|mask| {
                    let m = Monomial::from_exponents(
                        toks.iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, t)| ((*t).clone(), Exp::Fin(1))),
                    );
                    (m, NatInf::one())
                });
                Ok(Value::Poly(Polynomial::from_terms(PolyKind::WhyPoly, monos)?))
            }
            SemiringKind::Poly(k @ (PolyKind::TruncSeries(d) | PolyKind::TruncSeriesDual(d))) => {
                let toks: Vec<&Token> = tokens.iter().collect();
                let mut monos = vec![Monomial::one()];
                let mut frontier = vec![Monomial::one()];
                for _ in 0..*d {
                    let mut next = BTreeSet::new();
                    for m in &frontier {
                        for t in &toks {
                            next.insert(m.mul(&Monomial::var((*t).clone())));
                        }
                    }
                    frontier = next.into_iter().collect();
                    monos.extend(frontier.iter().cloned());
                }
                let p = Polynomial::from_terms(*k, monos.into_iter().map(|m| (m, NatInf::Inf)))?;
                Ok(Value::Poly(p.add(&Polynomial::truncated_tail(*k)?)?))
            }
            // 1 is greatest for every remaining fully ω-continuous instance.
            _ => Ok(self.one()),
        }
    }

    pub fn parse_value(&self, text: &str) -> Result<Value> {
        let s = text.trim();
        let name = self.name();
        match &self.kind {
            SemiringKind::Boolean => match s {
                "true" | "1" => Ok(Value::Bool(true)),
                "false" | "0" => Ok(Value::Bool(false)),
                _ => Err(Error::invalid(&name, s, "expected true or false")),
            },
            SemiringKind::Natural => s
                .parse::<BigUint>()
                .map(Value::Nat)
                .map_err(|_| Error::invalid(&name, s, "expected a natural number")),
            SemiringKind::NatInf => s
                .parse::<NatInf>()
                .map(Value::NatInf)
                .map_err(|reason| Error::invalid(&name, s, reason)),
            SemiringKind::Tropical => {
                if s == "inf" {
                    return Ok(Value::Tropical(ExtRat::Inf));
                }
                match parse_rational(s) {
                    Some(r) if r >= BigRational::zero() => Ok(Value::Tropical(ExtRat::Fin(r))),
                    Some(_) => Err(Error::invalid(&name, s, "costs must be nonnegative")),
                    None => Err(Error::invalid(&name, s, "expected a rational or inf")),
                }
            }
            SemiringKind::Viterbi => match parse_rational(s) {
                Some(r) if r >= BigRational::zero() && r <= BigRational::one() => Ok(Value::Viterbi(r)),
                Some(_) => Err(Error::invalid(&name, s, "confidence must lie in [0,1]")),
                None => Err(Error::invalid(&name, s, "expected a rational")),
            },
            SemiringKind::MinMax(labels) => labels
                .iter()
                .position(|l| l == s)
                .map(Value::MinMax)
                .ok_or_else(|| Error::invalid(&name, s, "unknown label")),
            SemiringKind::Access => s
                .parse::<Clearance>()
                .map(Value::Access)
                .map_err(|reason| Error::invalid(&name, s, reason)),
            SemiringKind::Poly(k) => Polynomial::parse(*k, s).map(Value::Poly),
        }
    }

    /// Canonical text form; re-parses to the same value.
    pub fn format(&self, v: &Value) -> String {
        match (v, &self.kind) {
            (Value::Bool(b), _) => b.to_string(),
            (Value::Nat(n), _) => n.to_string(),
            (Value::NatInf(n), _) => n.to_string(),
            (Value::Tropical(x), _) => x.to_string(),
            (Value::Viterbi(r), _) => rational_to_string(r),
            (Value::MinMax(i), SemiringKind::MinMax(labels)) => {
                labels.get(*i).cloned().unwrap_or_else(|| format!("#{i}"))
            }
            (Value::MinMax(i), _) => format!("#{i}"),
            (Value::Access(c), _) => c.to_string(),
            (Value::Poly(p), _) => p.to_string(),
        }
    }

    /// A small sample set used by the law checks.
    pub fn default_samples(&self) -> Vec<Value> {
        let texts: Vec<String> = match &self.kind {
            SemiringKind::Boolean => vec!["false".into(), "true".into()],
            SemiringKind::Natural => ["0", "1", "2", "3"].map(String::from).to_vec(),
            SemiringKind::NatInf => ["0", "1", "2", "inf"].map(String::from).to_vec(),
            SemiringKind::Tropical => ["0", "1/2", "3", "inf"].map(String::from).to_vec(),
            SemiringKind::Viterbi => ["0", "1/2", "3/4", "1"].map(String::from).to_vec(),
            SemiringKind::MinMax(labels) => labels.iter().take(5).cloned().collect(),
            SemiringKind::Access => Clearance::ALL.iter().map(|c| c.to_string()).collect(),
            SemiringKind::Poly(k) => {
                let mut v: Vec<&str> = vec!["0", "1", "p", "p + q", "p*q^2"];
                match k {
                    PolyKind::NatPoly => v.push("2*p + 1"),
                    PolyKind::DualNatPoly | PolyKind::TruncSeriesDual(_) => v.extend(["~p", "2*q + ~p"]),
                    PolyKind::SorpInfDual => v.extend(["~p", "q + ~p^inf"]),
                    PolyKind::SorpInf => v.extend(["p^inf", "q + p^inf*q"]),
                    PolyKind::TruncSeries(_) => v.extend(["inf*p", "q + ..."]),
                    _ => {}
                }
                v.into_iter().map(String::from).collect()
            }
        };
        texts
            .iter()
            .map(|t| self.parse_value(t).expect("sample values parse"))
            .collect()
    }
}

fn poly_flags(kind: PolyKind) -> CapabilityFlags {
    let finite = CapabilityFlags {
        omega_continuous: true,
        fully_omega_continuous: true,
        ..FREE
    };
    match kind {
        PolyKind::NatPoly => FREE,
        PolyKind::DualNatPoly => CapabilityFlags {
            positive: false,
            ..FREE
        },
        PolyKind::BoolPoly => CapabilityFlags {
            idempotent_add: true,
            ..FREE
        },
        PolyKind::WhyPoly => CapabilityFlags {
            idempotent_add: true,
            ..finite
        },
        PolyKind::PosBool => ALL_TRUE,
        PolyKind::Sorp => CapabilityFlags {
            idempotent_add: true,
            absorptive: true,
            omega_continuous: true,
            chain_positive: false,
            ..FREE
        },
        PolyKind::SorpInf => CapabilityFlags {
            idempotent_mul: false,
            ..ALL_TRUE
        },
        PolyKind::SorpInfDual => CapabilityFlags {
            idempotent_mul: false,
            positive: false,
            ..ALL_TRUE
        },
        PolyKind::TruncSeries(_) => CapabilityFlags {
            chain_positive: false,
            ..finite
        },
        // Equality is up to the degree bound, so high powers vanish.
        PolyKind::TruncSeriesDual(_) => CapabilityFlags {
            chain_positive: false,
            positive: false,
            root_integral: false,
            ..finite
        },
    }
}
