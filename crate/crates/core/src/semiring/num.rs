//! Exact numeric payloads: naturals extended by infinity and nonnegative
//! rationals extended by infinity.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element of ℕ ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatInf {
    Fin(BigUint),
    Inf,
}

impl NatInf {
    pub fn zero() -> Self {
        NatInf::Fin(BigUint::zero())
    }

    pub fn one() -> Self {
        NatInf::Fin(BigUint::one())
    }

    pub fn from_u64(n: u64) -> Self {
        NatInf::Fin(BigUint::from(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NatInf::Fin(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, NatInf::Fin(n) if n.is_one())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, NatInf::Inf)
    }

    pub fn add(&self, other: &NatInf) -> NatInf {
        match (self, other) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a + b),
            _ => NatInf::Inf,
        }
    }

    /// Product with the convention 0·∞ = 0.
    pub fn mul(&self, other: &NatInf) -> NatInf {
        if self.is_zero() || other.is_zero() {
            return NatInf::zero();
        }
        match (self, other) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a * b),
            _ => NatInf::Inf,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            NatInf::Fin(n) => u64::try_from(n).ok(),
            NatInf::Inf => None,
        }
    }
}

impl From<u64> for NatInf {
    fn from(n: u64) -> Self {
        NatInf::from_u64(n)
    }
}

impl fmt::Display for NatInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatInf::Fin(n) => write!(f, "{n}"),
            NatInf::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for NatInf {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(NatInf::Inf);
        }
        s.parse::<BigUint>()
            .map(NatInf::Fin)
            .map_err(|_| format!("`{s}` is not a natural number or `inf`"))
    }
}

/// A nonnegative rational or ∞, the carrier of the tropical semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Fin(BigRational),
    Inf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Fin(BigRational::zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn min(&self, other: &ExtRat) -> ExtRat {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn plus(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Fin(r) => write_rational(f, r),
            ExtRat::Inf => f.write_str("inf"),
        }
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    struct Show<'a>(&'a BigRational);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_rational(f, self.0)
        }
    }
    Show(r).to_string()
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25` exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let frac_part: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let mut frac_value = BigRational::new(frac_part, scale);
        if negative {
            frac_value = -frac_value;
        }
        return Some(BigRational::from_integer(int_part) + frac_value);
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natinf_arithmetic() {
        let two = NatInf::from_u64(2);
        assert_eq!(two.add(&NatInf::from_u64(3)), NatInf::from_u64(5));
        assert_eq!(two.mul(&NatInf::Inf), NatInf::Inf);
        assert_eq!(NatInf::zero().mul(&NatInf::Inf), NatInf::zero());
        assert!(NatInf::from_u64(7) < NatInf::Inf);
        assert_eq!("inf".parse::<NatInf>().unwrap(), NatInf::Inf);
        assert_eq!(NatInf::Inf.to_string(), "inf");
    }

    #[test]
    fn rationals_parse_exactly() {
        let r = parse_rational("0.25").unwrap();
        assert_eq!(r, BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(rational_to_string(&parse_rational("18/25").unwrap()), "18/25");
    }
}
