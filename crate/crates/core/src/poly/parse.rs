use num_bigint::BigUint;

use super::{Exp, Monomial, PolyKind, Polynomial, Token};
use crate::error::{Error, Result};
use crate::semiring::num::NatInf;

struct Parser<'a> {
    kind: PolyKind,
    src: &'a str,
    pos: usize,
}

pub(super) fn parse_polynomial(kind: PolyKind, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        kind,
        src: text,
        pos: 0,
    };
    let value = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        while self.eat('+') {
            let rhs = self.product()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let rhs = self.power()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        match self.word() {
            Some(w) if w == "inf" => base.pow_inf(),
            Some(w) => {
                let n: u64 = w.parse().map_err(|_| self.error("expected an exponent"))?;
                base.pow(n)
            }
            None => Err(self.error("expected an exponent")),
        }
    }

    fn word(&mut self) -> Option<String> {
        let start = self.pos;
        if self.peek() == Some('~') {
            self.pos += 1;
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        (self.pos > start).then(|| self.src[start..self.pos].to_string())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        if self.src[self.pos..].starts_with("...") {
            self.pos += 3;
            return Polynomial::truncated_tail(self.kind)
                .map_err(|_| self.error("`...` is only valid for truncated series"));
        }
        let start = self.pos;
        let Some(w) = self.word() else {
            return Err(self.error("expected a token, number, or `(`"));
        };
        if w == "inf" {
            return self.coefficient(NatInf::Inf, start);
        }
        if w.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            let n: BigUint = w.parse().map_err(|_| {
                self.pos = start;
                self.error("malformed number")
            })?;
            return self.coefficient(NatInf::Fin(n), start);
        }
        let token = Token::parse(&w).ok_or_else(|| {
            self.pos = start;
            self.error("malformed token")
        })?;
        Polynomial::from_terms(self.kind, [(Monomial::power(token, Exp::Fin(1)), NatInf::one())])
    }

    fn coefficient(&mut self, n: NatInf, start: usize) -> Result<Polynomial> {
        Polynomial::constant(self.kind, &n).map_err(|e| {
            self.pos = start;
            self.error(&e.to_string())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_column_of_error() {
        let err = parse_polynomial(PolyKind::NatPoly, "s + * t").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 5, .. }), "{err:?}");
    }

    #[test]
    fn parses_negative_tokens_and_infinite_exponents() {
        let a = parse_polynomial(PolyKind::SorpInfDual, "s*~p + t^inf").unwrap();
        assert_eq!(a.to_string(), "s*~p + t^inf");
        assert!(parse_polynomial(PolyKind::NatPoly, "t^inf").is_err());
        assert!(parse_polynomial(PolyKind::NatPoly, "inf*s").is_err());
    }

    #[test]
    fn parenthesized_powers() {
        let a = parse_polynomial(PolyKind::NatPoly, "(s + t)^2").unwrap();
        assert_eq!(a.to_string(), "s^2 + 2*s*t + t^2");
    }
}
