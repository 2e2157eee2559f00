//! Formula syntax:
//!
//! ```text
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | ('exists' | 'forall') IDENT '.' or | atom
//! atom    := 'true' | 'false' | '(' or ')'
//!          | '[' ('lfp' | 'gfp') IDENT '(' vars ')' '.' or ']' '(' terms ')'
//!          | IDENT '(' terms ')' | IDENT ('=' | '!=') IDENT
//! ```
//!
//! Quantifier bodies extend as far to the right as possible.

use super::formula::{FixKind, Formula, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

const SYMBOLS: [&str; 11] = ["!=", "!", "&", "|", ".", ",", "(", ")", "[", "]", "="];

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), line, col));
            col += i - start;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(*s)) {
            Some(s) => {
                toks.push((Tok::Sym(s), line, col));
                i += s.len();
                col += s.len();
            }
            None => {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks })
}

struct Parser {
    lex: Lexer,
    pos: usize,
    /// Names bound at the current point, innermost last.
    bound: Vec<String>,
}

const KEYWORDS: [&str; 6] = ["exists", "forall", "lfp", "gfp", "true", "false"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.lex.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (_, line, column) = self.lex.toks[self.pos];
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected `{sym}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        Ok(if self.bound.contains(&name) {
            Term::Var(name)
        } else {
            Term::Elem(name)
        })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat("|") {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("!") {
            return Ok(Formula::not(self.unary()?));
        }
        match self.peek().clone() {
            Tok::Ident(k) if k == "exists" || k == "forall" => {
                self.pos += 1;
                let v = self.ident()?;
                self.expect(".")?;
                self.bound.push(v.clone());
                let body = self.or();
                self.bound.pop();
                let body = Box::new(body?);
                Ok(if k == "exists" {
                    Formula::Exists(v, body)
                } else {
                    Formula::Forall(v, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        if self.eat("(") {
            let f = self.or()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.eat("[") {
            let kind = match self.bump() {
                Tok::Ident(k) if k == "lfp" => FixKind::Lfp,
                Tok::Ident(k) if k == "gfp" => FixKind::Gfp,
                _ => {
                    self.pos -= 1;
                    return self.err("expected `lfp` or `gfp`");
                }
            };
            let rel = self.ident()?;
            let vars = self.list(|p| p.ident())?;
            self.expect(".")?;
            let depth = self.bound.len();
            self.bound.extend(vars.iter().cloned());
            let body = self.or();
            self.bound.truncate(depth);
            let body = body?;
            self.expect("]")?;
            let args = self.list(|p| p.term())?;
            return Ok(Formula::Fix {
                kind,
                rel,
                vars,
                body: Box::new(body),
                args,
            });
        }
        match self.peek().clone() {
            Tok::Ident(k) if k == "true" => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Tok::Ident(k) if k == "false" => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Tok::Ident(_) => {
                let save = self.pos;
                let name = self.ident()?;
                if matches!(self.peek(), Tok::Sym("(")) {
                    let args = self.list(|p| p.term())?;
                    return Ok(Formula::Atom { rel: name, args });
                }
                self.pos = save;
                let a = self.term()?;
                if self.eat("=") {
                    Ok(Formula::Eq(a, self.term()?))
                } else if self.eat("!=") {
                    Ok(Formula::Neq(a, self.term()?))
                } else {
                    self.err("expected `(`, `=` or `!=`")
                }
            }
            _ => self.err("expected a formula"),
        }
    }
}

/// Parses and checks arities and parameter-freeness.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        lex: lex(text)?,
        pos: 0,
        bound: Vec::new(),
    };
    let f = p.or()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    f.check()?;
    Ok(f)
}
