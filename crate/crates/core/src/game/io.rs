//! Line-oriented game files.
//!
//! ```text
//! # comment
//! node v 0          # owner: 0, 1 or T (terminal)
//! move v w
//! value 0 s s*t     # f_0(s) for player 0
//! weight 0 v w 2    # h_0(vw) for player 0
//! ```

use std::collections::BTreeMap;

use super::{BasicValuation, GameGraph, Owner, Player};
use crate::error::{Error, Result};
use crate::poly::{PolyKind, Polynomial, Token};
use crate::semiring::{Semiring, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameSpec {
    pub nodes: Vec<(String, Owner, usize)>,
    pub moves: Vec<(String, String, usize)>,
    pub values: Vec<(Player, String, String, usize)>,
    pub weights: Vec<(Player, String, String, String, usize)>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Splits off `n` whitespace-separated fields and returns them with the rest of the line.
fn fields(line: &str, n: usize) -> Option<(Vec<&str>, &str)> {
    let mut out = Vec::with_capacity(n);
    let mut rest = line.trim_start();
    for _ in 0..n {
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        out.push(&rest[..end]);
        rest = rest[end..].trim_start();
    }
    Some((out, rest.trim_end()))
}

fn player(text: &str, line: usize) -> Result<Player> {
    match text {
        "0" => Ok(Player::Zero),
        "1" => Ok(Player::One),
        _ => Err(syntax(line, format!("expected player 0 or 1, found `{text}`"))),
    }
}

pub fn parse_spec(text: &str) -> Result<GameSpec> {
    let mut spec = GameSpec::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, _) = fields(line, 1).expect("nonempty line");
        let kw = kw[0];
        let bad = || syntax(line_no, format!("malformed `{kw}` line"));
        match kw {
            "node" => {
                let (f, rest) = fields(line, 3).ok_or_else(bad)?;
                if !rest.is_empty() {
                    return Err(bad());
                }
                let owner = match f[2] {
                    "0" => Owner::Player0,
                    "1" => Owner::Player1,
                    "T" | "t" => Owner::Terminal,
                    other => return Err(syntax(line_no, format!("unknown owner `{other}`"))),
                };
                spec.nodes.push((f[1].to_string(), owner, line_no));
            }
            "move" => {
                let (f, rest) = fields(line, 3).ok_or_else(bad)?;
                if !rest.is_empty() {
                    return Err(bad());
                }
                spec.moves.push((f[1].to_string(), f[2].to_string(), line_no));
            }
            "value" => {
                let (f, rest) = fields(line, 3).ok_or_else(bad)?;
                if rest.is_empty() {
                    return Err(bad());
                }
                spec.values
                    .push((player(f[1], line_no)?, f[2].to_string(), rest.to_string(), line_no));
            }
            "weight" => {
                let (f, rest) = fields(line, 4).ok_or_else(bad)?;
                if rest.is_empty() {
                    return Err(bad());
                }
                spec.weights.push((
                    player(f[1], line_no)?,
                    f[2].to_string(),
                    f[3].to_string(),
                    rest.to_string(),
                    line_no,
                ));
            }
            other => return Err(syntax(line_no, format!("unknown directive `{other}`"))),
        }
    }
    Ok(spec)
}

/// Token substitution applied to value expressions that are not constants of
/// the target semiring.
pub type Assignment = BTreeMap<Token, Value>;

/// Reads a value: a constant of `sr`, or (given an assignment) a token
/// expression evaluated under it.
pub fn read_value(sr: &Semiring, text: &str, assignment: &Assignment) -> Result<Value> {
    match sr.parse_value(text) {
        Ok(v) => Ok(v),
        Err(e) if assignment.is_empty() || sr.poly_kind().is_some() => Err(e),
        Err(e) => {
            let poly = Polynomial::parse(PolyKind::NatPoly, text)
                .or_else(|_| Polynomial::parse(PolyKind::SorpInf, text))
                .map_err(|_| e)?;
            poly.specialize(sr, |t| assignment.get(t).cloned())
        }
    }
}

pub fn build_game(spec: &GameSpec) -> Result<GameGraph> {
    let mut b = GameGraph::builder();
    for (name, owner, line) in &spec.nodes {
        b.position(name, *owner).map_err(|e| syntax(*line, e.to_string()))?;
    }
    for (from, to, line) in &spec.moves {
        b.add_move_by_name(from, to).map_err(|e| syntax(*line, e.to_string()))?;
    }
    b.build()
}

/// Basic valuations for both players (index 0 and 1).
pub fn build_valuations(
    g: &GameGraph,
    spec: &GameSpec,
    sr: &Semiring,
    assignment: &Assignment,
) -> Result<[BasicValuation; 2]> {
    let mut vals = [
        BasicValuation::new(Player::Zero, sr.clone()),
        BasicValuation::new(Player::One, sr.clone()),
    ];
    let lookup = |name: &str, line: usize| {
        g.position(name)
            .ok_or_else(|| syntax(line, format!("unknown position `{name}`")))
    };
    for (p, t, text, line) in &spec.values {
        let pos = lookup(t, *line)?;
        let v = read_value(sr, text, assignment).map_err(|e| located(e, *line))?;
        vals[p.index() as usize].set_terminal(g, pos, v)?;
    }
    for (p, a, b, text, line) in &spec.weights {
        let (a, b) = (lookup(a, *line)?, lookup(b, *line)?);
        let v = read_value(sr, text, assignment).map_err(|e| located(e, *line))?;
        vals[p.index() as usize].set_move(g, a, b, v)?;
    }
    Ok(vals)
}

fn located(e: Error, line: usize) -> Error {
    match e {
        Error::Syntax { column, message, .. } => Error::Syntax { line, column, message },
        other => other,
    }
}

/// Parses a game file and its valuations over `sr`.
pub fn parse_game(text: &str, sr: &Semiring) -> Result<(GameGraph, [BasicValuation; 2])> {
    parse_game_with(text, sr, &Assignment::new())
}

pub fn parse_game_with(text: &str, sr: &Semiring, assignment: &Assignment) -> Result<(GameGraph, [BasicValuation; 2])> {
    let spec = parse_spec(text)?;
    let g = build_game(&spec)?;
    let vals = build_valuations(&g, &spec, sr, assignment)?;
    Ok((g, vals))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_line_numbers() {
        let err = parse_spec("node v 0\nbogus x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = parse_spec("node v Q\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn tokens_substituted_for_numeric_semirings() {
        let src = "node v 0\nnode s T\nmove v s\nvalue 0 s s*t\n";
        let sr = Semiring::nat_inf();
        let mut a = Assignment::new();
        a.insert(Token::positive("s"), Value::NatInf(2.into()));
        a.insert(Token::positive("t"), Value::NatInf(3.into()));
        let (g, vals) = parse_game_with(src, &sr, &a).unwrap();
        assert_eq!(
            vals[0].terminal_value(g.position("s").unwrap()),
            Value::NatInf(6.into())
        );
        assert!(parse_game(src, &sr).is_err());
    }
}
