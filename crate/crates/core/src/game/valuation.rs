use std::collections::BTreeMap;

use super::{GameGraph, Owner, Player, PosId};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, Value};

/// Basic valuations `f_σ` on terminals and `h_σ` on moves, for one player.
///
/// Terminals without an explicit value are worth 0; moves default to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicValuation {
    player: Player,
    semiring: Semiring,
    terminal: BTreeMap<PosId, Value>,
    moves: BTreeMap<(PosId, PosId), Value>,
}

impl BasicValuation {
    pub fn new(player: Player, semiring: Semiring) -> Self {
        BasicValuation {
            player,
            semiring,
            terminal: BTreeMap::new(),
            moves: BTreeMap::new(),
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn set_terminal(&mut self, g: &GameGraph, t: PosId, value: Value) -> Result<()> {
        if !g.is_terminal(t) {
            return Err(Error::MalformedGame(format!(
                "`{}` is not a terminal position",
                g.name(t)
            )));
        }
        self.semiring.check(&value)?;
        self.terminal.insert(t, value);
        Ok(())
    }

    pub fn set_move(&mut self, g: &GameGraph, from: PosId, to: PosId, value: Value) -> Result<()> {
        if !g.has_move(from, to) {
            return Err(Error::MalformedGame(format!(
                "no move {} -> {}",
                g.name(from),
                g.name(to)
            )));
        }
        self.semiring.check(&value)?;
        if self.semiring.is_zero(&value) {
            return Err(Error::MalformedGame(format!(
                "move {} -> {} has value 0",
                g.name(from),
                g.name(to)
            )));
        }
        self.moves.insert((from, to), value);
        Ok(())
    }

    pub fn terminal_value(&self, t: PosId) -> Value {
        self.terminal.get(&t).cloned().unwrap_or_else(|| self.semiring.zero())
    }

    pub fn move_value(&self, from: PosId, to: PosId) -> Value {
        self.moves
            .get(&(from, to))
            .cloned()
            .unwrap_or_else(|| self.semiring.one())
    }

    /// Whether every move has the default value 1.
    pub fn trivial_moves(&self) -> bool {
        self.moves.values().all(|v| self.semiring.is_one(v))
    }

    /// Applies `f` to every stored value, moving into `target`.
    pub fn map_values<F>(&self, target: Semiring, f: F) -> Result<BasicValuation>
    where
        F: Fn(&Value) -> Result<Value>,
    {
        let mut out = BasicValuation::new(self.player, target);
        for (t, v) in &self.terminal {
            let v = f(v)?;
            out.semiring.check(&v)?;
            out.terminal.insert(*t, v);
        }
        for (e, v) in &self.moves {
            let v = f(v)?;
            out.semiring.check(&v)?;
            if out.semiring.is_zero(&v) {
                return Err(Error::MalformedGame("a move value maps to 0".into()));
            }
            out.moves.insert(*e, v);
        }
        Ok(out)
    }

    pub fn explicit_terminals(&self) -> impl Iterator<Item = (PosId, &Value)> {
        self.terminal.iter().map(|(k, v)| (*k, v))
    }

    pub fn explicit_moves(&self) -> impl Iterator<Item = ((PosId, PosId), &Value)> {
        self.moves.iter().map(|(k, v)| (*k, v))
    }
}

/// Backward induction: sums at the player's positions, products at the
/// opponent's. Indexed by position.
pub fn acyclic_valuation(g: &GameGraph, basic: &BasicValuation) -> Result<Vec<Value>> {
    let order = g.backward_order()?;
    let sr = basic.semiring();
    let mut val: Vec<Option<Value>> = vec![None; g.len()];
    for v in order {
        let value = match g.owner(v) {
            Owner::Terminal => basic.terminal_value(v),
            owner => {
                let own = owner == Owner::of(basic.player());
                let mut acc = if own { sr.zero() } else { sr.one() };
                for &w in g.successors(v) {
                    let fw = val[w].as_ref().expect("successor evaluated first");
                    let contrib = sr.mul(&basic.move_value(v, w), fw)?;
                    acc = if own {
                        sr.add(&acc, &contrib)?
                    } else {
                        sr.mul(&acc, &contrib)?
                    };
                }
                acc
            }
        };
        val[v] = Some(value);
    }
    Ok(val.into_iter().map(|v| v.expect("all evaluated")).collect())
}
