//! Finite two-player game graphs and their provenance valuations.

mod bisim;
pub mod io;
mod separation;
mod strategy;
mod truncate;
mod valuation;
mod winning;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use bisim::{verify_counting_bisim, BisimReport};
pub use separation::{check_separating, SeparationMode, SeparationReport};
pub use strategy::{
    absorption_dominates, dominant_flags, enumerate_strategies, strategy_value, EnumerateOptions, Enumeration,
    Strategy, StrategyBuilder, ValueMode,
};
pub use truncate::{truncate, Boundary, Truncation};
pub use valuation::{acyclic_valuation, BasicValuation};
pub use winning::{attractor, winning_region, Objective, ObjectiveKind};

use crate::error::{Error, Result};

pub type PosId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn index(self) -> u8 {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Player0,
    Player1,
    Terminal,
}

impl Owner {
    pub fn of(player: Player) -> Owner {
        match player {
            Player::Zero => Owner::Player0,
            Player::One => Owner::Player1,
        }
    }

    pub fn player(self) -> Option<Player> {
        match self {
            Owner::Player0 => Some(Player::Zero),
            Owner::Player1 => Some(Player::One),
            Owner::Terminal => None,
        }
    }
}

/// A finite game graph. Terminal positions are exactly those without moves,
/// and there are no parallel moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    names: Vec<String>,
    owners: Vec<Owner>,
    succ: Vec<Vec<PosId>>,
    index: HashMap<String, PosId>,
}

impl GameGraph {
    pub fn builder() -> GameBuilder {
        GameBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn positions(&self) -> std::ops::Range<PosId> {
        0..self.names.len()
    }

    pub fn name(&self, v: PosId) -> &str {
        &self.names[v]
    }

    pub fn position(&self, name: &str) -> Option<PosId> {
        self.index.get(name).copied()
    }

    pub fn owner(&self, v: PosId) -> Owner {
        self.owners[v]
    }

    pub fn is_terminal(&self, v: PosId) -> bool {
        self.owners[v] == Owner::Terminal
    }

    pub fn successors(&self, v: PosId) -> &[PosId] {
        &self.succ[v]
    }

    pub fn has_move(&self, v: PosId, w: PosId) -> bool {
        self.succ[v].contains(&w)
    }

    pub fn moves(&self) -> impl Iterator<Item = (PosId, PosId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |w| (v, *w)))
    }

    pub fn terminals(&self) -> impl Iterator<Item = PosId> + '_ {
        self.positions().filter(|v| self.is_terminal(*v))
    }

    /// Positions ordered so that every successor precedes its predecessors.
    pub fn backward_order(&self) -> Result<Vec<PosId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut mark = vec![Mark::New; self.len()];
        let mut order = Vec::with_capacity(self.len());
        for start in self.positions() {
            if mark[start] != Mark::New {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            mark[start] = Mark::Active;
            while let Some((v, i)) = stack.pop() {
                if let Some(&w) = self.succ[v].get(i) {
                    stack.push((v, i + 1));
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Active => return Err(Error::CyclicGame(self.names[w].clone())),
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    order.push(v);
                }
            }
        }
        Ok(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.backward_order().is_ok()
    }

    /// Positions reachable from `roots` (including the roots).
    pub fn reachable_from(&self, roots: &[PosId]) -> BTreeSet<PosId> {
        let mut seen: BTreeSet<PosId> = roots.iter().copied().collect();
        let mut stack: Vec<PosId> = roots.to_vec();
        while let Some(v) = stack.pop() {
            for &w in &self.succ[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Positions without incoming moves.
    pub fn sources(&self) -> Vec<PosId> {
        let mut has_pred = vec![false; self.len()];
        for (_, w) in self.moves() {
            has_pred[w] = true;
        }
        self.positions().filter(|v| !has_pred[*v]).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct GameBuilder {
    names: Vec<String>,
    owners: Vec<Owner>,
    succ: Vec<Vec<PosId>>,
    index: HashMap<String, PosId>,
}

impl GameBuilder {
    pub fn position(&mut self, name: &str, owner: Owner) -> Result<PosId> {
        if self.index.contains_key(name) {
            return Err(Error::MalformedGame(format!("position `{name}` declared twice")));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.owners.push(owner);
        self.succ.push(Vec::new());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<PosId> {
        self.index.get(name).copied()
    }

    pub fn add_move(&mut self, from: PosId, to: PosId) -> Result<()> {
        if from >= self.names.len() || to >= self.names.len() {
            return Err(Error::MalformedGame(format!(
                "move {from} -> {to} names an unknown position"
            )));
        }
        if self.succ[from].contains(&to) {
            return Err(Error::MalformedGame(format!(
                "parallel move {} -> {}",
                self.names[from], self.names[to]
            )));
        }
        self.succ[from].push(to);
        Ok(())
    }

    pub fn add_move_by_name(&mut self, from: &str, to: &str) -> Result<()> {
        let a = self
            .lookup(from)
            .ok_or_else(|| Error::MalformedGame(format!("unknown position `{from}`")))?;
        let b = self
            .lookup(to)
            .ok_or_else(|| Error::MalformedGame(format!("unknown position `{to}`")))?;
        self.add_move(a, b)
    }

    pub fn build(self) -> Result<GameGraph> {
        for (v, owner) in self.owners.iter().enumerate() {
            let terminal = *owner == Owner::Terminal;
            let no_moves = self.succ[v].is_empty();
            if terminal && !no_moves {
                return Err(Error::MalformedGame(format!(
                    "terminal position `{}` has moves",
                    self.names[v]
                )));
            }
            if !terminal && no_moves {
                return Err(Error::MalformedGame(format!(
                    "non-terminal position `{}` has no moves",
                    self.names[v]
                )));
            }
        }
        Ok(GameGraph {
            names: self.names,
            owners: self.owners,
            succ: self.succ,
            index: self.index,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub acyclic: bool,
    /// A position on a cycle, when the graph is cyclic.
    pub cycle_witness: Option<PosId>,
    /// Backward-induction order, when the graph is acyclic.
    pub order: Option<Vec<PosId>>,
    /// Positions not reachable from the given roots (or from the sources when none were given).
    pub unreachable: Vec<PosId>,
}

/// Structural report on a game. Graphs built through [`GameBuilder`] already
/// satisfy the terminal invariant; this re-checks it and reports cyclicity.
pub fn validate_game(g: &GameGraph, roots: Option<&[PosId]>) -> Result<ValidationReport> {
    for v in g.positions() {
        if g.is_terminal(v) != g.successors(v).is_empty() {
            return Err(Error::MalformedGame(format!(
                "terminal invariant fails at `{}`",
                g.name(v)
            )));
        }
    }
    let (acyclic, cycle_witness, order) = match g.backward_order() {
        Ok(order) => (true, None, Some(order)),
        Err(Error::CyclicGame(name)) => (false, g.position(&name), None),
        Err(e) => return Err(e),
    };
    let roots: Vec<PosId> = match roots {
        Some(r) => r.to_vec(),
        None => g.sources(),
    };
    let reach = g.reachable_from(&roots);
    let unreachable = g.positions().filter(|v| !reach.contains(v)).collect();
    Ok(ValidationReport {
        acyclic,
        cycle_witness,
        order,
        unreachable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_dead_ends_and_parallel_moves() {
        let mut b = GameGraph::builder();
        b.position("v", Owner::Player0).unwrap();
        assert!(matches!(b.build(), Err(Error::MalformedGame(_))));

        let mut b = GameGraph::builder();
        let v = b.position("v", Owner::Player0).unwrap();
        let t = b.position("t", Owner::Terminal).unwrap();
        b.add_move(v, t).unwrap();
        assert!(b.add_move(v, t).is_err());
    }

    #[test]
    fn cycle_detection() {
        let mut b = GameGraph::builder();
        let s = b.position("s", Owner::Terminal).unwrap();
        let v = b.position("v", Owner::Player0).unwrap();
        let w = b.position("w", Owner::Player1).unwrap();
        b.add_move(v, s).unwrap();
        b.add_move(v, w).unwrap();
        b.add_move(w, v).unwrap();
        let g = b.build().unwrap();
        let r = validate_game(&g, Some(&[v])).unwrap();
        assert!(!r.acyclic);
        assert!(r.cycle_witness.is_some());
        assert!(r.unreachable.is_empty());
    }
}
