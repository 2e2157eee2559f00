use std::collections::BTreeSet;

use super::{GameGraph, Owner, Player, PosId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// Reach one of the targets.
    Reachability,
    /// Never visit one of the targets.
    Safety,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub targets: BTreeSet<PosId>,
}

impl Objective {
    pub fn reach(targets: impl IntoIterator<Item = PosId>) -> Self {
        Objective {
            kind: ObjectiveKind::Reachability,
            targets: targets.into_iter().collect(),
        }
    }

    pub fn avoid(targets: impl IntoIterator<Item = PosId>) -> Self {
        Objective {
            kind: ObjectiveKind::Safety,
            targets: targets.into_iter().collect(),
        }
    }
}

/// Positions from which `player` can force a visit to `targets`.
pub fn attractor(g: &GameGraph, player: Player, targets: &BTreeSet<PosId>) -> BTreeSet<PosId> {
    let mut attr = targets.clone();
    // Remaining successors outside the attractor, for opponent positions.
    let mut pending: Vec<usize> = g.positions().map(|v| g.successors(v).len()).collect();
    let mut preds: Vec<Vec<PosId>> = vec![Vec::new(); g.len()];
    for v in g.positions() {
        for &w in g.successors(v) {
            preds[w].push(v);
        }
    }
    let mut queue: Vec<PosId> = attr.iter().copied().collect();
    while let Some(w) = queue.pop() {
        for &v in &preds[w] {
            if attr.contains(&v) {
                continue;
            }
            let joins = match g.owner(v) {
                Owner::Terminal => false,
                o if o == Owner::of(player) => true,
                _ => {
                    pending[v] -= 1;
                    pending[v] == 0
                }
            };
            if joins {
                attr.insert(v);
                queue.push(v);
            }
        }
    }
    attr
}

/// The winning region of `player` for `objective`.
pub fn winning_region(g: &GameGraph, objective: &Objective, player: Player) -> BTreeSet<PosId> {
    match objective.kind {
        ObjectiveKind::Reachability => attractor(g, player, &objective.targets),
        ObjectiveKind::Safety => {
            let lost = attractor(g, player.opponent(), &objective.targets);
            g.positions().filter(|v| !lost.contains(v)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::io::parse_game;
    use crate::semiring::Semiring;

    #[test]
    fn reachability_example() {
        let src = "node s T\nnode t T\nnode v 0\nnode w 1\nmove v s\nmove v w\nmove w v\nmove w t\n";
        let (g, _) = parse_game(src, &Semiring::boolean()).unwrap();
        let id = |n| g.position(n).unwrap();
        let w = winning_region(&g, &Objective::reach([id("s")]), Player::Zero);
        assert_eq!(w, [id("s"), id("v")].into_iter().collect());
        let none = winning_region(&g, &Objective::reach([]), Player::Zero);
        assert!(none.is_empty());
    }
}
