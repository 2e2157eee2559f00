use std::collections::BTreeSet;

use super::{BasicValuation, GameGraph, PosId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BisimReport {
    /// Pairs whose owners or terminal status disagree.
    pub owner_mismatch: Vec<(PosId, PosId)>,
    /// Pairs without a Z-respecting bijection between successor sets.
    pub no_bijection: Vec<(PosId, PosId)>,
    /// Value-respecting violations, as human-readable descriptions.
    pub value_mismatch: Vec<String>,
}

impl BisimReport {
    pub fn is_bisimulation(&self) -> bool {
        self.owner_mismatch.is_empty() && self.no_bijection.is_empty()
    }

    pub fn respects_values(&self) -> bool {
        self.value_mismatch.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.is_bisimulation() && self.respects_values()
    }
}

/// Checks that `z` is a counting bisimulation between `g1` and `g2`. With
/// `basics` (pairs of valuations for the same player), also checks that `z`
/// respects terminal and move values.
pub fn verify_counting_bisim(
    g1: &GameGraph,
    g2: &GameGraph,
    z: &[(PosId, PosId)],
    basics: Option<&[(&BasicValuation, &BasicValuation)]>,
) -> BisimReport {
    let rel: BTreeSet<(PosId, PosId)> = z.iter().copied().collect();
    let mut report = BisimReport::default();
    for &(v, w) in &rel {
        if g1.owner(v) != g2.owner(w) {
            report.owner_mismatch.push((v, w));
            continue;
        }
        if !has_perfect_matching(g1.successors(v), g2.successors(w), &rel) {
            report.no_bijection.push((v, w));
        }
    }
    for (b1, b2) in basics.unwrap_or(&[]) {
        let sr = b1.semiring();
        for &(v, w) in &rel {
            if g1.is_terminal(v) && g2.is_terminal(w) {
                let (x, y) = (b1.terminal_value(v), b2.terminal_value(w));
                if x != y {
                    report.value_mismatch.push(format!(
                        "f{}({}) = {} but f{}({}) = {}",
                        b1.player(),
                        g1.name(v),
                        sr.format(&x),
                        b2.player(),
                        g2.name(w),
                        sr.format(&y)
                    ));
                }
            }
            for &a in g1.successors(v) {
                for &b in g2.successors(w) {
                    if !rel.contains(&(a, b)) {
                        continue;
                    }
                    let (x, y) = (b1.move_value(v, a), b2.move_value(w, b));
                    if x != y {
                        report.value_mismatch.push(format!(
                            "h{}({}{}) = {} but h{}({}{}) = {}",
                            b1.player(),
                            g1.name(v),
                            g1.name(a),
                            sr.format(&x),
                            b2.player(),
                            g2.name(w),
                            g2.name(b),
                            sr.format(&y)
                        ));
                    }
                }
            }
        }
    }
    report
}

/// Kuhn's augmenting-path matching on the bipartite graph of related successors.
fn has_perfect_matching(left: &[PosId], right: &[PosId], rel: &BTreeSet<(PosId, PosId)>) -> bool {
    if left.len() != right.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|a| (0..right.len()).filter(|&j| rel.contains(&(*a, right[j]))).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..left.len()).all(|i| {
        let mut seen = vec![false; right.len()];
        augment(i, &adj, &mut seen, &mut owner)
    })
}
