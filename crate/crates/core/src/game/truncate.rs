use super::{BasicValuation, GameGraph, Owner, PosId};
use crate::error::{Error, Result};

/// Value placed at the last node of a play cut short by the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Zero,
    One,
}

/// The unraveling of a game from every position, cut at paths of fewer
/// than `n` moves.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub game: GameGraph,
    pub valuation: BasicValuation,
    /// `roots[v]` is the node of the one-position path `v`.
    pub roots: Vec<PosId>,
    /// Projection of each node to the last position of its path.
    pub origin: Vec<PosId>,
}

pub fn truncate(g: &GameGraph, basic: &BasicValuation, n: usize, boundary: Boundary) -> Result<Truncation> {
    if n == 0 {
        return Err(Error::MalformedGame("truncation depth must be at least 1".into()));
    }
    let sr = basic.semiring();
    // Paths as (name, last position, moves used, parent node).
    struct Node {
        name: String,
        last: PosId,
        depth: usize,
        parent: Option<usize>,
    }
    let mut nodes: Vec<Node> = Vec::new();
    let mut roots = Vec::with_capacity(g.len());
    for v in g.positions() {
        roots.push(nodes.len());
        let mut stack = vec![nodes.len()];
        nodes.push(Node {
            name: g.name(v).to_string(),
            last: v,
            depth: 0,
            parent: None,
        });
        while let Some(i) = stack.pop() {
            if nodes[i].depth + 1 >= n {
                continue;
            }
            let (last, depth) = (nodes[i].last, nodes[i].depth);
            for &w in g.successors(last) {
                let name = format!("{}.{}", nodes[i].name, g.name(w));
                stack.push(nodes.len());
                nodes.push(Node {
                    name,
                    last: w,
                    depth: depth + 1,
                    parent: Some(i),
                });
            }
        }
    }
    let cut = |node: &Node| !g.is_terminal(node.last) && node.depth + 1 >= n;
    let mut b = GameGraph::builder();
    for node in &nodes {
        let owner = if cut(node) { Owner::Terminal } else { g.owner(node.last) };
        b.position(&node.name, owner)?;
    }
    for (i, node) in nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            b.add_move(p, i)?;
        }
    }
    let game = b.build()?;
    let mut valuation = BasicValuation::new(basic.player(), sr.clone());
    for (i, node) in nodes.iter().enumerate() {
        if g.is_terminal(node.last) {
            valuation.set_terminal(&game, i, basic.terminal_value(node.last))?;
        } else if cut(node) {
            let v = match boundary {
                Boundary::Zero => sr.zero(),
                Boundary::One => sr.one(),
            };
            valuation.set_terminal(&game, i, v)?;
        }
        if let Some(p) = node.parent {
            let h = basic.move_value(nodes[p].last, node.last);
            if !sr.is_one(&h) {
                valuation.set_move(&game, p, i, h)?;
            }
        }
    }
    let origin = nodes.iter().map(|n| n.last).collect();
    Ok(Truncation {
        game,
        valuation,
        roots,
        origin,
    })
}
