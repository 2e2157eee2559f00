//! Strategies as finite graphs whose unravelings are the strategy trees.
//!
//! A strategy is stored as a rooted graph of nodes labelled by positions.
//! Its unraveling from the root is the subtree of the game unraveling; the
//! occurrence count of a position is the number of root paths ending at a
//! node with that label. Shared subtrees keep acyclic strategies compact,
//! and a reachable cycle represents a strategy admitting an infinite play.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{BasicValuation, GameGraph, Owner, Player, PosId};
use crate::error::{Error, Result};
use crate::semiring::num::NatInf;
use crate::semiring::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
struct SNode {
    pos: PosId,
    children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    player: Player,
    nodes: Vec<SNode>,
    position_counts: BTreeMap<PosId, NatInf>,
    move_counts: BTreeMap<(PosId, PosId), NatInf>,
    leaves: BTreeSet<PosId>,
    infinite: bool,
}

impl Strategy {
    fn from_nodes(g: &GameGraph, player: Player, nodes: Vec<SNode>) -> Result<Strategy> {
        if nodes.is_empty() {
            return Err(Error::MalformedGame("empty strategy".into()));
        }
        for n in &nodes {
            let succ = g.successors(n.pos);
            let child_pos: Vec<PosId> = n.children.iter().map(|c| nodes[*c].pos).collect();
            let ok = match g.owner(n.pos) {
                Owner::Terminal => child_pos.is_empty(),
                owner if owner == Owner::of(player) => child_pos.len() == 1 && succ.contains(&child_pos[0]),
                _ => {
                    let mut a = child_pos.clone();
                    let mut b = succ.to_vec();
                    a.sort_unstable();
                    b.sort_unstable();
                    a == b
                }
            };
            if !ok {
                return Err(Error::MalformedGame(format!(
                    "strategy node at `{}` does not follow the game's moves",
                    g.name(n.pos)
                )));
            }
        }
        let mut s = Strategy {
            player,
            nodes,
            position_counts: BTreeMap::new(),
            move_counts: BTreeMap::new(),
            leaves: BTreeSet::new(),
            infinite: false,
        };
        s.count();
        Ok(s)
    }

    /// Path counts from the root. Nodes on or below a reachable cycle have
    /// infinitely many root paths.
    fn count(&mut self) {
        let n = self.nodes.len();
        let mut reachable = vec![false; n];
        reachable[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &c in &self.nodes[i].children {
                if !reachable[c] {
                    reachable[c] = true;
                    stack.push(c);
                }
            }
        }
        let mut indeg = vec![0usize; n];
        for i in (0..n).filter(|i| reachable[*i]) {
            for &c in &self.nodes[i].children {
                indeg[c] += 1;
            }
        }
        let mut paths: Vec<BigUint> = vec![BigUint::zero(); n];
        paths[0] = BigUint::from(1u32);
        let mut done = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|i| reachable[*i] && indeg[*i] == 0).collect();
        while let Some(i) = queue.pop_front() {
            done[i] = true;
            for &c in &self.nodes[i].children {
                let add = paths[i].clone();
                paths[c] += add;
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        self.infinite = (0..n).any(|i| reachable[i] && !done[i]);
        let node_count = |i: usize| -> NatInf {
            if done[i] {
                NatInf::Fin(paths[i].clone())
            } else {
                NatInf::Inf
            }
        };
        for i in (0..n).filter(|i| reachable[*i]) {
            let c = node_count(i);
            if self.nodes[i].children.is_empty() {
                self.leaves.insert(self.nodes[i].pos);
            }
            let e = self
                .position_counts
                .entry(self.nodes[i].pos)
                .or_insert_with(NatInf::zero);
            *e = e.add(&c);
            for &ch in &self.nodes[i].children {
                let e = self
                    .move_counts
                    .entry((self.nodes[i].pos, self.nodes[ch].pos))
                    .or_insert_with(NatInf::zero);
                *e = e.add(&c);
            }
        }
    }

    /// The memoryless strategy following `choice` at the player's positions.
    pub fn positional(g: &GameGraph, player: Player, root: PosId, choice: &BTreeMap<PosId, PosId>) -> Result<Strategy> {
        let mut id: HashMap<PosId, usize> = HashMap::new();
        let mut nodes: Vec<SNode> = Vec::new();
        let mut order = vec![root];
        id.insert(root, 0);
        nodes.push(SNode {
            pos: root,
            children: Vec::new(),
        });
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            k += 1;
            let next: Vec<PosId> = match g.owner(v) {
                Owner::Terminal => Vec::new(),
                o if o == Owner::of(player) => vec![*choice
                    .get(&v)
                    .ok_or_else(|| Error::MalformedGame(format!("no choice at `{}`", g.name(v))))?],
                _ => g.successors(v).to_vec(),
            };
            let mut children = Vec::with_capacity(next.len());
            for w in next {
                let c = *id.entry(w).or_insert_with(|| {
                    nodes.push(SNode {
                        pos: w,
                        children: Vec::new(),
                    });
                    order.push(w);
                    nodes.len() - 1
                });
                children.push(c);
            }
            let me = id[&v];
            nodes[me].children = children;
        }
        Strategy::from_nodes(g, player, nodes)
    }

    fn from_tree(g: &GameGraph, player: Player, root: &Rc<TreeNode>) -> Result<Strategy> {
        let mut id: HashMap<*const TreeNode, usize> = HashMap::new();
        let mut nodes: Vec<SNode> = Vec::new();
        fn walk(t: &Rc<TreeNode>, id: &mut HashMap<*const TreeNode, usize>, nodes: &mut Vec<SNode>) -> usize {
            if let Some(&i) = id.get(&Rc::as_ptr(t)) {
                return i;
            }
            let i = nodes.len();
            nodes.push(SNode {
                pos: t.pos,
                children: Vec::new(),
            });
            id.insert(Rc::as_ptr(t), i);
            let children = t.children.iter().map(|c| walk(c, id, nodes)).collect();
            nodes[i].children = children;
            i
        }
        walk(root, &mut id, &mut nodes);
        Strategy::from_nodes(g, player, nodes)
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn root(&self) -> PosId {
        self.nodes[0].pos
    }

    /// `#_S(v)`
    pub fn position_count(&self, v: PosId) -> NatInf {
        self.position_counts.get(&v).cloned().unwrap_or_else(NatInf::zero)
    }

    /// `#_S(e)`
    pub fn move_count(&self, from: PosId, to: PosId) -> NatInf {
        self.move_counts.get(&(from, to)).cloned().unwrap_or_else(NatInf::zero)
    }

    pub fn position_counts(&self) -> impl Iterator<Item = (PosId, &NatInf)> {
        self.position_counts.iter().map(|(k, v)| (*k, v))
    }

    pub fn move_counts(&self) -> impl Iterator<Item = ((PosId, PosId), &NatInf)> {
        self.move_counts.iter().map(|(k, v)| (*k, v))
    }

    /// Occurrence counts of terminal positions: the outcome multiset.
    pub fn outcomes(&self, g: &GameGraph) -> BTreeMap<PosId, NatInf> {
        self.position_counts
            .iter()
            .filter(|(v, _)| g.is_terminal(**v))
            .map(|(v, c)| (*v, c.clone()))
            .collect()
    }

    pub fn admits_infinite(&self) -> bool {
        self.infinite
    }

    /// All maximal plays, as position sequences. Only for well-founded strategies.
    pub fn plays(&self) -> Result<Vec<Vec<PosId>>> {
        if self.infinite {
            return Err(Error::NotWellFounded);
        }
        let mut out = Vec::new();
        let mut stack = vec![(0usize, vec![self.nodes[0].pos])];
        while let Some((i, path)) = stack.pop() {
            let n = &self.nodes[i];
            if n.children.is_empty() {
                out.push(path);
                continue;
            }
            for &c in n.children.iter().rev() {
                let mut p = path.clone();
                p.push(self.nodes[c].pos);
                stack.push((c, p));
            }
        }
        Ok(out)
    }

    /// The player's choices, as `from->to` pairs in node order.
    pub fn describe(&self, g: &GameGraph) -> String {
        let mut parts = Vec::new();
        for n in &self.nodes {
            if g.owner(n.pos) == Owner::of(self.player) {
                let to = self.nodes[n.children[0]].pos;
                parts.push(format!("{}->{}", g.name(n.pos), g.name(to)));
            }
        }
        if parts.is_empty() {
            "(no choices)".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Incremental construction of a strategy graph; node 0 is the root.
#[derive(Clone, Debug)]
pub struct StrategyBuilder {
    player: Player,
    nodes: Vec<SNode>,
}

impl StrategyBuilder {
    pub fn new(player: Player, root: PosId) -> Self {
        StrategyBuilder {
            player,
            nodes: vec![SNode {
                pos: root,
                children: Vec::new(),
            }],
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node(&mut self, pos: PosId) -> usize {
        self.nodes.push(SNode {
            pos,
            children: Vec::new(),
        });
        self.nodes.len() - 1
    }

    pub fn set_children(&mut self, node: usize, children: &[usize]) {
        self.nodes[node].children = children.to_vec();
    }

    pub fn build(self, g: &GameGraph) -> Result<Strategy> {
        Strategy::from_nodes(g, self.player, self.nodes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueMode {
    /// Well-founded strategies only.
    Acyclic,
    /// Infinite plays make the value 0.
    Mu,
    /// Infinite plays are worth 1; occurrence counts may be infinite.
    Nu,
}

/// `F(S) = Π h(e)^{#e} · Π f(t)^{#t}`.
pub fn strategy_value(s: &Strategy, basic: &BasicValuation, mode: ValueMode) -> Result<Value> {
    let sr = basic.semiring();
    if s.infinite {
        match mode {
            ValueMode::Acyclic => return Err(Error::NotWellFounded),
            ValueMode::Mu => return Ok(sr.zero()),
            ValueMode::Nu => {}
        }
    }
    let mut acc = sr.one();
    for ((from, to), n) in &s.move_counts {
        let h = basic.move_value(*from, *to);
        acc = sr.mul(&acc, &sr.pow_natinf(&h, n)?)?;
    }
    for t in &s.leaves {
        let f = basic.terminal_value(*t);
        acc = sr.mul(&acc, &sr.pow_natinf(&f, &s.position_counts[t])?)?;
    }
    Ok(acc)
}

/// `s1` absorbs `s2`: at most as many plays per outcome, and an infinite
/// play in `s1` only if `s2` has one too.
pub fn absorption_dominates(g: &GameGraph, s1: &Strategy, s2: &Strategy) -> bool {
    let o2 = s2.outcomes(g);
    let counts_ok = g
        .terminals()
        .all(|t| s1.position_count(t) <= o2.get(&t).cloned().unwrap_or_else(NatInf::zero));
    counts_ok && (!s1.infinite || s2.infinite)
}

/// Flags the strategies not strictly absorbed by another one in the list.
pub fn dominant_flags(g: &GameGraph, strategies: &[Strategy]) -> Vec<bool> {
    strategies
        .iter()
        .map(|s| {
            !strategies
                .iter()
                .any(|o| absorption_dominates(g, o, s) && !absorption_dominates(g, s, o))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest strategy tree (in unraveling nodes) generated for cyclic games.
    pub max_nodes: usize,
    /// Largest number of strategies materialized.
    pub max_count: usize,
    /// Return a partial list instead of failing when a budget is hit.
    pub allow_partial: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_nodes: 32,
            max_count: 100_000,
            allow_partial: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub strategies: Vec<Strategy>,
    /// False when the list is a budget-limited prefix.
    pub complete: bool,
}

#[derive(Debug)]
struct TreeNode {
    pos: PosId,
    children: Vec<Rc<TreeNode>>,
}

/// All strategies of `player` from `v`. On games whose reachable part is
/// cyclic only the well-founded strategies up to `max_nodes` tree nodes are
/// produced, and the result is marked incomplete.
pub fn enumerate_strategies(g: &GameGraph, player: Player, v: PosId, opts: EnumerateOptions) -> Result<Enumeration> {
    let reach: Vec<PosId> = g.reachable_from(&[v]).into_iter().collect();
    let acyclic = reachable_acyclic(g, &reach);
    let (trees, complete) = if acyclic {
        let mut count_memo = HashMap::new();
        let total = count_strategies(g, player, v, &mut count_memo);
        if total > opts.max_count as u128 && !opts.allow_partial {
            return Err(Error::BudgetExceeded(format!(
                "{total} strategies exceed the limit of {}",
                opts.max_count
            )));
        }
        let mut memo = HashMap::new();
        let trees = gen_acyclic(g, player, v, opts.max_count, &mut memo);
        let complete = total <= opts.max_count as u128;
        (trees.iter().cloned().collect::<Vec<_>>(), complete)
    } else {
        if !opts.allow_partial {
            return Err(Error::BudgetExceeded(format!(
                "`{}` reaches a cycle; strategies are infinite in number",
                g.name(v)
            )));
        }
        let mut memo = HashMap::new();
        let mut capped = false;
        let list = gen_bounded(g, player, v, opts.max_nodes, opts.max_count, &mut memo, &mut capped);
        (list.iter().map(|(t, _)| t.clone()).collect(), false)
    };
    let strategies = trees
        .iter()
        .map(|t| Strategy::from_tree(g, player, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumeration { strategies, complete })
}

fn reachable_acyclic(g: &GameGraph, reach: &[PosId]) -> bool {
    let inside: std::collections::HashSet<PosId> = reach.iter().copied().collect();
    let mut indeg: HashMap<PosId, usize> = reach.iter().map(|v| (*v, 0)).collect();
    for &v in reach {
        for w in g.successors(v) {
            if inside.contains(w) {
                *indeg.get_mut(w).expect("inside") += 1;
            }
        }
    }
    let mut queue: Vec<PosId> = reach.iter().copied().filter(|v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for w in g.successors(v) {
            let d = indeg.get_mut(w).expect("inside");
            *d -= 1;
            if *d == 0 {
                queue.push(*w);
            }
        }
    }
    seen == reach.len()
}

fn count_strategies(g: &GameGraph, player: Player, v: PosId, memo: &mut HashMap<PosId, u128>) -> u128 {
    if let Some(&c) = memo.get(&v) {
        return c;
    }
    let c = match g.owner(v) {
        Owner::Terminal => 1,
        o if o == Owner::of(player) => g.successors(v).iter().fold(0u128, |acc, w| {
            acc.saturating_add(count_strategies(g, player, *w, memo))
        }),
        _ => g.successors(v).iter().fold(1u128, |acc, w| {
            acc.saturating_mul(count_strategies(g, player, *w, memo))
        }),
    };
    memo.insert(v, c);
    c
}

fn gen_acyclic(
    g: &GameGraph,
    player: Player,
    v: PosId,
    cap: usize,
    memo: &mut HashMap<PosId, Rc<Vec<Rc<TreeNode>>>>,
) -> Rc<Vec<Rc<TreeNode>>> {
    if let Some(r) = memo.get(&v) {
        return r.clone();
    }
    let mut out: Vec<Rc<TreeNode>> = Vec::new();
    match g.owner(v) {
        Owner::Terminal => out.push(Rc::new(TreeNode {
            pos: v,
            children: Vec::new(),
        })),
        o if o == Owner::of(player) => {
            'outer: for &w in g.successors(v) {
                for t in gen_acyclic(g, player, w, cap, memo).iter() {
                    if out.len() >= cap {
                        break 'outer;
                    }
                    out.push(Rc::new(TreeNode {
                        pos: v,
                        children: vec![t.clone()],
                    }));
                }
            }
        }
        _ => {
            let mut partial: Vec<Vec<Rc<TreeNode>>> = vec![Vec::new()];
            for &w in g.successors(v) {
                let sub = gen_acyclic(g, player, w, cap, memo);
                let mut next = Vec::new();
                'fill: for p in &partial {
                    for t in sub.iter() {
                        if next.len() >= cap {
                            break 'fill;
                        }
                        let mut q = p.clone();
                        q.push(t.clone());
                        next.push(q);
                    }
                }
                partial = next;
            }
            out = partial
                .into_iter()
                .map(|children| Rc::new(TreeNode { pos: v, children }))
                .collect();
        }
    }
    let r = Rc::new(out);
    memo.insert(v, r.clone());
    r
}

type Sized = Rc<Vec<(Rc<TreeNode>, usize)>>;

/// Well-founded strategy trees from `v` with at most `budget` nodes.
fn gen_bounded(
    g: &GameGraph,
    player: Player,
    v: PosId,
    budget: usize,
    cap: usize,
    memo: &mut HashMap<(PosId, usize), Sized>,
    capped: &mut bool,
) -> Sized {
    if let Some(r) = memo.get(&(v, budget)) {
        return r.clone();
    }
    let mut out: Vec<(Rc<TreeNode>, usize)> = Vec::new();
    if budget > 0 {
        match g.owner(v) {
            Owner::Terminal => out.push((
                Rc::new(TreeNode {
                    pos: v,
                    children: Vec::new(),
                }),
                1,
            )),
            o if o == Owner::of(player) => {
                for &w in g.successors(v) {
                    for (t, sz) in gen_bounded(g, player, w, budget - 1, cap, memo, capped).iter() {
                        if out.len() >= cap {
                            *capped = true;
                            break;
                        }
                        out.push((
                            Rc::new(TreeNode {
                                pos: v,
                                children: vec![t.clone()],
                            }),
                            sz + 1,
                        ));
                    }
                }
            }
            _ => {
                let mut partial: Vec<(Vec<Rc<TreeNode>>, usize)> = vec![(Vec::new(), 0)];
                for &w in g.successors(v) {
                    let mut next = Vec::new();
                    for (kids, used) in &partial {
                        let room = budget - 1 - used;
                        for (t, sz) in gen_bounded(g, player, w, room, cap, memo, capped).iter() {
                            if next.len() >= cap {
                                *capped = true;
                                break;
                            }
                            let mut k = kids.clone();
                            k.push(t.clone());
                            next.push((k, used + sz));
                        }
                    }
                    partial = next;
                }
                out = partial
                    .into_iter()
                    .map(|(children, used)| (Rc::new(TreeNode { pos: v, children }), used + 1))
                    .collect();
            }
        }
    }
    let r = Rc::new(out);
    memo.insert((v, budget), r.clone());
    r
}
