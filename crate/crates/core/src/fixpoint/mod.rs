//! Equation systems of cyclic games and their Kleene fixed points.

mod solve;

use std::collections::BTreeSet;
use std::fmt;

pub(crate) use solve::iterate_to_fixpoint;
pub use solve::{kleene_gfp, kleene_iterate, kleene_lfp, solve_game, Fixpoint, SolveReport, SolverConfig};

use crate::error::Result;
use crate::game::{BasicValuation, GameGraph, Owner, Player, PosId};
use crate::poly::Token;
use crate::semiring::{NatInf, Semiring, Value};

/// Right-hand side of one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Const(Value),
    /// `Σ cᵢ·X_{wᵢ}`
    Sum(Vec<(Value, PosId)>),
    /// `Π cᵢ·X_{wᵢ}`
    Product(Vec<(Value, PosId)>),
}

/// One equation `X_v = rhs` per position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    semiring: Semiring,
    player: Player,
    names: Vec<String>,
    rhs: Vec<Rhs>,
}

pub fn build_system(g: &GameGraph, basic: &BasicValuation) -> EquationSystem {
    let own = Owner::of(basic.player());
    let rhs = g
        .positions()
        .map(|v| {
            let terms = || g.successors(v).iter().map(|&w| (basic.move_value(v, w), w)).collect();
            match g.owner(v) {
                Owner::Terminal => Rhs::Const(basic.terminal_value(v)),
                o if o == own => Rhs::Sum(terms()),
                _ => Rhs::Product(terms()),
            }
        })
        .collect();
    EquationSystem {
        semiring: basic.semiring().clone(),
        player: basic.player(),
        names: g.positions().map(|v| g.name(v).to_string()).collect(),
        rhs,
    }
}

impl EquationSystem {
    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    pub fn name(&self, v: PosId) -> &str {
        &self.names[v]
    }

    pub fn rhs(&self, v: PosId) -> &Rhs {
        &self.rhs[v]
    }

    /// Applies the system once: `G(x)`.
    pub fn apply(&self, x: &[Value]) -> Result<Vec<Value>> {
        let sr = &self.semiring;
        self.rhs
            .iter()
            .map(|r| match r {
                Rhs::Const(c) => Ok(c.clone()),
                Rhs::Sum(terms) => {
                    let mut acc = sr.zero();
                    for (c, w) in terms {
                        acc = sr.add(&acc, &sr.mul(c, &x[*w])?)?;
                    }
                    Ok(acc)
                }
                Rhs::Product(terms) => {
                    let mut acc = sr.one();
                    for (c, w) in terms {
                        acc = sr.mul(&acc, &sr.mul(c, &x[*w])?)?;
                    }
                    Ok(acc)
                }
            })
            .collect()
    }

    /// Whether some variable depends on itself.
    pub fn is_cyclic(&self) -> bool {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for r in &self.rhs {
            for w in deps(r) {
                indeg[w] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|v| indeg[*v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for w in deps(&self.rhs[v]) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen < n
    }

    /// Components whose least solution over ℕ^∞ is ∞: nonzero components
    /// that lie on, or depend on, a cycle of nonzero dependencies or an
    /// infinite coefficient. Only meaningful for `natinf`.
    pub fn unbounded_components(&self) -> Vec<bool> {
        let n = self.len();
        let is_inf = |c: &Value| matches!(c, Value::NatInf(NatInf::Inf));
        let nonzero = |c: &Value| !self.semiring.is_zero(c);

        let mut support = vec![false; n];
        loop {
            let next: Vec<bool> = self
                .rhs
                .iter()
                .map(|r| match r {
                    Rhs::Const(c) => nonzero(c),
                    Rhs::Sum(t) => t.iter().any(|(c, w)| nonzero(c) && support[*w]),
                    Rhs::Product(t) => t.iter().all(|(c, w)| nonzero(c) && support[*w]),
                })
                .collect();
            if next == support {
                break;
            }
            support = next;
        }

        // Dependencies that carry a nonzero contribution, and direct sources of ∞.
        let mut edges: Vec<Vec<PosId>> = vec![Vec::new(); n];
        let mut seed = vec![false; n];
        for (v, r) in self.rhs.iter().enumerate() {
            if !support[v] {
                continue;
            }
            match r {
                Rhs::Const(c) => seed[v] = is_inf(c),
                Rhs::Sum(t) => {
                    for (c, w) in t.iter().filter(|(c, w)| nonzero(c) && support[*w]) {
                        edges[v].push(*w);
                        seed[v] |= is_inf(c);
                    }
                }
                Rhs::Product(t) => {
                    for (c, w) in t {
                        edges[v].push(*w);
                        seed[v] |= is_inf(c);
                    }
                }
            }
        }
        let reach = |from: PosId| -> Vec<bool> {
            let mut seen = vec![false; n];
            let mut stack = edges[from].clone();
            while let Some(w) = stack.pop() {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.extend(&edges[w]);
                }
            }
            seen
        };
        let reached: Vec<Vec<bool>> = (0..n).map(reach).collect();
        for v in 0..n {
            seed[v] |= reached[v][v];
        }
        (0..n)
            .map(|v| support[v] && (seed[v] || (0..n).any(|w| seed[w] && reached[v][w])))
            .collect()
    }

    pub fn tokens(&self) -> BTreeSet<Token> {
        let mut out = BTreeSet::new();
        let mut add = |v: &Value| {
            if let Some(p) = v.as_poly() {
                out.extend(p.tokens());
            }
        };
        for r in &self.rhs {
            match r {
                Rhs::Const(c) => add(c),
                Rhs::Sum(t) | Rhs::Product(t) => t.iter().for_each(|(c, _)| add(c)),
            }
        }
        out
    }

    pub fn bottom(&self) -> Vec<Value> {
        vec![self.semiring.zero(); self.len()]
    }

    /// The greatest element in every component.
    pub fn top(&self) -> Result<Vec<Value>> {
        Ok(vec![self.semiring.top(&self.tokens())?; self.len()])
    }

    /// The non-terminal equations with terminal constants substituted, in the
    /// form `X_v = s + X_w`.
    pub fn display_reduced(&self) -> String {
        let mut lines = Vec::new();
        for (v, r) in self.rhs.iter().enumerate() {
            if !matches!(r, Rhs::Const(_)) {
                lines.push(format!("X_{} = {}", self.names[v], self.render(r)));
            }
        }
        lines.join("\n")
    }

    fn render(&self, r: &Rhs) -> String {
        let sr = &self.semiring;
        let factor = |c: &Value, w: PosId| -> Vec<String> {
            let mut parts = Vec::new();
            if !sr.is_one(c) {
                parts.push(wrap(sr.format(c)));
            }
            match &self.rhs[w] {
                Rhs::Const(k) if sr.is_one(k) => {}
                Rhs::Const(k) => parts.push(wrap(sr.format(k))),
                _ => parts.push(format!("X_{}", self.names[w])),
            }
            parts
        };
        match r {
            Rhs::Const(c) => sr.format(c),
            Rhs::Sum(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .filter(|(_, w)| !matches!(&self.rhs[*w], Rhs::Const(k) if sr.is_zero(k)))
                    .map(|(c, w)| {
                        let f = factor(c, *w);
                        if f.is_empty() {
                            sr.format(&sr.one())
                        } else {
                            f.join("*")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    sr.format(&sr.zero())
                } else {
                    parts.join(" + ")
                }
            }
            Rhs::Product(terms) => {
                if terms
                    .iter()
                    .any(|(_, w)| matches!(&self.rhs[*w], Rhs::Const(k) if sr.is_zero(k)))
                {
                    return sr.format(&sr.zero());
                }
                // Constant factors first.
                let (mut consts, mut vars) = (Vec::new(), Vec::new());
                for (c, w) in terms {
                    for p in factor(c, *w) {
                        if p.starts_with("X_") {
                            vars.push(p)
                        } else {
                            consts.push(p)
                        }
                    }
                }
                consts.append(&mut vars);
                if consts.is_empty() {
                    sr.format(&sr.one())
                } else {
                    consts.join("*")
                }
            }
        }
    }
}

fn wrap(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

fn deps(r: &Rhs) -> Vec<PosId> {
    match r {
        Rhs::Const(_) => Vec::new(),
        Rhs::Sum(t) | Rhs::Product(t) => t.iter().map(|(_, w)| *w).collect(),
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, r) in self.rhs.iter().enumerate() {
            let body = match r {
                Rhs::Const(c) => self.semiring.format(c),
                Rhs::Sum(t) | Rhs::Product(t) => {
                    let sep = if matches!(r, Rhs::Sum(_)) { " + " } else { " * " };
                    let parts: Vec<String> = t
                        .iter()
                        .map(|(c, w)| {
                            if self.semiring.is_one(c) {
                                format!("X_{}", self.names[*w])
                            } else {
                                format!("{}*X_{}", wrap(self.semiring.format(c)), self.names[*w])
                            }
                        })
                        .collect();
                    if parts.is_empty() {
                        self.semiring.format(&self.semiring.zero())
                    } else {
                        parts.join(sep)
                    }
                }
            };
            writeln!(f, "X_{} = {}", self.names[v], body)?;
        }
        Ok(())
    }
}
