use super::{acyclic_valuation, BasicValuation, GameGraph, Player, PosId};
use crate::error::{Error, Result};
use crate::semiring::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    /// `f0(u) = 0` or `f1(u) = 0`.
    Separating,
    /// `f0(u)·f1(u) = 0`.
    Weak,
    /// Separating and `f0(u) + f1(u) ≠ 0`.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub mode: SeparationMode,
    /// Verdict per position in scope.
    pub verdicts: Vec<(PosId, bool)>,
    pub f0: Vec<Value>,
    pub f1: Vec<Value>,
}

impl SeparationReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = PosId> + '_ {
        self.verdicts.iter().filter(|(_, ok)| !ok).map(|(v, _)| *v)
    }
}

/// Evaluates both players' acyclic valuations and checks the separation
/// condition on `scope` (all positions when `None`).
pub fn check_separating(
    g: &GameGraph,
    f0: &BasicValuation,
    f1: &BasicValuation,
    mode: SeparationMode,
    scope: Option<&[PosId]>,
) -> Result<SeparationReport> {
    if f0.player() != Player::Zero || f1.player() != Player::One {
        return Err(Error::MalformedGame(
            "separation needs valuations for players 0 and 1".into(),
        ));
    }
    if f0.semiring() != f1.semiring() {
        return Err(Error::VariantMismatch {
            expected: f0.semiring().name(),
            found: f1.semiring().name(),
        });
    }
    let sr = f0.semiring();
    let v0 = acyclic_valuation(g, f0)?;
    let v1 = acyclic_valuation(g, f1)?;
    let all: Vec<PosId> = g.positions().collect();
    let scope = scope.unwrap_or(&all);
    let mut verdicts = Vec::with_capacity(scope.len());
    for &u in scope {
        let (a, b) = (&v0[u], &v1[u]);
        let separating = sr.is_zero(a) || sr.is_zero(b);
        let ok = match mode {
            SeparationMode::Separating => separating,
            SeparationMode::Weak => sr.is_zero(&sr.mul(a, b)?),
            SeparationMode::Strong => separating && !sr.is_zero(&sr.add(a, b)?),
        };
        verdicts.push((u, ok));
    }
    Ok(SeparationReport {
        mode,
        verdicts,
        f0: v0,
        f1: v1,
    })
}
