use super::{build_system, EquationSystem};
use crate::error::{Error, Result};
use crate::game::{BasicValuation, GameGraph};
use crate::poly::Exp;
use crate::semiring::{ExtRat, NatInf, Semiring, SemiringKind, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixpoint {
    /// Least fixed point, iterating up from 0.
    Mu,
    /// Greatest fixed point, iterating down from the top element.
    Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_iterations: usize,
    /// Exponents at or above this become ∞ once saturation kicks in.
    pub saturation_threshold: u64,
}

impl SolverConfig {
    /// `4·n + 16` iterations and threshold `2·n + 2` for `n` variables.
    pub fn for_size(n: usize) -> Self {
        SolverConfig {
            max_iterations: 4 * n + 16,
            saturation_threshold: 2 * n as u64 + 2,
        }
    }

    pub fn for_system(sys: &EquationSystem) -> Self {
        Self::for_size(sys.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub values: Vec<Value>,
    /// Kleene steps taken, including saturated ones.
    pub iterations: usize,
    /// Whether the plain Kleene chain was abandoned for saturation.
    pub saturated: bool,
    /// Threshold in force when the answer was produced.
    pub threshold: u64,
    /// Every step of the plain chain was monotone in the natural order.
    pub monotone: bool,
    /// `G(values) = values` was rechecked exactly.
    pub verified: bool,
}

/// The `n`-th Kleene approximant `Gⁿ(start)`.
pub fn kleene_iterate(sys: &EquationSystem, start: Vec<Value>, n: usize) -> Result<Vec<Value>> {
    let mut x = start;
    for _ in 0..n {
        x = sys.apply(&x)?;
    }
    Ok(x)
}

pub fn kleene_lfp(sys: &EquationSystem, cfg: SolverConfig) -> Result<SolveReport> {
    let sr = sys.semiring();
    if !sr.flags().omega_continuous && sys.is_cyclic() {
        return Err(Error::NotOmegaContinuous(sr.name()));
    }
    if matches!(sr.kind(), SemiringKind::NatInf) {
        // Pin the divergent components up front; the rest converge without
        // passing through huge intermediate counts.
        let unbounded = sys.unbounded_components();
        if unbounded.iter().any(|&b| b) {
            let rep = iterate_to_fixpoint(sr, cfg, Fixpoint::Mu, sys.bottom(), |x| {
                let mut y = sys.apply(x)?;
                for (v, _) in unbounded.iter().enumerate().filter(|(_, &b)| b) {
                    y[v] = Value::NatInf(NatInf::Inf);
                }
                Ok(y)
            })?;
            if sys.apply(&rep.values)? != rep.values {
                return Err(Error::NoConvergence {
                    iterations: rep.iterations,
                });
            }
            return Ok(rep);
        }
    }
    iterate_to_fixpoint(sr, cfg, Fixpoint::Mu, sys.bottom(), |x| sys.apply(x))
}

pub fn kleene_gfp(sys: &EquationSystem, cfg: SolverConfig) -> Result<SolveReport> {
    let start = sys.top()?;
    iterate_to_fixpoint(sys.semiring(), cfg, Fixpoint::Nu, start, |x| sys.apply(x))
}

pub fn solve_game(
    g: &GameGraph,
    basic: &BasicValuation,
    mode: Fixpoint,
    cfg: Option<SolverConfig>,
) -> Result<SolveReport> {
    let sys = build_system(g, basic);
    let cfg = cfg.unwrap_or_else(|| SolverConfig::for_system(&sys));
    match mode {
        Fixpoint::Mu => kleene_lfp(&sys, cfg),
        Fixpoint::Nu => kleene_gfp(&sys, cfg),
    }
}

/// Kleene iteration of `apply` from `start`, falling back to saturation
/// after `cfg.max_iterations` steps.
pub(crate) fn iterate_to_fixpoint<F>(
    sr: &Semiring,
    cfg: SolverConfig,
    mode: Fixpoint,
    start: Vec<Value>,
    mut apply: F,
) -> Result<SolveReport>
where
    F: FnMut(&[Value]) -> Result<Vec<Value>>,
{
    // Over ℕ^∞ a finite least-solution component counts derivations of height
    // at most n, so it is settled after n + 1 steps; whatever still moves is ∞.
    let limit = if matches!(sr.kind(), SemiringKind::NatInf) && mode == Fixpoint::Mu {
        cfg.max_iterations.min(start.len() + 1)
    } else {
        cfg.max_iterations
    };
    let mut x = start;
    let mut monotone = true;
    for i in 0..limit {
        let next = apply(&x)?;
        if monotone {
            monotone = ascends(sr, mode, &x, &next)?;
            debug_assert!(monotone, "Kleene chain not monotone in {}", sr.name());
        }
        if next == x {
            return Ok(SolveReport {
                values: x,
                iterations: i + 1,
                saturated: false,
                threshold: cfg.saturation_threshold,
                monotone,
                verified: true,
            });
        }
        let blown = next.iter().any(oversized);
        let last = std::mem::replace(&mut x, next);
        if i + 1 == limit || blown {
            return saturate_and_verify(sr, cfg, mode, last, x, monotone, apply);
        }
    }
    // Only reachable with max_iterations == 0.
    Err(Error::NoConvergence { iterations: 0 })
}

/// Values this large only come out of chains that square themselves; the
/// iteration moves on to pinning instead of computing them.
const MAX_BITS: u64 = 1 << 14;
const MAX_TERMS: usize = 1 << 8;
const MAX_DEGREE: u64 = 1 << 10;

fn bits(n: &NatInf) -> u64 {
    match n {
        NatInf::Fin(n) => n.bits(),
        NatInf::Inf => 0,
    }
}

fn oversized(v: &Value) -> bool {
    match v {
        Value::Nat(n) => n.bits() > MAX_BITS,
        Value::NatInf(n) => bits(n) > MAX_BITS,
        Value::Viterbi(r) | Value::Tropical(ExtRat::Fin(r)) => r.numer().bits() + r.denom().bits() > MAX_BITS,
        Value::Poly(p) => {
            p.num_terms() > MAX_TERMS
                || p.terms()
                    .any(|(m, c)| bits(c) > MAX_BITS || matches!(m.total_degree(), Exp::Fin(d) if d > MAX_DEGREE))
        }
        _ => false,
    }
}

fn ascends(sr: &Semiring, mode: Fixpoint, prev: &[Value], next: &[Value]) -> Result<bool> {
    for (a, b) in prev.iter().zip(next) {
        let ok = match mode {
            Fixpoint::Mu => sr.leq(a, b)?,
            Fixpoint::Nu => sr.leq(b, a)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pins components that still move: exponents at or above the threshold
/// become ∞, numeric values jump to the limit of their chain.
fn pin(sr: &Semiring, mode: Fixpoint, threshold: u64, prev: &Value, cur: &Value) -> Value {
    if prev == cur {
        return saturate_poly(cur, threshold);
    }
    match (sr.kind(), cur) {
        (SemiringKind::NatInf, _) => match mode {
            Fixpoint::Mu => Value::NatInf(crate::semiring::NatInf::Inf),
            Fixpoint::Nu => sr.zero(),
        },
        (SemiringKind::Viterbi | SemiringKind::Tropical, _) if mode == Fixpoint::Nu => sr.zero(),
        (_, Value::Poly(p)) if p.kind().trunc_degree().is_some() => {
            let reference = prev.as_poly().expect("same semiring");
            Value::Poly(p.pin_changed_coefficients(reference))
        }
        _ => saturate_poly(cur, threshold),
    }
}

fn saturate_poly(v: &Value, threshold: u64) -> Value {
    match v {
        Value::Poly(p) if p.kind().allows_inf_exponent() => Value::Poly(p.saturate_exponents(threshold)),
        _ => v.clone(),
    }
}

fn saturate_and_verify<F>(
    sr: &Semiring,
    cfg: SolverConfig,
    mode: Fixpoint,
    prev: Vec<Value>,
    cur: Vec<Value>,
    monotone: bool,
    mut apply: F,
) -> Result<SolveReport>
where
    F: FnMut(&[Value]) -> Result<Vec<Value>>,
{
    let mut iterations = cfg.max_iterations;
    for threshold in [cfg.saturation_threshold, cfg.saturation_threshold.saturating_mul(2)] {
        let budget = if threshold == cfg.saturation_threshold {
            cfg.max_iterations
        } else {
            cfg.max_iterations.saturating_mul(2)
        };
        let mut x: Vec<Value> = prev
            .iter()
            .zip(&cur)
            .map(|(a, b)| pin(sr, mode, threshold, a, b))
            .collect();
        for _ in 0..budget {
            iterations += 1;
            let raw = apply(&x)?;
            let next: Vec<Value> = x
                .iter()
                .zip(&raw)
                .map(|(a, b)| pin(sr, mode, threshold, a, b))
                .collect();
            if next == x {
                break;
            }
            x = next;
        }
        if apply(&x)? == x {
            return Ok(SolveReport {
                values: x,
                iterations,
                saturated: true,
                threshold,
                monotone,
                verified: true,
            });
        }
    }
    Err(Error::NoConvergence { iterations })
}
