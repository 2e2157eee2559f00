//! Exhaustive law checks over finite sample sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Semiring, Value};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// Commutative monoids, distributivity, annihilation by 0, and 0 ≠ 1.
    Axioms,
    PlusPositive,
    RootIntegral,
    Positive,
    IdempotentAdd,
    IdempotentMul,
    Absorptive,
    /// `a* = 1 + a·a*`.
    OmegaContinuous,
    /// Every sample lies below the declared top element.
    FullyOmegaContinuous,
    /// Infinite powers of nonzero samples stay nonzero.
    ChainPositive,
    /// The natural order is a partial order.
    NaturalOrder,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::Axioms,
        Law::PlusPositive,
        Law::RootIntegral,
        Law::Positive,
        Law::IdempotentAdd,
        Law::IdempotentMul,
        Law::Absorptive,
        Law::OmegaContinuous,
        Law::FullyOmegaContinuous,
        Law::ChainPositive,
        Law::NaturalOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Axioms => "axioms",
            Law::PlusPositive => "plus_positive",
            Law::RootIntegral => "root_integral",
            Law::Positive => "positive",
            Law::IdempotentAdd => "idempotent_add",
            Law::IdempotentMul => "idempotent_mul",
            Law::Absorptive => "absorptive",
            Law::OmegaContinuous => "omega_continuous",
            Law::FullyOmegaContinuous => "fully_omega_continuous",
            Law::ChainPositive => "chain_positive",
            Law::NaturalOrder => "natural_order",
        }
    }

    /// Whether the semiring declares this law. Axioms, root-integrality and
    /// the order laws are required of every instance.
    pub fn is_declared(self, sr: &Semiring) -> bool {
        let f = sr.flags();
        match self {
            Law::Axioms | Law::NaturalOrder => true,
            Law::PlusPositive => f.plus_positive,
            Law::RootIntegral => f.root_integral,
            Law::Positive => f.positive,
            Law::IdempotentAdd => f.idempotent_add,
            Law::IdempotentMul => f.idempotent_mul,
            Law::Absorptive => f.absorptive,
            Law::OmegaContinuous => f.omega_continuous,
            Law::FullyOmegaContinuous => f.fully_omega_continuous,
            Law::ChainPositive => f.chain_positive,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    /// Number of sample tuples examined.
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Checker<'a> {
    sr: &'a Semiring,
    checked: usize,
    failures: Vec<String>,
}

impl Checker<'_> {
    fn fmt(&self, v: &Value) -> String {
        self.sr.format(v)
    }

    fn expect(&mut self, cond: Result<bool>, witness: impl FnOnce() -> String) {
        self.checked += 1;
        match cond {
            Ok(true) => {}
            Ok(false) => self.failures.push(witness()),
            Err(e) => self.failures.push(format!("{} (error: {e})", witness())),
        }
    }
}

/// Checks `law` on every pair/triple drawn from `samples`.
pub fn check_law(sr: &Semiring, samples: &[Value], law: Law) -> LawReport {
    let mut c = Checker {
        sr,
        checked: 0,
        failures: Vec::new(),
    };
    let zero = sr.zero();
    let one = sr.one();
    match law {
        Law::Axioms => {
            c.expect(Ok(zero != one), || "0 = 1".to_string());
            for a in samples {
                c.expect(sr.add(a, &zero).map(|x| x == *a), || format!("{} + 0", c_fmt(sr, a)));
                c.expect(sr.mul(a, &one).map(|x| x == *a), || format!("{} * 1", c_fmt(sr, a)));
                c.expect(sr.mul(a, &zero).map(|x| x == zero), || format!("{} * 0", c_fmt(sr, a)));
                for b in samples {
                    c.expect((|| Ok(sr.add(a, b)? == sr.add(b, a)?))(), || {
                        format!("{} + {} not commutative", c_fmt(sr, a), c_fmt(sr, b))
                    });
                    c.expect((|| Ok(sr.mul(a, b)? == sr.mul(b, a)?))(), || {
                        format!("{} * {} not commutative", c_fmt(sr, a), c_fmt(sr, b))
                    });
                    for d in samples {
                        c.expect(
                            (|| Ok(sr.add(&sr.add(a, b)?, d)? == sr.add(a, &sr.add(b, d)?)?))(),
                            || {
                                format!(
                                    "+ not associative on {}, {}, {}",
                                    c_fmt(sr, a),
                                    c_fmt(sr, b),
                                    c_fmt(sr, d)
                                )
                            },
                        );
                        c.expect(
                            (|| Ok(sr.mul(&sr.mul(a, b)?, d)? == sr.mul(a, &sr.mul(b, d)?)?))(),
                            || {
                                format!(
                                    "* not associative on {}, {}, {}",
                                    c_fmt(sr, a),
                                    c_fmt(sr, b),
                                    c_fmt(sr, d)
                                )
                            },
                        );
                        c.expect(
                            (|| Ok(sr.mul(a, &sr.add(b, d)?)? == sr.add(&sr.mul(a, b)?, &sr.mul(a, d)?)?))(),
                            || {
                                format!(
                                    "not distributive on {}, {}, {}",
                                    c_fmt(sr, a),
                                    c_fmt(sr, b),
                                    c_fmt(sr, d)
                                )
                            },
                        );
                    }
                }
            }
        }
        Law::PlusPositive => pairs(samples, |a, b| {
            c.expect(
                (|| Ok(!sr.is_zero(&sr.add(a, b)?) || (sr.is_zero(a) && sr.is_zero(b))))(),
                || format!("{} + {} = 0", c_fmt(sr, a), c_fmt(sr, b)),
            )
        }),
        Law::Positive => pairs(samples, |a, b| {
            c.expect(
                (|| Ok(!sr.is_zero(&sr.mul(a, b)?) || sr.is_zero(a) || sr.is_zero(b)))(),
                || format!("{} * {} = 0", c_fmt(sr, a), c_fmt(sr, b)),
            )
        }),
        Law::RootIntegral => {
            for a in samples {
                c.expect((|| Ok(!sr.is_zero(&sr.mul(a, a)?) || sr.is_zero(a)))(), || {
                    format!("{} * {} = 0", c_fmt(sr, a), c_fmt(sr, a))
                });
            }
        }
        Law::IdempotentAdd => {
            for a in samples {
                let sum = sr.add(a, a);
                let shown = sum.as_ref().map(|s| c.fmt(s)).unwrap_or_default();
                c.expect(sum.map(|s| s == *a), || {
                    format!("{} + {} = {}", c_fmt(sr, a), c_fmt(sr, a), shown)
                });
            }
        }
        Law::IdempotentMul => {
            for a in samples {
                let prod = sr.mul(a, a);
                let shown = prod.as_ref().map(|s| c.fmt(s)).unwrap_or_default();
                c.expect(prod.map(|s| s == *a), || {
                    format!("{} * {} = {}", c_fmt(sr, a), c_fmt(sr, a), shown)
                });
            }
        }
        Law::Absorptive => pairs(samples, |a, b| {
            c.expect((|| Ok(sr.add(a, &sr.mul(a, b)?)? == *a))(), || {
                format!(
                    "{} + {} * {} != {}",
                    c_fmt(sr, a),
                    c_fmt(sr, a),
                    c_fmt(sr, b),
                    c_fmt(sr, a)
                )
            })
        }),
        Law::OmegaContinuous => {
            for a in samples {
                c.expect(
                    (|| {
                        let s = sr.star(a)?;
                        Ok(s == sr.add(&one, &sr.mul(a, &s)?)?)
                    })(),
                    || format!("star equation fails at {}", c_fmt(sr, a)),
                );
            }
        }
        Law::FullyOmegaContinuous => {
            let tokens: BTreeSet<_> = samples
                .iter()
                .filter_map(Value::as_poly)
                .flat_map(|p| p.tokens())
                .collect();
            match sr.top(&tokens) {
                Ok(top) => {
                    for a in samples {
                        c.expect(sr.leq(a, &top), || format!("{} is not below top", c_fmt(sr, a)));
                    }
                }
                Err(e) => {
                    c.checked += 1;
                    c.failures.push(format!("no top element: {e}"));
                }
            }
        }
        Law::ChainPositive => {
            for a in samples.iter().filter(|a| !sr.is_zero(a)) {
                // Samples whose infinite power is not representable are skipped.
                if let Ok(inf) = sr.pow_inf(a) {
                    c.expect(Ok(!sr.is_zero(&inf)), || format!("{}^inf = 0", c_fmt(sr, a)));
                }
            }
        }
        Law::NaturalOrder => {
            for a in samples {
                c.expect(sr.leq(a, a), || format!("{} <= {} fails", c_fmt(sr, a), c_fmt(sr, a)));
                for b in samples {
                    c.expect((|| Ok(a == b || !(sr.leq(a, b)? && sr.leq(b, a)?)))(), || {
                        format!("antisymmetry fails for {}, {}", c_fmt(sr, a), c_fmt(sr, b))
                    });
                    for d in samples {
                        c.expect((|| Ok(!(sr.leq(a, b)? && sr.leq(b, d)?) || sr.leq(a, d)?))(), || {
                            format!(
                                "transitivity fails for {}, {}, {}",
                                c_fmt(sr, a),
                                c_fmt(sr, b),
                                c_fmt(sr, d)
                            )
                        });
                    }
                }
            }
        }
    }
    LawReport {
        law,
        checked: c.checked,
        counterexamples: c.failures,
    }
}

fn c_fmt(sr: &Semiring, v: &Value) -> String {
    sr.format(v)
}

fn pairs<F: FnMut(&Value, &Value)>(samples: &[Value], mut f: F) {
    for a in samples {
        for b in samples {
            f(a, b);
        }
    }
}

/// Checks every law the semiring declares.
pub fn check_declared_laws(sr: &Semiring, samples: &[Value]) -> Vec<LawReport> {
    Law::ALL
        .into_iter()
        .filter(|l| l.is_declared(sr))
        .map(|l| check_law(sr, samples, l))
        .collect()
}
