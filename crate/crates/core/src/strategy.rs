//! Strategy sets: affine families of joint distributions.
//!
//! A player's strategy is a set of joint distributions over the game
//! variables. Every strategy family used here compiles, once its parameters
//! are fixed, to equality constraints on the joint table:
//!
//! * `MarginalFixed(v, p)` — all joints whose marginal on `v` is `p`;
//! * `CptFixed(c, parents, t)` — all joints whose conditional
//!   `P(c | parents)` equals `t` wherever the parent assignment has
//!   positive probability;
//! * `ConditionalIndependentFixed(t, g, h)` — all joints in which
//!   `P(t | g)` is `g`-independent and equal to `h` on the support of `g`.
//!
//! Conditional constraints are cleared of denominators,
//! `P(c = a, parents = b) = t(a | b) * P(parents = b)`, so rows with zero
//! parent probability are vacuously satisfied. That is the exact encoding
//! of the "for all y such that P(y) != 0" side condition in the quantified
//! definitions the families come from.

use num_traits::{One, Zero};

use crate::prob::{JointDistribution, Ratio, Space};
use crate::solve::{self, IntersectionResult};
use crate::{Error, Result};

/// An exact equality constraint over the entries of a joint table.
#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub coeffs: Vec<Ratio>,
    pub rhs: Ratio,
    pub label: String,
}

impl LinearConstraint {
    pub fn holds(&self, j: &JointDistribution) -> bool {
        let lhs: Ratio = self
            .coeffs
            .iter()
            .zip(j.probs())
            .map(|(c, p)| c * p)
            .sum();
        lhs == self.rhs
    }
}

/// The strategy families supported by the engine.
#[derive(Clone, Debug)]
pub enum StrategyKind {
    MarginalFixed {
        variable: String,
        dist: Vec<Ratio>,
    },
    CptFixed {
        child: String,
        parents: Vec<String>,
        /// One row per parent assignment (row-major over the parent list).
        table: Vec<Vec<Ratio>>,
    },
    ConditionalIndependentFixed {
        target: String,
        given: String,
        dist: Vec<Ratio>,
    },
}

/// A compiled strategy set: the describing family plus its exact linear
/// encoding over a fixed joint space.
#[derive(Clone, Debug)]
pub struct StrategySet {
    pub owner: String,
    pub label: String,
    pub kind: StrategyKind,
    constraints: Vec<LinearConstraint>,
    space: Space,
}

impl StrategySet {
    pub fn compile(owner: &str, label: &str, kind: StrategyKind, space: &Space) -> Result<Self> {
        let constraints = compile_constraints(&kind, space)?;
        Ok(StrategySet {
            owner: owner.to_string(),
            label: label.to_string(),
            kind,
            constraints,
            space: space.clone(),
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// Exact membership test.
    pub fn contains(&self, j: &JointDistribution) -> bool {
        j.space() == &self.space && self.constraints.iter().all(|c| c.holds(j))
    }
}

fn check_dist(dist: &[Ratio], arity: usize, what: &str) -> Result<()> {
    if dist.len() != arity {
        return Err(Error::TableSize {
            expected: arity,
            got: dist.len(),
        });
    }
    let mut sum = Ratio::zero();
    for p in dist {
        if p < &Ratio::zero() {
            return Err(Error::NegativeProbability(crate::rational::exact_string(p)));
        }
        sum += p;
    }
    if !sum.is_one() {
        return Err(Error::InvalidParameter(format!(
            "{what} sums to {}, expected exactly 1",
            crate::rational::exact_string(&sum)
        )));
    }
    Ok(())
}

fn compile_constraints(kind: &StrategyKind, space: &Space) -> Result<Vec<LinearConstraint>> {
    let n = space.size();
    match kind {
        StrategyKind::MarginalFixed { variable, dist } => {
            let v = space.var_index(variable)?;
            let arity = space.vars()[v].arity();
            check_dist(dist, arity, &format!("marginal of `{variable}`"))?;
            let mut out = Vec::with_capacity(arity);
            for a in 0..arity {
                let mut coeffs = vec![Ratio::zero(); n];
                for idx in 0..n {
                    if space.assignment_of(idx)[v] == a {
                        coeffs[idx] = Ratio::one();
                    }
                }
                out.push(LinearConstraint {
                    coeffs,
                    rhs: dist[a].clone(),
                    label: format!(
                        "P({variable}={}) = {}",
                        space.vars()[v].domain[a],
                        crate::rational::exact_string(&dist[a])
                    ),
                });
            }
            Ok(out)
        }
        StrategyKind::CptFixed {
            child,
            parents,
            table,
        } => {
            let c = space.var_index(child)?;
            let parent_idx: Vec<usize> = parents
                .iter()
                .map(|p| space.var_index(p))
                .collect::<Result<_>>()?;
            if parent_idx.contains(&c) {
                return Err(Error::InvalidParameter(format!(
                    "`{child}` cannot be its own parent"
                )));
            }
            let arity = space.vars()[c].arity();
            let row_count: usize = parent_idx.iter().map(|&p| space.vars()[p].arity()).product();
            if table.len() != row_count {
                return Err(Error::TableSize {
                    expected: row_count,
                    got: table.len(),
                });
            }
            let mut out = Vec::new();
            for (b, row) in table.iter().enumerate() {
                check_dist(row, arity, &format!("CPT row {b} of `{child}`"))?;
                for a in 0..arity {
                    // P(c=a, parents=b) - t(a|b) * sum_a' P(c=a', parents=b) = 0
                    let mut coeffs = vec![Ratio::zero(); n];
                    for idx in 0..n {
                        let assignment = space.assignment_of(idx);
                        let mut row_of = 0;
                        for &p in &parent_idx {
                            row_of = row_of * space.vars()[p].arity() + assignment[p];
                        }
                        if row_of != b {
                            continue;
                        }
                        coeffs[idx] = if assignment[c] == a {
                            Ratio::one() - &row[a]
                        } else {
                            -row[a].clone()
                        };
                    }
                    out.push(LinearConstraint {
                        coeffs,
                        rhs: Ratio::zero(),
                        label: format!(
                            "P({child}={} | row {b}) = {}",
                            space.vars()[c].domain[a],
                            crate::rational::exact_string(&row[a])
                        ),
                    });
                }
            }
            Ok(out)
        }
        StrategyKind::ConditionalIndependentFixed {
            target,
            given,
            dist,
        } => {
            let t = space.var_index(target)?;
            let g = space.var_index(given)?;
            if t == g {
                return Err(Error::InvalidParameter(format!(
                    "`{target}` cannot be conditioned on itself"
                )));
            }
            let t_arity = space.vars()[t].arity();
            let g_arity = space.vars()[g].arity();
            check_dist(dist, t_arity, &format!("conditional of `{target}`"))?;
            let mut out = Vec::new();
            for a in 0..t_arity {
                for v in 0..g_arity {
                    // P(t=a, g=v) - h(a) * sum_a' P(t=a', g=v) = 0
                    let mut coeffs = vec![Ratio::zero(); n];
                    for idx in 0..n {
                        let assignment = space.assignment_of(idx);
                        if assignment[g] != v {
                            continue;
                        }
                        coeffs[idx] = if assignment[t] == a {
                            Ratio::one() - &dist[a]
                        } else {
                            -dist[a].clone()
                        };
                    }
                    out.push(LinearConstraint {
                        coeffs,
                        rhs: Ratio::zero(),
                        label: format!(
                            "P({target}={} | {given}={}) = {}",
                            space.vars()[t].domain[a],
                            space.vars()[g].domain[v],
                            crate::rational::exact_string(&dist[a])
                        ),
                    });
                }
            }
            Ok(out)
        }
    }
}

/// Exact verdict on the intersection of strategy sets, within the simplex.
pub fn intersect(sets: &[&StrategySet]) -> Result<IntersectionResult> {
    let space = match sets.first() {
        Some(s) => s.space.clone(),
        None => return Err(Error::InvalidParameter("no strategy sets to intersect".into())),
    };
    let mut constraints = Vec::new();
    for s in sets {
        if s.space != space {
            return Err(Error::SpaceMismatch);
        }
        constraints.extend(s.constraints.iter().cloned());
    }
    constraints.push(solve::normalization_constraint(&space));
    solve::solve(&space, &constraints)
}

/// The constraint list `intersect` solves, including normalization; used
/// to verify certificates against the original system.
pub fn intersection_constraints(sets: &[&StrategySet]) -> Vec<LinearConstraint> {
    let mut constraints: Vec<LinearConstraint> = sets
        .iter()
        .flat_map(|s| s.constraints.iter().cloned())
        .collect();
    if let Some(s) = sets.first() {
        constraints.push(solve::normalization_constraint(&s.space));
    }
    constraints
}
