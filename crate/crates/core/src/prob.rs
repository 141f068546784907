//! Exact finite probability algebra: joint tables, marginals, conditionals,
//! and assembly of a joint distribution from a Bayes net.
//!
//! Tables are indexed row-major over variable declaration order. With
//! variables `(y, g)` each of arity 2, index `0` is `(y=0, g=0)`, index `1`
//! is `(y=0, g=1)`, and so on. All entries are arbitrary-precision rationals
//! and every normalization check is exact.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact rational probability / utility value.
pub type Ratio = num_rational::BigRational;

/// A named game variable with an ordered finite domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub domain: Vec<String>,
}

impl VariableSpec {
    pub fn new(name: &str, domain: &[&str]) -> Result<Self> {
        let spec = VariableSpec {
            name: name.to_string(),
            domain: domain.iter().map(|s| s.to_string()).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.domain.len() < 2 {
            return Err(Error::DomainTooSmall(self.name.clone()));
        }
        for (i, a) in self.domain.iter().enumerate() {
            if self.domain[..i].contains(a) {
                return Err(Error::DuplicateLabel(self.name.clone(), a.clone()));
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn value_index(&self, label: &str) -> Result<usize> {
        self.domain
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                variable: self.name.clone(),
                label: label.to_string(),
            })
    }
}

/// An ordered product space of variables; owns the row-major index layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    vars: Vec<VariableSpec>,
}

impl Space {
    pub fn new(vars: Vec<VariableSpec>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            v.validate()?;
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Space { vars })
    }

    pub fn vars(&self) -> &[VariableSpec] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Total number of joint outcomes.
    pub fn size(&self) -> usize {
        self.vars.iter().map(|v| v.arity()).product()
    }

    /// Row-major index of a full assignment (one value index per variable).
    pub fn index_of(&self, assignment: &[usize]) -> usize {
        debug_assert_eq!(assignment.len(), self.vars.len());
        let mut idx = 0;
        for (v, &a) in self.vars.iter().zip(assignment) {
            debug_assert!(a < v.arity());
            idx = idx * v.arity() + a;
        }
        idx
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn assignment_of(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.vars.len()];
        for (slot, v) in out.iter_mut().zip(&self.vars).rev() {
            *slot = idx % v.arity();
            idx /= v.arity();
        }
        out
    }

    /// All joint outcomes in row-major order.
    pub fn outcomes(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|i| self.assignment_of(i))
    }

    /// Human-readable label for an outcome, e.g. `y=B, g=b`.
    pub fn outcome_label(&self, assignment: &[usize]) -> String {
        self.vars
            .iter()
            .zip(assignment)
            .map(|(v, &a)| format!("{}={}", v.name, v.domain[a]))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Assignment from per-variable labels, in declaration order.
    pub fn assignment_from_labels(&self, labels: &[&str]) -> Result<Vec<usize>> {
        if labels.len() != self.vars.len() {
            return Err(Error::TableSize {
                expected: self.vars.len(),
                got: labels.len(),
            });
        }
        self.vars
            .iter()
            .zip(labels)
            .map(|(v, l)| v.value_index(l))
            .collect()
    }
}

/// An exact joint probability table over a [`Space`].
///
/// Invariants (checked on construction): every entry is nonnegative and the
/// entries sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    space: Space,
    probs: Vec<Ratio>,
}

impl JointDistribution {
    pub fn new(space: Space, probs: Vec<Ratio>) -> Result<Self> {
        if probs.len() != space.size() {
            return Err(Error::TableSize {
                expected: space.size(),
                got: probs.len(),
            });
        }
        validate_distribution(&probs)?;
        Ok(JointDistribution { space, probs })
    }

    /// All probability mass on a single outcome.
    pub fn point_mass(space: Space, assignment: &[usize]) -> Self {
        let mut probs = vec![Ratio::zero(); space.size()];
        probs[space.index_of(assignment)] = Ratio::one();
        JointDistribution { space, probs }
    }

    pub fn uniform(space: Space) -> Self {
        let n = space.size();
        let p = Ratio::new(1.into(), (n as i64).into());
        JointDistribution {
            space,
            probs: vec![p; n],
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn probs(&self) -> &[Ratio] {
        &self.probs
    }

    pub fn prob(&self, assignment: &[usize]) -> &Ratio {
        &self.probs[self.space.index_of(assignment)]
    }

    /// Sum out every variable not named in `keep`. The result's variables
    /// stay in this distribution's declaration order.
    pub fn marginal(&self, keep: &[&str]) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter("marginal over no variables".into()));
        }
        let mut keep_idx = Vec::new();
        for name in keep {
            let i = self.space.var_index(name)?;
            if !keep_idx.contains(&i) {
                keep_idx.push(i);
            }
        }
        keep_idx.sort_unstable();
        let sub = Space::new(keep_idx.iter().map(|&i| self.space.vars[i].clone()).collect())?;
        let mut probs = vec![Ratio::zero(); sub.size()];
        for (idx, p) in self.probs.iter().enumerate() {
            let full = self.space.assignment_of(idx);
            let partial: Vec<usize> = keep_idx.iter().map(|&i| full[i]).collect();
            probs[sub.index_of(&partial)] += p;
        }
        JointDistribution::new(sub, probs)
    }

    /// Conditional table `P(target | given = v)` for each value `v` of
    /// `given`. Values whose marginal probability is zero carry no
    /// conditional; they are `None` in the returned table, never fabricated.
    pub fn conditional(&self, target: &str, given: &str) -> Result<ConditionalTable> {
        let t = self.space.var_index(target)?;
        let g = self.space.var_index(given)?;
        if t == g {
            return Err(Error::InvalidParameter(format!(
                "conditional of `{target}` on itself"
            )));
        }
        let t_arity = self.space.vars[t].arity();
        let g_arity = self.space.vars[g].arity();
        let mut pair = vec![vec![Ratio::zero(); t_arity]; g_arity];
        for (idx, p) in self.probs.iter().enumerate() {
            let full = self.space.assignment_of(idx);
            pair[full[g]][full[t]] += p;
        }
        let rows = pair
            .into_iter()
            .map(|row| {
                let total: Ratio = row.iter().sum();
                if total.is_zero() {
                    None
                } else {
                    Some(row.into_iter().map(|p| p / &total).collect())
                }
            })
            .collect();
        Ok(ConditionalTable { rows })
    }
}

/// Result of conditioning: one row per value of the conditioning variable,
/// `None` where that value has zero marginal probability (the conditional is
/// undefined there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalTable {
    pub rows: Vec<Option<Vec<Ratio>>>,
}

impl ConditionalTable {
    /// Support mask over the conditioning variable.
    pub fn support(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.is_some()).collect()
    }
}

fn validate_distribution(probs: &[Ratio]) -> Result<()> {
    let mut sum = Ratio::zero();
    for p in probs {
        if p < &Ratio::zero() {
            return Err(Error::NegativeProbability(crate::rational::exact_string(p)));
        }
        sum += p;
    }
    if !sum.is_one() {
        return Err(Error::NotNormalized(crate::rational::exact_string(&sum)));
    }
    Ok(())
}

/// Conditional probability table for one node: one row per parent
/// assignment (row-major over the parent list), one column per child value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cpt {
    pub rows: Vec<Vec<Ratio>>,
}

impl Cpt {
    pub fn new(rows: Vec<Vec<Ratio>>) -> Self {
        Cpt { rows }
    }

    /// Single-row table for a parentless node.
    pub fn root(dist: Vec<Ratio>) -> Self {
        Cpt { rows: vec![dist] }
    }
}

/// A Bayes net: a DAG over the space's variables plus one conditional table
/// per node. Nodes are identified with variables by index, so the
/// node-to-variable labeling is the identity bijection.
#[derive(Clone, Debug)]
pub struct BayesNet {
    space: Space,
    parents: Vec<Vec<usize>>,
    cpts: Vec<Cpt>,
    defaulted_rows: Vec<(usize, usize)>,
}

impl BayesNet {
    /// Build and validate a net. `edges` are `(parent, child)` variable
    /// names. A CPT row may be left empty to mean "unconstrained"; such rows
    /// are filled with the uniform distribution and flagged in
    /// [`defaulted_rows`](Self::defaulted_rows).
    pub fn new(space: Space, edges: &[(&str, &str)], mut cpts: Vec<Cpt>) -> Result<Self> {
        let n = space.vars().len();
        if cpts.len() != n {
            return Err(Error::TableSize {
                expected: n,
                got: cpts.len(),
            });
        }
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, c) in edges {
            let pi = space.var_index(p)?;
            let ci = space.var_index(c)?;
            if !parents[ci].contains(&pi) {
                parents[ci].push(pi);
            }
        }
        topological_order(&parents)?;

        let mut defaulted_rows = Vec::new();
        for (node, cpt) in cpts.iter_mut().enumerate() {
            let arity = space.vars()[node].arity();
            let row_count: usize = parents[node]
                .iter()
                .map(|&p| space.vars()[p].arity())
                .product();
            if cpt.rows.len() != row_count {
                return Err(Error::TableSize {
                    expected: row_count,
                    got: cpt.rows.len(),
                });
            }
            for (r, row) in cpt.rows.iter_mut().enumerate() {
                if row.is_empty() {
                    let u = Ratio::new(1.into(), (arity as i64).into());
                    *row = vec![u; arity];
                    defaulted_rows.push((node, r));
                    continue;
                }
                if row.len() != arity {
                    return Err(Error::TableSize {
                        expected: arity,
                        got: row.len(),
                    });
                }
                let mut sum = Ratio::zero();
                for p in row.iter() {
                    if p < &Ratio::zero() {
                        return Err(Error::NegativeProbability(crate::rational::exact_string(p)));
                    }
                    sum += p;
                }
                if !sum.is_one() {
                    return Err(Error::CptRowNotNormalized {
                        node: space.vars()[node].name.clone(),
                        row: r,
                        sum: crate::rational::exact_string(&sum),
                    });
                }
            }
        }
        Ok(BayesNet {
            space,
            parents,
            cpts,
            defaulted_rows,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn parents(&self, node: usize) -> &[usize] {
        &self.parents[node]
    }

    pub fn cpt(&self, node: usize) -> &Cpt {
        &self.cpts[node]
    }

    /// CPT rows that were left unconstrained by the caller and defaulted to
    /// uniform; reported so downstream verdicts can flag them.
    pub fn defaulted_rows(&self) -> &[(usize, usize)] {
        &self.defaulted_rows
    }

    /// Row index into a node's CPT for a full joint assignment.
    pub fn cpt_row(&self, node: usize, assignment: &[usize]) -> usize {
        let mut row = 0;
        for &p in &self.parents[node] {
            row = row * self.space.vars()[p].arity() + assignment[p];
        }
        row
    }

    /// The unique joint distribution factorizing over this net: the product
    /// over nodes of `P(node | parents)` at each joint outcome.
    pub fn joint(&self) -> JointDistribution {
        let probs: Vec<Ratio> = (0..self.space.size())
            .map(|idx| {
                let assignment = self.space.assignment_of(idx);
                let mut p = Ratio::one();
                for node in 0..self.space.vars().len() {
                    let row = self.cpt_row(node, &assignment);
                    p *= &self.cpts[node].rows[row][assignment[node]];
                }
                p
            })
            .collect();
        // the factorization of per-row-normalized CPTs always sums to 1
        JointDistribution::new(self.space.clone(), probs)
            .expect("factorization of a valid Bayes net must normalize")
    }
}

fn topological_order(parents: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = parents.len();
    let mut indegree: Vec<usize> = parents.iter().map(|p| p.len()).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(node) = ready.pop() {
        order.push(node);
        for (child, ps) in parents.iter().enumerate() {
            if ps.contains(&node) {
                indegree[child] -= 1;
                if indegree[child] == 0 {
                    ready.push(child);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::CyclicGraph);
    }
    Ok(order)
}
