//! Exact feasibility analysis of equality-constrained probability tables.
//!
//! The feasible region is `{x : Ax = b, x >= 0}` where `x` ranges over the
//! entries of a joint table and the constraint list always includes the
//! normalization row `sum(x) = 1`. The region is therefore a bounded
//! polytope inside the probability simplex, and it is nonempty exactly when
//! it has a vertex. The pipeline is:
//!
//! 1. exact Gaussian elimination with multiplier tracking; an inconsistent
//!    row yields a rational-combination certificate `0 = c`, `c != 0`;
//! 2. basic-feasible-solution enumeration over column subsets (the systems
//!    here have at most a few dozen columns);
//! 3. if no vertex exists while the equalities are consistent, an exact
//!    phase-1 simplex produces Farkas multipliers `y` with `y^T A <= 0`
//!    componentwise and `y^T b > 0`.
//!
//! The affine dimension of the feasible set is the rank of the differences
//! of its vertices.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::prob::{JointDistribution, Ratio, Space};
use crate::strategy::LinearConstraint;
use crate::{Error, Result};

/// Exact verdict on an intersection of strategy sets.
#[derive(Clone, Debug)]
pub enum IntersectionResult {
    Empty { certificate: Certificate },
    Singleton(JointDistribution),
    Polytope {
        dimension: usize,
        sample: JointDistribution,
    },
}

impl IntersectionResult {
    pub fn is_singleton(&self) -> bool {
        matches!(self, IntersectionResult::Singleton(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IntersectionResult::Empty { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            IntersectionResult::Empty { .. } => "empty",
            IntersectionResult::Singleton(_) => "singleton",
            IntersectionResult::Polytope { .. } => "polytope",
        }
    }
}

/// Proof that `{Ax = b, x >= 0}` is infeasible: rational multipliers, one
/// per constraint row, whose combination is contradictory.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// One multiplier per input constraint, aligned with the constraint list.
    pub multipliers: Vec<Ratio>,
    pub kind: CertificateKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// The combination has zero coefficients but nonzero right-hand side:
    /// the equalities alone are contradictory.
    EqualityContradiction,
    /// The combination has nonpositive coefficients but positive right-hand
    /// side, contradicting `x >= 0`.
    NonnegativityContradiction,
}

impl Certificate {
    /// Recombine the constraints under the stored multipliers and check the
    /// contradiction exactly.
    pub fn verify(&self, constraints: &[LinearConstraint]) -> bool {
        if self.multipliers.len() != constraints.len() {
            return false;
        }
        let n = match constraints.first() {
            Some(c) => c.coeffs.len(),
            None => return false,
        };
        let mut combo = vec![Ratio::zero(); n];
        let mut rhs = Ratio::zero();
        for (m, c) in self.multipliers.iter().zip(constraints) {
            for (slot, a) in combo.iter_mut().zip(&c.coeffs) {
                *slot += m * a;
            }
            rhs += m * &c.rhs;
        }
        match self.kind {
            CertificateKind::EqualityContradiction => {
                combo.iter().all(|c| c.is_zero()) && !rhs.is_zero()
            }
            CertificateKind::NonnegativityContradiction => {
                combo.iter().all(|c| !c.is_positive()) && rhs.is_positive()
            }
        }
    }
}

/// Decide the feasible set of `{x >= 0}` plus the given equalities.
///
/// The caller must include the normalization constraint `sum(x) = 1`;
/// [`intersect_constraints`] does so.
pub fn solve(space: &Space, constraints: &[LinearConstraint]) -> Result<IntersectionResult> {
    let n = space.size();
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(Error::SpaceMismatch);
        }
    }
    let elim = eliminate(n, constraints);
    if let Elimination::Inconsistent { multipliers } = elim {
        return Ok(IntersectionResult::Empty {
            certificate: Certificate {
                multipliers,
                kind: CertificateKind::EqualityContradiction,
            },
        });
    }
    let Elimination::Reduced { rows } = elim else {
        unreachable!()
    };

    let vertices = enumerate_vertices(n, &rows);
    if vertices.is_empty() {
        let multipliers = farkas_multipliers(n, constraints)
            .expect("phase-1 simplex must find a certificate when no vertex exists");
        return Ok(IntersectionResult::Empty {
            certificate: Certificate {
                multipliers,
                kind: CertificateKind::NonnegativityContradiction,
            },
        });
    }
    let dimension = affine_dimension(&vertices);
    if dimension == 0 {
        let j = JointDistribution::new(space.clone(), vertices.into_iter().next().unwrap())?;
        return Ok(IntersectionResult::Singleton(j));
    }
    // deterministic relative-interior sample: the vertex centroid
    let count = Ratio::from_integer((vertices.len() as i64).into());
    let mut sample = vec![Ratio::zero(); n];
    for v in &vertices {
        for (s, x) in sample.iter_mut().zip(v) {
            *s += x;
        }
    }
    for s in sample.iter_mut() {
        *s /= &count;
    }
    Ok(IntersectionResult::Polytope {
        dimension,
        sample: JointDistribution::new(space.clone(), sample)?,
    })
}

/// Affine dimension of the feasible region within the simplex; `-1` when
/// the region is empty. The normalization row is added here.
pub fn feasible_dimension(space: &Space, constraints: &[LinearConstraint]) -> Result<i64> {
    let mut all = constraints.to_vec();
    all.push(normalization_constraint(space));
    match solve(space, &all)? {
        IntersectionResult::Empty { .. } => Ok(-1),
        IntersectionResult::Singleton(_) => Ok(0),
        IntersectionResult::Polytope { dimension, .. } => Ok(dimension as i64),
    }
}

/// The `sum(x) = 1` row.
pub fn normalization_constraint(space: &Space) -> LinearConstraint {
    LinearConstraint {
        coeffs: vec![Ratio::one(); space.size()],
        rhs: Ratio::one(),
        label: "normalization".to_string(),
    }
}

struct ReducedRow {
    coeffs: Vec<Ratio>,
    rhs: Ratio,
}

enum Elimination {
    Reduced { rows: Vec<ReducedRow> },
    Inconsistent { multipliers: Vec<Ratio> },
}

/// Gauss-Jordan elimination over the rationals, tracking each working row
/// as a combination of the original rows.
fn eliminate(n: usize, constraints: &[LinearConstraint]) -> Elimination {
    let m = constraints.len();
    let mut coeffs: Vec<Vec<Ratio>> = constraints.iter().map(|c| c.coeffs.clone()).collect();
    let mut rhs: Vec<Ratio> = constraints.iter().map(|c| c.rhs.clone()).collect();
    let mut trace: Vec<Vec<Ratio>> = (0..m)
        .map(|i| {
            let mut e = vec![Ratio::zero(); m];
            e[i] = Ratio::one();
            e
        })
        .collect();

    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; m];
    for col in 0..n {
        let Some(r) = (0..m).find(|&r| !used[r] && !coeffs[r][col].is_zero()) else {
            continue;
        };
        used[r] = true;
        pivot_rows.push(r);
        let inv = coeffs[r][col].clone();
        for v in coeffs[r].iter_mut() {
            *v /= &inv;
        }
        rhs[r] /= &inv;
        for v in trace[r].iter_mut() {
            *v /= &inv;
        }
        for other in 0..m {
            if other == r || coeffs[other][col].is_zero() {
                continue;
            }
            let factor = coeffs[other][col].clone();
            for j in 0..n {
                let delta = &factor * &coeffs[r][j];
                coeffs[other][j] -= delta;
            }
            let delta = &factor * &rhs[r];
            rhs[other] -= delta;
            for j in 0..m {
                let delta = &factor * &trace[r][j];
                trace[other][j] -= delta;
            }
        }
    }
    for r in 0..m {
        if !used[r] && !rhs[r].is_zero() {
            // coefficients are all zero: 0 = rhs[r], a contradiction
            debug_assert!(coeffs[r].iter().all(|c| c.is_zero()));
            return Elimination::Inconsistent {
                multipliers: trace[r].clone(),
            };
        }
    }
    let rows = pivot_rows
        .into_iter()
        .map(|r| ReducedRow {
            coeffs: coeffs[r].clone(),
            rhs: rhs[r].clone(),
        })
        .collect();
    Elimination::Reduced { rows }
}

/// All basic feasible solutions of `{rows, x >= 0}`, deduplicated.
fn enumerate_vertices(n: usize, rows: &[ReducedRow]) -> Vec<Vec<Ratio>> {
    let r = rows.len();
    let mut vertices: Vec<Vec<Ratio>> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    enumerate_bases(n, r, 0, &mut basis, &mut |basis| {
        if let Some(x) = solve_basis(n, rows, basis) {
            if x.iter().all(|v| !v.is_negative()) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
    });
    vertices
}

fn enumerate_bases(n: usize, r: usize, start: usize, basis: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if basis.len() == r {
        f(basis);
        return;
    }
    for col in start..n {
        if n - col < r - basis.len() {
            break;
        }
        basis.push(col);
        enumerate_bases(n, r, col + 1, basis, f);
        basis.pop();
    }
}

/// Solve the square subsystem with non-basis coordinates pinned to zero;
/// `None` if the submatrix is singular.
fn solve_basis(n: usize, rows: &[ReducedRow], basis: &[usize]) -> Option<Vec<Ratio>> {
    let r = rows.len();
    let mut a: Vec<Vec<Ratio>> = rows
        .iter()
        .map(|row| basis.iter().map(|&c| row.coeffs[c].clone()).collect())
        .collect();
    let mut b: Vec<Ratio> = rows.iter().map(|row| row.rhs.clone()).collect();
    for col in 0..r {
        let pivot = (col..r).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &inv;
        }
        b[col] /= &inv;
        for i in 0..r {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..r {
                let delta = &factor * &a[col][j];
                a[i][j] -= delta;
            }
            let delta = &factor * &b[col];
            b[i] -= delta;
        }
    }
    let mut x = vec![Ratio::zero(); n];
    for (i, &c) in basis.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

fn affine_dimension(vertices: &[Vec<Ratio>]) -> usize {
    if vertices.len() <= 1 {
        return 0;
    }
    let base = &vertices[0];
    let diffs: Vec<Vec<Ratio>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(diffs)
}

fn rank(mut rows: Vec<Vec<Ratio>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &inv;
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in 0..n {
                let delta = &factor * &rows[rank][j];
                rows[i][j] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Phase-1 simplex on `{Ax = b, x >= 0}` with Bland's rule. Returns Farkas
/// multipliers when infeasible, `None` when a feasible point exists.
fn farkas_multipliers(n: usize, constraints: &[LinearConstraint]) -> Option<Vec<Ratio>> {
    let m = constraints.len();
    // flip rows so rhs >= 0
    let mut signs = vec![Ratio::one(); m];
    let mut a: Vec<Vec<Ratio>> = Vec::with_capacity(m);
    let mut b: Vec<Ratio> = Vec::with_capacity(m);
    for (i, c) in constraints.iter().enumerate() {
        if c.rhs.is_negative() {
            signs[i] = -Ratio::one();
            a.push(c.coeffs.iter().map(|v| -v).collect());
            b.push(-c.rhs.clone());
        } else {
            a.push(c.coeffs.clone());
            b.push(c.rhs.clone());
        }
    }
    // tableau columns: n structural + m artificial
    let total = n + m;
    let mut t: Vec<Vec<Ratio>> = (0..m)
        .map(|i| {
            let mut row: Vec<Ratio> = a[i].clone();
            row.extend((0..m).map(|j| {
                if i == j {
                    Ratio::one()
                } else {
                    Ratio::zero()
                }
            }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();
    // objective: minimize sum of artificials; maintain reduced costs z_j - c_j
    // obj[j] = c_B^T (B^-1 A)_j - c_j
    let mut obj: Vec<Ratio> = vec![Ratio::zero(); total + 1];
    for j in 0..=total {
        let mut s = Ratio::zero();
        for (i, row) in t.iter().enumerate() {
            if basis[i] >= n {
                s += &row[j];
            }
        }
        if j < total && j >= n {
            s -= Ratio::one();
        }
        obj[j] = s;
    }
    loop {
        // Bland: entering column = lowest index with positive reduced cost
        let Some(enter) = (0..total).find(|&j| obj[j].is_positive() && !basis.contains(&j)) else {
            break;
        };
        // ratio test, Bland tie-break by basis variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<Ratio> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[total] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave?; // unbounded cannot happen for phase 1
        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i == leave || t[i][enter].is_zero() {
                continue;
            }
            let factor = t[i][enter].clone();
            for j in 0..=total {
                let delta = &factor * &t[leave][j];
                t[i][j] -= delta;
            }
        }
        let factor = obj[enter].clone();
        if !factor.is_zero() {
            for j in 0..=total {
                let delta = &factor * &t[leave][j];
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }
    if obj[total].is_zero() {
        return None; // feasible
    }
    // y_j = 1 + (reduced cost of artificial j); undo the row flips
    let mut y = Vec::with_capacity(m);
    for j in 0..m {
        let yj = Ratio::one() + &obj[n + j];
        y.push(&yj * &signs[j]);
    }
    // at optimum y^T A <= 0 componentwise and y^T b > 0 on unflipped data
    Some(y)
}
