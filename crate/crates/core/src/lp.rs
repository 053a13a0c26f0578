//! Small dense linear programming and polytope utilities.
//!
//! Programs are always of the form
//!
//! ```text
//! minimize    c . x
//! subject to  a_i . x  (>=, <=, =)  b_i
//!             x >= 0
//! ```
//!
//! solved by a two-phase tableau simplex with Bland's rule. The tableau is
//! rebuilt from the original data with partial pivoting every
//! [`REFACTOR_INTERVAL`] pivots and once more at the end, and every optimum
//! carries dual multipliers and the resulting duality gap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const REFACTOR_INTERVAL: usize = 50;
pub const MAX_VERTEX_DIM: usize = 6;

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintKind {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub kind: ConstraintKind,
    pub rhs: f64,
}

impl Constraint {
    pub fn ge(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, kind: ConstraintKind::Ge, rhs }
    }
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, kind: ConstraintKind::Le, rhs }
    }
    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, kind: ConstraintKind::Eq, rhs }
    }
}

/// Minimize `objective . x` over `x >= 0` and the listed constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    /// One multiplier per input constraint (sign convention of the dual of a
    /// minimization: `>=` rows nonnegative, `<=` rows nonpositive).
    pub duals: Vec<f64>,
    /// `|c.x - b.y|`.
    pub duality_gap: f64,
    /// Largest violation of `A^T y <= c` or of the dual sign constraints.
    pub dual_infeasibility: f64,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, constraints: Vec<Constraint>) -> Result<Self> {
        let lp = Self { objective, constraints };
        lp.validate()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Linear program over the probability simplex: `x >= 0`, `sum x = 1`,
    /// followed by `extra` constraints.
    pub fn over_simplex(objective: Vec<f64>, extra: Vec<Constraint>) -> Result<Self> {
        let n = objective.len();
        let mut constraints = Vec::with_capacity(extra.len() + 1);
        constraints.push(Constraint::eq(vec![1.0; n], 1.0));
        constraints.extend(extra);
        Self::new(objective, constraints)
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if n == 0 {
            return Err(Error::Domain("linear program without variables".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::Domain(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
            if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("constraint {i} has non-finite entries")));
            }
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite objective".into()));
        }
        Ok(())
    }

    /// Solve with the default feasibility tolerance (1e-10).
    pub fn solve(&self) -> LpOutcome {
        self.solve_with(1e-10)
    }

    pub fn solve_with(&self, feasibility_tol: f64) -> LpOutcome {
        Tableau::build(self).run(self, feasibility_tol)
    }

    /// The dual program, rewritten as a minimization so it can be fed back
    /// into the same solver: the returned optimum is `-(dual value)`.
    ///
    /// Free multipliers (equality rows) are split into two nonnegative parts
    /// and `<=` multipliers are negated.
    pub fn dual(&self) -> LinearProgram {
        let n = self.num_vars();
        let mut columns: Vec<(usize, f64)> = Vec::new();
        for (i, c) in self.constraints.iter().enumerate() {
            match c.kind {
                ConstraintKind::Ge => columns.push((i, 1.0)),
                ConstraintKind::Le => columns.push((i, -1.0)),
                ConstraintKind::Eq => {
                    columns.push((i, 1.0));
                    columns.push((i, -1.0));
                }
            }
        }
        let objective = columns.iter().map(|&(i, s)| -s * self.constraints[i].rhs).collect();
        let constraints = (0..n)
            .map(|j| {
                let coeffs = columns.iter().map(|&(i, s)| s * self.constraints[i].coeffs[j]).collect();
                Constraint::le(coeffs, self.objective[j])
            })
            .collect();
        LinearProgram { objective, constraints }
    }
}

struct Tableau {
    /// m rows of `ncols` coefficients followed by the rhs.
    rows: Vec<Vec<f64>>,
    /// Original normalized data (same layout) for refactorization.
    original: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Column that started as `+e_i` for each original constraint.
    unit_col: Vec<usize>,
    /// -1 where the constraint was multiplied by -1 to make its rhs nonnegative.
    flipped: Vec<f64>,
    n: usize,
    ncols: usize,
    first_artificial: usize,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let mut normalized = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for c in &lp.constraints {
            if c.rhs < 0.0 {
                let kind = match c.kind {
                    ConstraintKind::Ge => ConstraintKind::Le,
                    ConstraintKind::Le => ConstraintKind::Ge,
                    ConstraintKind::Eq => ConstraintKind::Eq,
                };
                normalized.push((c.coeffs.iter().map(|v| -v).collect::<Vec<_>>(), kind, -c.rhs));
                flipped.push(-1.0);
            } else {
                normalized.push((c.coeffs.clone(), c.kind, c.rhs));
                flipped.push(1.0);
            }
        }
        let num_slack = normalized.iter().filter(|r| r.1 != ConstraintKind::Eq).count();
        let num_art = normalized.iter().filter(|r| r.1 != ConstraintKind::Le).count();
        let first_slack = n;
        let first_artificial = n + num_slack;
        let ncols = first_artificial + num_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (first_slack, first_artificial);
        for (coeffs, kind, rhs) in normalized {
            let mut row = vec![0.0; ncols + 1];
            row[..n].copy_from_slice(&coeffs);
            row[ncols] = rhs;
            match kind {
                ConstraintKind::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    unit_col.push(next_slack);
                    next_slack += 1;
                }
                ConstraintKind::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    unit_col.push(next_art);
                    next_art += 1;
                }
                ConstraintKind::Eq => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    unit_col.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            original: rows.clone(),
            rows,
            basis,
            unit_col,
            flipped,
            n,
            ncols,
            first_artificial,
            pivots: 0,
        }
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        d.push(0.0);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (dj, rj) in d.iter_mut().zip(row) {
                    *dj -= cb * rj;
                }
            }
        }
        // d[ncols] now holds minus the objective value.
        d
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
        if self.pivots.is_multiple_of(REFACTOR_INTERVAL) {
            self.refactor();
        }
    }

    /// Rebuild `B^-1 [A | b]` from the original rows by Gauss-Jordan
    /// elimination with partial pivoting over the current basis columns.
    fn refactor(&mut self) {
        let mut work = self.original.clone();
        let m = work.len();
        let mut assigned = vec![false; m];
        let mut new_basis = vec![usize::MAX; m];
        for &col in &self.basis {
            let mut best = None;
            let mut best_abs = 0.0;
            for (i, row) in work.iter().enumerate() {
                if !assigned[i] && row[col].abs() > best_abs {
                    best_abs = row[col].abs();
                    best = Some(i);
                }
            }
            let Some(r) = best.filter(|_| best_abs > 1e-14) else {
                // Numerically singular basis; keep the incrementally updated tableau.
                return;
            };
            assigned[r] = true;
            new_basis[r] = col;
            let p = work[r][col];
            for v in work[r].iter_mut() {
                *v /= p;
            }
            let pr = work[r].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != r {
                    let f = row[col];
                    if f != 0.0 {
                        for (v, pv) in row.iter_mut().zip(&pr) {
                            *v -= f * pv;
                        }
                        row[col] = 0.0;
                    }
                }
            }
        }
        for row in &mut work {
            let last = row.len() - 1;
            if row[last] < 0.0 && row[last] > -1e-12 {
                row[last] = 0.0;
            }
        }
        self.rows = work;
        self.basis = new_basis;
    }

    /// Simplex iterations on `cost`; columns at or beyond `limit` may not enter.
    fn iterate(&mut self, cost: &[f64], limit: usize) -> std::result::Result<(), ()> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(());
            }
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..limit).find(|&j| d[j] < -COST_EPS && !self.basis.contains(&j)) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > PIVOT_EPS {
                    let ratio = row[self.ncols].max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-15 * (1.0 + br.abs())
                                || (ratio <= br + 1e-15 * (1.0 + br.abs()) && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Err(()),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram, feasibility_tol: f64) -> LpOutcome {
        // Phase one: minimize the sum of artificials.
        if self.first_artificial < self.ncols {
            let mut cost = vec![0.0; self.ncols];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = 1.0;
            }
            if self.iterate(&cost, self.ncols).is_err() {
                return LpOutcome::Infeasible;
            }
            let residual: f64 = self
                .rows
                .iter()
                .zip(&self.basis)
                .filter(|(_, &b)| b >= self.first_artificial)
                .map(|(row, _)| row[self.ncols])
                .sum();
            let scale = 1.0 + lp.constraints.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
            if residual > feasibility_tol * scale {
                return LpOutcome::Infeasible;
            }
            self.expel_artificials();
        }

        // Phase two.
        let mut cost = vec![0.0; self.ncols];
        cost[..self.n].copy_from_slice(&lp.objective);
        if self.iterate(&cost, self.first_artificial).is_err() {
            return LpOutcome::Unbounded;
        }
        if self.pivots > 0 {
            self.refactor();
            // Refactoring can expose a tiny negative reduced cost; finish it off.
            if self.iterate(&cost, self.first_artificial).is_err() {
                return LpOutcome::Unbounded;
            }
        }
        LpOutcome::Optimal(self.extract(lp, &cost))
    }

    /// Pivot zero-level artificials out of the basis where possible. Rows
    /// where no structural column can replace them are redundant; their
    /// artificial stays basic at zero and never blocks a ratio test.
    fn expel_artificials(&mut self) {
        for i in 0..self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                let col = (0..self.first_artificial)
                    .find(|&j| self.rows[i][j].abs() > 1e-9 && !self.basis.contains(&j));
                if let Some(j) = col {
                    self.pivot(i, j);
                }
            }
        }
        for row in &mut self.rows {
            let last = row.len() - 1;
            if row[last] < 0.0 {
                row[last] = 0.0;
            }
        }
    }

    fn extract(&self, lp: &LinearProgram, cost: &[f64]) -> LpSolution {
        let mut x = vec![0.0; self.n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n {
                x[b] = row[self.ncols].max(0.0);
            }
        }
        let d = self.reduced_costs(cost);
        let duals: Vec<f64> = (0..lp.constraints.len())
            .map(|i| -d[self.unit_col[i]] * self.flipped[i])
            .collect();
        let value: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        let dual_value: f64 = lp.constraints.iter().zip(&duals).map(|(c, y)| c.rhs * y).sum();
        let mut dual_infeasibility: f64 = 0.0;
        for j in 0..self.n {
            let aty: f64 = lp.constraints.iter().zip(&duals).map(|(c, y)| c.coeffs[j] * y).sum();
            dual_infeasibility = dual_infeasibility.max(aty - lp.objective[j]);
        }
        for (c, &y) in lp.constraints.iter().zip(&duals) {
            let v = match c.kind {
                ConstraintKind::Ge => -y,
                ConstraintKind::Le => y,
                ConstraintKind::Eq => 0.0,
            };
            dual_infeasibility = dual_infeasibility.max(v);
        }
        LpSolution {
            value,
            x,
            duals,
            duality_gap: (value - dual_value).abs(),
            dual_infeasibility,
            pivots: self.pivots,
        }
    }
}

/// Solve the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when the matrix is numerically singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    for k in 0..n {
        let (p, pv) = (k..n)
            .map(|i| (i, a[i][k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pv <= 1e-12 * scale {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(i);
                for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= f * y;
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// Half-space `normal . p >= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpace {
    #[serde(rename = "b")]
    pub normal: Vec<f64>,
    pub bound: f64,
}

impl HalfSpace {
    pub fn new(normal: Vec<f64>, bound: f64) -> Self {
        Self { normal, bound }
    }

    pub fn slack(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.bound
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Outcome of minimizing a linear objective over `{p in simplex : hrep}`.
pub fn minimize_over_simplex(objective: &[f64], hrep: &[HalfSpace], feasibility_tol: f64) -> Result<LpOutcome> {
    let extra = hrep.iter().map(|h| Constraint::ge(h.normal.clone(), h.bound)).collect();
    Ok(LinearProgram::over_simplex(objective.to_vec(), extra)?.solve_with(feasibility_tol))
}

/// Indices of an irredundant subset of `hrep` describing the same polytope
/// inside the simplex, or `Err(j)` when adding constraint `j` empties it.
///
/// Constraints are first accepted greedily against the running set (a
/// constraint implied by a subset is implied by the whole list), then each
/// accepted constraint is re-tested against the others.
pub fn irredundant_subset(n: usize, hrep: &[HalfSpace], tol: f64) -> std::result::Result<Vec<usize>, usize> {
    let min_over = |objective: &[f64], keep: &[usize]| -> Option<f64> {
        let rows: Vec<HalfSpace> = keep.iter().map(|&k| hrep[k].clone()).collect();
        minimize_over_simplex(objective, &rows, tol.min(1e-10))
            .ok()?
            .optimal()
            .map(|s| s.value)
    };
    let mut keep: Vec<usize> = Vec::new();
    for (j, h) in hrep.iter().enumerate() {
        debug_assert_eq!(h.normal.len(), n);
        let Some(lo) = min_over(&h.normal, &keep) else {
            return Err(j);
        };
        if lo >= h.bound - tol {
            continue;
        }
        let neg: Vec<f64> = h.normal.iter().map(|v| -v).collect();
        let hi = -min_over(&neg, &keep).ok_or(j)?;
        if hi < h.bound - tol {
            return Err(j);
        }
        keep.push(j);
    }
    let mut i = 0;
    while i < keep.len() {
        let j = keep[i];
        let others: Vec<usize> = keep.iter().copied().filter(|&k| k != j).collect();
        match min_over(&hrep[j].normal, &others) {
            Some(lo) if lo >= hrep[j].bound - tol => {
                keep.remove(i);
            }
            _ => i += 1,
        }
    }
    Ok(keep)
}

/// All vertices of `{p in simplex : hrep}` for `n <= 6`, deduplicated.
///
/// Every choice of `n - 1` tight inequalities (from the irredundant part of
/// `hrep` and the nonnegativity constraints) together with `sum p = 1` is
/// solved; feasible solutions are the basic feasible points.
pub fn enumerate_vertices(n: usize, hrep: &[HalfSpace], dedup_tol: f64) -> Result<Vec<Vec<f64>>> {
    if n > MAX_VERTEX_DIM {
        return Err(Error::Unsupported(format!(
            "vertex enumeration is limited to {MAX_VERTEX_DIM} states, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("zero-dimensional simplex".into()));
    }
    let core = irredundant_subset(n, hrep, 1e-9).map_err(|_| Error::EmptyCredalSet)?;
    let mut rows: Vec<HalfSpace> = core.iter().map(|&k| hrep[k].clone()).collect();
    for s in 0..n {
        let mut e = vec![0.0; n];
        e[s] = 1.0;
        rows.push(HalfSpace::new(e, 0.0));
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut accept = |p: Vec<f64>| {
        let feasible = p.iter().all(|&v| v >= -1e-10)
            && hrep.iter().all(|h| h.slack(&p) >= -1e-10 * (1.0 + h.bound.abs()));
        if !feasible {
            return;
        }
        let p: Vec<f64> = p.into_iter().map(|v| if v.abs() < 1e-15 { 0.0 } else { v }).collect();
        if !vertices
            .iter()
            .any(|v| v.iter().zip(&p).all(|(a, b)| (a - b).abs() <= dedup_tol))
        {
            vertices.push(p);
        }
    };
    if n == 1 {
        accept(vec![1.0]);
        return Ok(vertices);
    }
    for combo in Combinations::new(rows.len(), n - 1) {
        let mut a: Vec<Vec<f64>> = combo.iter().map(|&k| rows[k].normal.clone()).collect();
        let mut b: Vec<f64> = combo.iter().map(|&k| rows[k].bound).collect();
        a.push(vec![1.0; n]);
        b.push(1.0);
        if let Some(p) = solve_dense(a, b) {
            accept(p);
        }
    }
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| snap(*x, dedup_tol).total_cmp(&snap(*y, dedup_tol)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(vertices)
}

pub(crate) fn snap(v: f64, tol: f64) -> f64 {
    (v / tol).round() * tol
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { idx: (0..k).collect(), n, done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn third() -> f64 {
        1.0 / 3.0
    }

    #[test]
    fn simplex_vertex_optimum() {
        let lp = LinearProgram::over_simplex(vec![1.0, -1.0], vec![]).unwrap();
        let s = lp.solve().optimal().unwrap();
        assert!((s.value + 1.0).abs() < 1e-12);
        assert_eq!(s.x, vec![0.0, 1.0]);
        assert!(s.duality_gap <= 1e-10);
    }

    #[test]
    fn lower_bounded_coordinate() {
        let lp = LinearProgram::over_simplex(vec![1.0, 0.0], vec![Constraint::ge(vec![1.0, 0.0], third())]).unwrap();
        let s = lp.solve().optimal().unwrap();
        assert!((s.value - third()).abs() < 1e-12);
        assert!((s.x[0] - third()).abs() < 1e-12);
        assert!((s.x[1] - 2.0 * third()).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-10);
        assert!(s.dual_infeasibility <= 1e-10);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let lp = LinearProgram::over_simplex(
            vec![1.0, 0.0],
            vec![Constraint::ge(vec![1.0, 0.0], 0.6), Constraint::le(vec![1.0, 0.0], 0.4)],
        )
        .unwrap();
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram::new(vec![-1.0, 0.0], vec![Constraint::ge(vec![1.0, -1.0], 0.0)]).unwrap();
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // p1 <= 0.4 written as -p1 >= -0.4.
        let lp = LinearProgram::over_simplex(vec![-1.0, 0.0], vec![Constraint::ge(vec![-1.0, 0.0], -0.4)]).unwrap();
        let s = lp.solve().optimal().unwrap();
        assert!((s.value + 0.4).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-10);
        assert!(s.duals[1] >= -1e-12);
    }

    #[test]
    fn malformed_dimensions_rejected() {
        assert!(LinearProgram::new(vec![1.0, 2.0], vec![Constraint::ge(vec![1.0], 0.0)]).is_err());
        assert!(LinearProgram::new(vec![], vec![]).is_err());
    }

    #[test]
    fn explicit_dual_matches() {
        let lp = LinearProgram::over_simplex(
            vec![0.3, -0.2, 0.9],
            vec![Constraint::ge(vec![1.0, 0.0, 0.0], 0.2), Constraint::le(vec![0.0, 1.0, 0.0], 0.5)],
        )
        .unwrap();
        let primal = lp.solve().optimal().unwrap();
        let dual = lp.dual().solve().optimal().unwrap();
        assert!((primal.value + dual.value).abs() < 1e-10);
    }

    #[test]
    fn degenerate_cycling_prone_program_terminates() {
        // Beale's example, a classic cycling instance for the textbook pivot rule.
        let lp = LinearProgram::new(
            vec![-0.75, 150.0, -0.02, 6.0],
            vec![
                Constraint::le(vec![0.25, -60.0, -0.04, 9.0], 0.0),
                Constraint::le(vec![0.5, -90.0, -0.02, 3.0], 0.0),
                Constraint::le(vec![0.0, 0.0, 1.0, 0.0], 1.0),
            ],
        )
        .unwrap();
        let s = lp.solve().optimal().unwrap();
        assert!((s.value + 0.05).abs() < 1e-10);
        assert!(s.duality_gap < 1e-10);
    }

    #[test]
    fn vertices_of_simplex() {
        let v = enumerate_vertices(3, &[], 1e-9).unwrap();
        assert_eq!(v, vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]]);
    }

    #[test]
    fn vertices_of_interval_set() {
        let hrep = [
            HalfSpace::new(vec![1.0, 0.0], third()),
            HalfSpace::new(vec![-1.0, 0.0], -2.0 * third()),
        ];
        let v = enumerate_vertices(2, &hrep, 1e-9).unwrap();
        assert_eq!(v.len(), 2);
        assert!((v[0][0] - third()).abs() < 1e-12 && (v[0][1] - 2.0 * third()).abs() < 1e-12);
        assert!((v[1][0] - 2.0 * third()).abs() < 1e-12 && (v[1][1] - third()).abs() < 1e-12);
    }

    #[test]
    fn duplicate_constraints_give_no_duplicate_vertices() {
        let h = HalfSpace::new(vec![1.0, 0.0, 0.0], 0.2);
        let v = enumerate_vertices(3, &[h.clone(), h], 1e-9).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn vertex_enumeration_dimension_limit() {
        assert!(matches!(enumerate_vertices(7, &[], 1e-9), Err(Error::Unsupported(_))));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(6, 3).count(), 20);
        assert_eq!(Combinations::new(4, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn dense_solver() {
        let x = solve_dense(vec![vec![0.0, 2.0], vec![3.0, 1.0]], vec![4.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
        assert!(solve_dense(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }
}
