//! Dense two-phase tableau simplex.
//!
//! Every envelopment model in this crate is lowered onto [`LpProblem`] and
//! solved here. The kernel is deliberately small: a dense tableau, Bland's
//! rule for both the entering and the leaving variable, and a final
//! refinement step that recomputes the basic solution and the reduced costs
//! from the original data so that reported residuals do not carry the
//! round-off accumulated by pivoting.
//!
//! Lexicographic (two-priority) objectives are supported through
//! [`solve_lexicographic`], which is how the non-Archimedean slack term of
//! the radial DEA models is handled without picking a numeric epsilon.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub sense: Sense,
    pub cost: Vec<f64>,
}

impl Objective {
    pub fn minimize(cost: Vec<f64>) -> Self {
        Self { sense: Sense::Minimize, cost }
    }

    pub fn maximize(cost: Vec<f64>) -> Self {
        Self { sense: Sense::Maximize, cost }
    }

    /// Value of the objective at `x` (in its own sense, not negated).
    pub fn value(&self, x: &[f64]) -> f64 {
        self.cost.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// A dense linear program over `N` variables and `R` rows.
///
/// Variables default to `0 <= x_j` with no upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Objective,
    pub rows: Vec<Vec<f64>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<Option<f64>>,
}

impl LpProblem {
    pub fn new(objective: Objective) -> Self {
        let n = objective.cost.len();
        Self {
            objective,
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.cost.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.rows.push(coeffs);
        self.relations.push(relation);
        self.rhs.push(rhs);
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: Option<f64>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn with_objective(&self, objective: Objective) -> Self {
        Self { objective, ..self.clone() }
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for ((row, rel), b) in self.rows.iter().zip(&self.relations).zip(&self.rhs) {
            let lhs: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match rel {
                Relation::Le => lhs - b,
                Relation::Ge => b - lhs,
                Relation::Eq => (lhs - b).abs(),
            };
            worst = worst.max(v);
        }
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v);
            if let Some(u) = self.upper[j] {
                worst = worst.max(v - u);
            }
        }
        worst
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        let r = self.rows.len();
        if self.relations.len() != r || self.rhs.len() != r {
            return Err(LpError::DimensionMismatch(format!(
                "{} rows, {} relations, {} rhs entries",
                r,
                self.relations.len(),
                self.rhs.len()
            )));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::DimensionMismatch(format!(
                "{} variables but {} lower and {} upper bounds",
                n,
                self.lower.len(),
                self.upper.len()
            )));
        }
        if let Some((i, row)) = self.rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(LpError::DimensionMismatch(format!(
                "row {} has {} coefficients, expected {}",
                i,
                row.len(),
                n
            )));
        }
        let finite = self.objective.cost.iter().all(|v| v.is_finite())
            && self.rows.iter().flatten().all(|v| v.is_finite())
            && self.rhs.iter().all(|v| v.is_finite())
            && self.lower.iter().all(|v| v.is_finite())
            && self.upper.iter().flatten().all(|v| v.is_finite());
        if !finite {
            return Err(LpError::NonFinite);
        }
        for j in 0..n {
            if let Some(u) = self.upper[j] {
                if self.lower[j] > u {
                    return Err(LpError::InvalidBounds { var: j, lower: self.lower[j], upper: u });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Final basis and the reduced costs of every non-artificial column of the
/// internal standard form, recomputed from the original data. For an optimal
/// solution all reduced costs are `>= -optimality` (minimization form).
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub basis: Vec<usize>,
    pub reduced_costs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Option<Vec<f64>>,
    pub objective: Option<f64>,
    pub iterations: usize,
    pub certificate: Option<Certificate>,
}

impl LpSolution {
    fn without_point(status: LpStatus, iterations: usize) -> Self {
        Self { status, x: None, objective: None, iterations, certificate: None }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("problem contains a non-finite coefficient")]
    NonFinite,
    #[error("variable {var} has lower bound {lower} above upper bound {upper}")]
    InvalidBounds { var: usize, lower: f64, upper: f64 },
    #[error("numerical breakdown: {0}")]
    Numerical(&'static str),
    #[error("iteration limit of {0} reached")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Phase-1 optimum above this means infeasible.
    pub feasibility: f64,
    /// Reduced costs below `-optimality` are eligible to enter.
    pub optimality: f64,
    /// Smallest pivot element accepted, relative to the largest magnitude
    /// of the entering column in the original data.
    pub pivot: f64,
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { feasibility: 1e-9, optimality: 1e-9, pivot: 1e-9, max_iterations: 100_000 }
    }
}

/// Solve with default tolerances.
pub fn solve(problem: &LpProblem) -> Result<LpSolution, LpError> {
    Simplex::default().solve(problem)
}

/// Solve for `primary`, then optimize `secondary` over the primary optimum set.
pub fn solve_lexicographic(
    problem: &LpProblem,
    primary: &Objective,
    secondary: &Objective,
) -> Result<LpSolution, LpError> {
    Simplex::default().solve_lexicographic(problem, primary, secondary)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Simplex {
    pub tol: Tolerances,
}

impl Simplex {
    pub fn new(tol: Tolerances) -> Self {
        Self { tol }
    }

    pub fn solve(&self, problem: &LpProblem) -> Result<LpSolution, LpError> {
        problem.validate()?;
        let mut form = StandardForm::build(problem);
        form.run(problem, &self.tol)
    }

    pub fn solve_lexicographic(
        &self,
        problem: &LpProblem,
        primary: &Objective,
        secondary: &Objective,
    ) -> Result<LpSolution, LpError> {
        let n = problem.num_vars();
        for obj in [primary, secondary] {
            if obj.cost.len() != n {
                return Err(LpError::DimensionMismatch(format!(
                    "objective has {} costs, problem has {} variables",
                    obj.cost.len(),
                    n
                )));
            }
        }
        let first = self.solve(&problem.with_objective(primary.clone()))?;
        let Some(x) = first.x.as_ref().filter(|_| first.is_optimal()) else {
            return Ok(first);
        };
        let optimum = primary.value(x);
        let mut restricted = problem.with_objective(secondary.clone());
        restricted.add_constraint(primary.cost.clone(), Relation::Eq, optimum);
        let mut second = self.solve(&restricted)?;
        second.iterations += first.iterations;
        Ok(second)
    }
}

/// `min c'x  s.t.  A x = b, x >= 0` with `b >= 0`, plus a running tableau.
struct StandardForm {
    rows: usize,
    /// structural (shifted) columns
    structural: usize,
    /// structural + slack/surplus columns; artificials follow
    real_cols: usize,
    cols: usize,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    /// `max(1, max_i |a_ij|)` per column
    col_scale: Vec<f64>,
    /// tableau rows: `cols` entries plus the rhs in the last slot
    tab: Vec<Vec<f64>>,
    basis: Vec<usize>,
    iterations: usize,
}

impl StandardForm {
    fn build(p: &LpProblem) -> Self {
        let n = p.num_vars();
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(p.num_rows());
        for ((row, rel), b) in p.rows.iter().zip(&p.relations).zip(&p.rhs) {
            let shift: f64 = row.iter().zip(&p.lower).map(|(a, l)| a * l).sum();
            rows.push((row.clone(), *rel, b - shift));
        }
        for j in 0..n {
            if let Some(u) = p.upper[j] {
                let mut row = vec![0.0; n];
                row[j] = 1.0;
                rows.push((row, Relation::Le, u - p.lower[j]));
            }
        }
        for (row, rel, b) in rows.iter_mut() {
            if *b < 0.0 {
                row.iter_mut().for_each(|v| *v = -*v);
                *b = -*b;
                *rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }

        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let real_cols = n + n_slack;
        let cols = real_cols + n_art;
        let mut a = vec![vec![0.0; cols]; m];
        let mut b = vec![0.0; m];
        let mut basis = vec![0; m];
        let (mut next_slack, mut next_art) = (n, real_cols);
        for (i, (row, rel, rhs)) in rows.into_iter().enumerate() {
            a[i][..n].copy_from_slice(&row);
            b[i] = rhs;
            match rel {
                Relation::Le => {
                    a[i][next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    a[i][next_slack] = -1.0;
                    next_slack += 1;
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    a[i][next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        let tab = a
            .iter()
            .zip(&b)
            .map(|(row, &rhs)| {
                let mut t = row.clone();
                t.push(rhs);
                t
            })
            .collect();
        let col_scale = (0..cols).map(|j| a.iter().map(|r| r[j].abs()).fold(1.0, f64::max)).collect();
        Self { rows: m, structural: n, real_cols, cols, a, b, col_scale, tab, basis, iterations: 0 }
    }

    fn run(&mut self, p: &LpProblem, tol: &Tolerances) -> Result<LpSolution, LpError> {
        if self.cols > self.real_cols {
            let mut phase1 = vec![0.0; self.cols];
            phase1[self.real_cols..].iter_mut().for_each(|c| *c = 1.0);
            if !self.optimize(&phase1, self.cols, tol)? {
                // phase 1 is bounded below by zero; a ray here is round-off
                return Err(LpError::Numerical("unbounded direction in phase 1"));
            }
            let infeasibility: f64 = self
                .basis
                .iter()
                .zip(&self.tab)
                .filter(|(&j, _)| j >= self.real_cols)
                .map(|(_, row)| row[self.cols])
                .sum();
            if infeasibility > tol.feasibility {
                return Ok(LpSolution::without_point(LpStatus::Infeasible, self.iterations));
            }
            self.drive_out_artificials(tol);
        }

        let sign = match p.objective.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let mut cost = vec![0.0; self.cols];
        for (c, &v) in cost.iter_mut().zip(&p.objective.cost) {
            *c = sign * v;
        }
        if !self.optimize(&cost, self.real_cols, tol)? {
            return Ok(LpSolution::without_point(LpStatus::Unbounded, self.iterations));
        }

        let (values, reduced_costs) = self.refine(&cost);
        let x: Vec<f64> = (0..self.structural)
            .map(|j| {
                let v = values[j];
                let v = if v < 0.0 && v > -tol.feasibility { 0.0 } else { v };
                p.lower[j] + v
            })
            .collect();
        let objective = p.objective.value(&x);
        Ok(LpSolution {
            status: LpStatus::Optimal,
            x: Some(x),
            objective: Some(objective),
            iterations: self.iterations,
            certificate: Some(Certificate { basis: self.basis.clone(), reduced_costs }),
        })
    }

    /// Minimizes `cost` using columns `< allowed`. Returns false on unboundedness.
    fn optimize(&mut self, cost: &[f64], allowed: usize, tol: &Tolerances) -> Result<bool, LpError> {
        let rhs = self.cols;
        let mut d = cost.to_vec();
        for (row, &bj) in self.tab.iter().zip(&self.basis) {
            let cb = cost[bj];
            if cb != 0.0 {
                for (dj, t) in d.iter_mut().zip(row) {
                    *dj -= cb * t;
                }
            }
        }
        let mut is_basic = vec![false; self.cols];
        for &j in &self.basis {
            is_basic[j] = true;
        }
        loop {
            // Bland: lowest-index improving column
            let Some(enter) = (0..allowed).find(|&j| !is_basic[j] && d[j] < -tol.optimality) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            let threshold = tol.pivot * self.col_scale[enter];
            for i in 0..self.rows {
                let a = self.tab[i][enter];
                if a <= threshold {
                    continue;
                }
                let ratio = self.tab[i][rhs].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                        if ratio < best && !tie || tie && self.basis[i] < self.basis[k] {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
            let Some((row, _)) = leave else {
                return Ok(false);
            };
            if self.iterations >= tol.max_iterations {
                return Err(LpError::IterationLimit(tol.max_iterations));
            }
            self.iterations += 1;
            is_basic[self.basis[row]] = false;
            is_basic[enter] = true;
            self.pivot(row, enter);
            let factor = d[enter];
            for (dj, t) in d.iter_mut().zip(&self.tab[row]) {
                *dj -= factor * t;
            }
            d[enter] = 0.0;
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tab[row][col];
        self.tab[row].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.tab[row].clone();
        for (i, r) in self.tab.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Pivot basic artificials (all at zero after phase 1) out of the basis
    /// where a real column allows it; rows where none does are redundant.
    fn drive_out_artificials(&mut self, tol: &Tolerances) {
        for i in 0..self.rows {
            if self.basis[i] < self.real_cols {
                continue;
            }
            let best = (0..self.real_cols)
                .filter(|j| !self.basis.contains(j))
                .map(|j| (j, self.tab[i][j].abs()))
                .filter(|&(j, v)| v > tol.pivot * self.col_scale[j])
                .max_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((j, _)) = best {
                self.pivot(i, j);
            }
        }
    }

    /// Recompute basic values and reduced costs from the original columns.
    fn refine(&self, cost: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let m = self.rows;
        let tableau_values = || {
            let mut v = vec![0.0; self.cols];
            for (row, &j) in self.tab.iter().zip(&self.basis) {
                v[j] = row[self.cols];
            }
            v
        };
        let tableau_reduced = || {
            let mut d = cost[..self.real_cols].to_vec();
            for (row, &bj) in self.tab.iter().zip(&self.basis) {
                for (dj, t) in d.iter_mut().zip(row) {
                    *dj -= cost[bj] * t;
                }
            }
            d
        };
        let basis_matrix: Vec<Vec<f64>> =
            (0..m).map(|i| self.basis.iter().map(|&j| self.a[i][j]).collect()).collect();
        let Some(lu) = Lu::factor(basis_matrix) else {
            return (tableau_values(), tableau_reduced());
        };
        // Rows of very different magnitude (a large finite upper bound next to
        // unit-scale rows) cost digits in the elimination; iterative
        // refinement against the original rows wins them back.
        let mut xb = lu.solve(&self.b);
        for _ in 0..2 {
            let residual: Vec<f64> = (0..m)
                .map(|i| self.b[i] - self.basis.iter().zip(&xb).map(|(&j, v)| self.a[i][j] * v).sum::<f64>())
                .collect();
            let correction = lu.solve(&residual);
            xb.iter_mut().zip(correction).for_each(|(v, c)| *v += c);
        }
        let cb: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
        let y = lu.solve_transposed(&cb);
        let mut values = vec![0.0; self.cols];
        for (&j, v) in self.basis.iter().zip(xb) {
            values[j] = v;
        }
        let reduced = (0..self.real_cols)
            .map(|j| cost[j] - (0..m).map(|i| y[i] * self.a[i][j]).sum::<f64>())
            .collect();
        (values, reduced)
    }
}

/// Dense LU with partial pivoting, `P A = L U`.
struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Option<Self> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
            if a[p][k].abs() < 1e-14 {
                return None;
            }
            a.swap(k, p);
            perm.swap(k, p);
            let (upper, lower) = a.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower {
                let f = row[k] / pivot_row[k];
                row[k] = f;
                for (v, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *v -= f * p;
                }
            }
        }
        Some(Self { lu: a, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[i][j] * x[j];
            }
            x[i] /= self.lu[i][i];
        }
        x
    }

    /// Solves `A' y = c`.
    fn solve_transposed(&self, c: &[f64]) -> Vec<f64> {
        let n = self.lu.len();
        // U' z = c
        let mut z = c.to_vec();
        for i in 0..n {
            for j in 0..i {
                z[i] -= self.lu[j][i] * z[j];
            }
            z[i] /= self.lu[i][i];
        }
        // L' w = z
        for i in (0..n).rev() {
            for j in i + 1..n {
                z[i] -= self.lu[j][i] * z[j];
            }
        }
        let mut y = vec![0.0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            y[p] = z[k];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(sense: Sense, cost: Vec<f64>) -> LpProblem {
        LpProblem::new(Objective { sense, cost })
    }

    #[test]
    fn single_binding_bound() {
        let mut p = single(Sense::Minimize, vec![1.0]);
        p.add_constraint(vec![1.0], Relation::Ge, 3.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x.unwrap()[0] - 3.0).abs() < 1e-12);
        assert!((s.objective.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_feasible_set() {
        let mut p = single(Sense::Minimize, vec![0.0]);
        p.add_constraint(vec![1.0], Relation::Le, -1.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(s.x.is_none() && s.objective.is_none());
    }

    #[test]
    fn two_variable_max() {
        let mut p = single(Sense::Maximize, vec![1.0, 1.0]);
        p.add_constraint(vec![1.0, 1.0], Relation::Le, 4.0);
        p.add_constraint(vec![1.0, 0.0], Relation::Le, 3.0);
        let s = solve(&p).unwrap();
        assert!((s.objective.unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_ray() {
        let mut p = single(Sense::Maximize, vec![1.0, 0.0]);
        p.add_constraint(vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn bounds_are_honoured() {
        let mut p = single(Sense::Maximize, vec![1.0, 2.0]);
        p.add_constraint(vec![1.0, 1.0], Relation::Le, 10.0);
        p.set_bounds(0, 1.0, Some(2.0)).set_bounds(1, -3.0, Some(4.0));
        let s = solve(&p).unwrap();
        let x = s.x.unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 4.0).abs() < 1e-12);

        let mut q = single(Sense::Minimize, vec![0.0, 1.0]);
        q.add_constraint(vec![1.0, 1.0], Relation::Ge, -10.0);
        q.set_bounds(1, -3.0, None);
        let s = solve(&q).unwrap();
        assert!((s.x.unwrap()[1] + 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed_problems() {
        let mut p = single(Sense::Minimize, vec![1.0, 1.0]);
        p.add_constraint(vec![1.0], Relation::Ge, 1.0);
        assert!(matches!(solve(&p), Err(LpError::DimensionMismatch(_))));

        let mut p = single(Sense::Minimize, vec![1.0]);
        p.add_constraint(vec![f64::NAN], Relation::Ge, 1.0);
        assert_eq!(solve(&p), Err(LpError::NonFinite));

        let mut p = single(Sense::Minimize, vec![1.0]);
        p.set_bounds(0, 2.0, Some(1.0));
        assert!(matches!(solve(&p), Err(LpError::InvalidBounds { var: 0, .. })));
    }

    #[test]
    fn redundant_equalities() {
        let mut p = single(Sense::Minimize, vec![1.0, 2.0]);
        p.add_constraint(vec![1.0, 1.0], Relation::Eq, 2.0);
        p.add_constraint(vec![2.0, 2.0], Relation::Eq, 4.0);
        let s = solve(&p).unwrap();
        assert!((s.objective.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lexicographic_identical_costs_match_plain_solve() {
        let mut p = single(Sense::Maximize, vec![3.0, 2.0]);
        p.add_constraint(vec![1.0, 1.0], Relation::Le, 4.0);
        p.add_constraint(vec![1.0, 3.0], Relation::Le, 6.0);
        let plain = solve(&p).unwrap();
        let lex = solve_lexicographic(&p, &p.objective, &p.objective).unwrap();
        assert!((plain.objective.unwrap() - lex.objective.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn lexicographic_breaks_ties() {
        // min x + y over x + y >= 2, then max x: picks (2, 0)
        let mut p = single(Sense::Minimize, vec![1.0, 1.0]);
        p.add_constraint(vec![1.0, 1.0], Relation::Ge, 2.0);
        p.add_constraint(vec![1.0, 0.0], Relation::Le, 5.0);
        let s = solve_lexicographic(&p, &Objective::minimize(vec![1.0, 1.0]), &Objective::maximize(vec![1.0, 0.0]))
            .unwrap();
        let x = s.x.unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12 && x[1].abs() < 1e-12);
    }

    #[test]
    fn lexicographic_unbounded_secondary() {
        // min y with y >= 0 free x: secondary max x is unbounded
        let mut p = single(Sense::Minimize, vec![0.0, 1.0]);
        p.add_constraint(vec![0.0, 1.0], Relation::Ge, 0.0);
        let s = solve_lexicographic(&p, &Objective::minimize(vec![0.0, 1.0]), &Objective::maximize(vec![1.0, 0.0]))
            .unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the largest-coefficient rule.
        let mut p = single(Sense::Minimize, vec![-0.75, 150.0, -0.02, 6.0]);
        p.add_constraint(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0);
        p.add_constraint(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0);
        p.add_constraint(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective.unwrap() + 0.05).abs() < 1e-12);
    }

    fn feasible_lp() -> impl Strategy<Value = LpProblem> {
        (1usize..5, 1usize..5).prop_flat_map(|(n, r)| {
            (
                prop::collection::vec(0.0f64..100.0, n),
                prop::collection::vec(prop::collection::vec(0.0f64..100.0, n), r),
                prop::collection::vec(0.0f64..10.0, n),
                prop::collection::vec(0u8..3, r),
            )
                .prop_map(move |(cost, rows, x0, kinds)| {
                    let mut p = LpProblem::new(Objective::minimize(cost));
                    for (row, k) in rows.into_iter().zip(kinds) {
                        let lhs: f64 = row.iter().zip(&x0).map(|(a, v)| a * v).sum();
                        match k {
                            0 => p.add_constraint(row, Relation::Le, lhs + 1.0),
                            1 => p.add_constraint(row, Relation::Ge, (lhs - 1.0).max(0.0)),
                            _ => p.add_constraint(row, Relation::Eq, lhs),
                        };
                    }
                    p
                })
        })
    }

    proptest! {
        #[test]
        fn optimal_points_are_feasible_and_certified(p in feasible_lp()) {
            let s = solve(&p).unwrap();
            prop_assert_eq!(s.status, LpStatus::Optimal);
            let x = s.x.as_ref().unwrap();
            prop_assert!(p.max_violation(x) <= 1e-9);
            prop_assert!((p.objective.value(x) - s.objective.unwrap()).abs() <= 1e-9);
            let cert = s.certificate.unwrap();
            prop_assert!(cert.reduced_costs.iter().all(|&d| d >= -1e-9));
        }

        #[test]
        fn row_scaling_preserves_optimum(p in feasible_lp(), k in 0.01f64..100.0) {
            let base = solve(&p).unwrap().objective.unwrap();
            let mut q = p.clone();
            q.rows[0].iter_mut().for_each(|v| *v *= k);
            q.rhs[0] *= k;
            let scaled = solve(&q).unwrap().objective.unwrap();
            prop_assert!((base - scaled).abs() <= 1e-7 * (1.0 + base.abs()));
        }

        #[test]
        fn lexicographic_keeps_primary_optimum(p in feasible_lp(), sec in prop::collection::vec(-5.0f64..5.0, 4)) {
            let n = p.num_vars();
            let secondary = Objective::maximize(sec[..n.min(4)].to_vec());
            let plain = solve(&p).unwrap().objective.unwrap();
            let lex = solve_lexicographic(&p, &p.objective, &secondary).unwrap();
            if let Some(x) = lex.x {
                prop_assert!((p.objective.value(&x) - plain).abs() <= 1e-9 * (1.0 + plain.abs()));
            }
        }
    }
}
