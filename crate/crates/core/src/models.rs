//! Envelopment-form DEA models: CCR, BCC, the maximal-element model used to
//! identify the global reference set, and the intensity-sum bound model used
//! for the nearest most productive scale size.
//!
//! All models are input oriented. Intensities always range over the observed
//! units of the [`Dataset`], while the evaluated [`Point`] may be any point,
//! observed or synthetic.

use std::collections::HashSet;

use crate::error::DeaError;
use crate::lp::{self, LpProblem, LpSolution, LpStatus, Objective, Relation, Simplex};

/// Numerical thresholds used across the models and the classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub lp: lp::Tolerances,
    /// `theta >= 1 - classification` counts as one, slack sums and
    /// `|lambda_sum - 1|` at or below it count as zero.
    pub classification: f64,
    /// Intensities above this are part of a support.
    pub support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { lp: lp::Tolerances::default(), classification: 1e-6, support: 1e-7 }
    }
}

impl Tolerances {
    fn simplex(&self) -> Simplex {
        Simplex::new(self.lp)
    }
}

/// An input/output bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
}

impl Point {
    pub fn new(inputs: Vec<f64>, outputs: Vec<f64>) -> Self {
        Self { inputs, outputs }
    }

    /// Multiplies inputs by `input_factor` and outputs by `output_factor`.
    pub fn scaled(&self, input_factor: f64, output_factor: f64) -> Self {
        Self {
            inputs: self.inputs.iter().map(|v| v * input_factor).collect(),
            outputs: self.outputs.iter().map(|v| v * output_factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        self.inputs
            .iter()
            .zip(&other.inputs)
            .chain(self.outputs.iter().zip(&other.outputs))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Observed units: `n` named DMUs with `m` inputs and `s` outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    units: Vec<Point>,
    m: usize,
    s: usize,
}

impl Dataset {
    /// `inputs[j]` and `outputs[j]` are the input and output vectors of DMU `j`.
    pub fn new(names: Vec<String>, inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<Self, DeaError> {
        let n = names.len();
        if n == 0 {
            return Err(DeaError::InvalidDataset("empty dataset".into()));
        }
        if inputs.len() != n || outputs.len() != n {
            return Err(DeaError::InvalidDataset(format!(
                "{} names but {} input and {} output vectors",
                n,
                inputs.len(),
                outputs.len()
            )));
        }
        let m = inputs[0].len();
        let s = outputs[0].len();
        if m == 0 || s == 0 {
            return Err(DeaError::InvalidDataset("need at least one input and one output".into()));
        }
        let mut seen = HashSet::new();
        for (j, name) in names.iter().enumerate() {
            if !seen.insert(name.as_str()) {
                return Err(DeaError::InvalidDataset(format!("duplicate DMU name {name:?}")));
            }
            if inputs[j].len() != m || outputs[j].len() != s {
                return Err(DeaError::InvalidDataset(format!("DMU {name:?} has inconsistent dimensions")));
            }
            let all = inputs[j].iter().chain(&outputs[j]);
            if let Some(v) = all.clone().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(DeaError::InvalidDataset(format!("DMU {name:?} has invalid value {v}")));
            }
            if !inputs[j].iter().any(|&v| v > 0.0) {
                return Err(DeaError::InvalidDataset(format!("DMU {name:?} has no positive input")));
            }
            if !outputs[j].iter().any(|&v| v > 0.0) {
                return Err(DeaError::InvalidDataset(format!("DMU {name:?} has no positive output")));
            }
        }
        let units = inputs.into_iter().zip(outputs).map(|(x, y)| Point::new(x, y)).collect();
        Ok(Self { names, units, m, s })
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.m
    }

    pub fn num_outputs(&self) -> usize {
        self.s
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unit(&self, j: usize) -> &Point {
        &self.units[j]
    }

    pub fn units(&self) -> &[Point] {
        &self.units
    }

    /// A copy with one extra unit appended.
    pub fn with_unit(&self, name: impl Into<String>, point: Point) -> Result<Self, DeaError> {
        let mut names = self.names.clone();
        names.push(name.into());
        let (mut xs, mut ys): (Vec<_>, Vec<_>) = self.units.iter().map(|p| (p.inputs.clone(), p.outputs.clone())).unzip();
        xs.push(point.inputs);
        ys.push(point.outputs);
        Self::new(names, xs, ys)
    }

    /// A copy restricted to the given unit indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, DeaError> {
        let names = indices.iter().map(|&j| self.names[j].clone()).collect();
        let xs = indices.iter().map(|&j| self.units[j].inputs.clone()).collect();
        let ys = indices.iter().map(|&j| self.units[j].outputs.clone()).collect();
        Self::new(names, xs, ys)
    }

    /// A copy with every input row scaled by `input_factors[i]` and every
    /// output row by `output_factors[r]`.
    pub fn rescaled(&self, input_factors: &[f64], output_factors: &[f64]) -> Result<Self, DeaError> {
        let xs = self
            .units
            .iter()
            .map(|p| p.inputs.iter().zip(input_factors).map(|(v, k)| v * k).collect())
            .collect();
        let ys = self
            .units
            .iter()
            .map(|p| p.outputs.iter().zip(output_factors).map(|(v, k)| v * k).collect())
            .collect();
        Self::new(self.names.clone(), xs, ys)
    }

    /// `(sum_j w_j x_j, sum_j w_j y_j)` over the listed units.
    pub fn combination(&self, indices: &[usize], weights: &[f64]) -> Point {
        let mut p = Point::new(vec![0.0; self.m], vec![0.0; self.s]);
        for (&j, &w) in indices.iter().zip(weights) {
            for (acc, v) in p.inputs.iter_mut().zip(&self.units[j].inputs) {
                *acc += w * v;
            }
            for (acc, v) in p.outputs.iter_mut().zip(&self.units[j].outputs) {
                *acc += w * v;
            }
        }
        p
    }

    fn check_target(&self, target: &Point) -> Result<(), DeaError> {
        if target.inputs.len() != self.m || target.outputs.len() != self.s {
            return Err(DeaError::DimensionMismatch(format!(
                "target has {} inputs and {} outputs, dataset has {} and {}",
                target.inputs.len(),
                target.outputs.len(),
                self.m,
                self.s
            )));
        }
        if target.inputs.iter().chain(&target.outputs).any(|v| !v.is_finite() || *v < 0.0) {
            return Err(DeaError::InvalidTarget("components must be finite and nonnegative".into()));
        }
        if !target.inputs.iter().any(|&v| v > 0.0) {
            return Err(DeaError::InvalidTarget("no strictly positive input".into()));
        }
        Ok(())
    }
}

/// One radial envelopment solve.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyOutcome {
    pub theta: f64,
    pub lambda: Vec<f64>,
    pub input_slacks: Vec<f64>,
    pub output_slacks: Vec<f64>,
    pub slack_sum: f64,
    pub lambda_sum: f64,
    pub is_efficient: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Ccr,
    Bcc,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Ccr => "CCR",
            Model::Bcc => "BCC",
        }
    }
}

/// CCR (constant returns) envelopment model for `target`.
pub fn ccr_evaluate(dataset: &Dataset, target: &Point, tol: &Tolerances) -> Result<EfficiencyOutcome, DeaError> {
    radial_evaluate(dataset, target, Model::Ccr, tol)
}

/// BCC (variable returns) envelopment model for `target`.
pub fn bcc_evaluate(dataset: &Dataset, target: &Point, tol: &Tolerances) -> Result<EfficiencyOutcome, DeaError> {
    radial_evaluate(dataset, target, Model::Bcc, tol)
}

fn status_error(solution: &LpSolution, model: &'static str) -> Result<Vec<f64>, DeaError> {
    match solution.status {
        LpStatus::Optimal => Ok(solution.x.clone().expect("optimal solutions carry a point")),
        LpStatus::Infeasible => Err(DeaError::Infeasible { model }),
        LpStatus::Unbounded => Err(DeaError::Unbounded { model }),
    }
}

/// Minimizes theta, then maximizes the total slack with theta held at its
/// optimum. Variables are laid out as `[theta, lambda(n), s-(m), s+(s)]`.
pub fn radial_evaluate(
    dataset: &Dataset,
    target: &Point,
    model: Model,
    tol: &Tolerances,
) -> Result<EfficiencyOutcome, DeaError> {
    dataset.check_target(target)?;
    let (n, m, s) = (dataset.len(), dataset.num_inputs(), dataset.num_outputs());
    let vars = 1 + n + m + s;
    let lam = |j: usize| 1 + j;
    let sm = |i: usize| 1 + n + i;
    let sp = |r: usize| 1 + n + m + r;

    let mut primary = vec![0.0; vars];
    primary[0] = 1.0;
    let mut secondary = vec![0.0; vars];
    secondary[1 + n..].iter_mut().for_each(|c| *c = 1.0);

    let mut p = LpProblem::new(Objective::minimize(primary.clone()));
    for i in 0..m {
        let mut row = vec![0.0; vars];
        row[0] = -target.inputs[i];
        for j in 0..n {
            row[lam(j)] = dataset.unit(j).inputs[i];
        }
        row[sm(i)] = 1.0;
        p.add_constraint(row, Relation::Eq, 0.0);
    }
    for r in 0..s {
        let mut row = vec![0.0; vars];
        for j in 0..n {
            row[lam(j)] = dataset.unit(j).outputs[r];
        }
        row[sp(r)] = -1.0;
        p.add_constraint(row, Relation::Eq, target.outputs[r]);
    }
    if model == Model::Bcc {
        let mut row = vec![0.0; vars];
        (0..n).for_each(|j| row[lam(j)] = 1.0);
        p.add_constraint(row, Relation::Eq, 1.0);
    }

    let solution = tol.simplex().solve_lexicographic(
        &p,
        &Objective::minimize(primary),
        &Objective::maximize(secondary),
    )?;
    let x = status_error(&solution, model.name())?;

    let theta = x[0];
    let lambda: Vec<f64> = (0..n).map(|j| x[lam(j)]).collect();
    let input_slacks: Vec<f64> = (0..m).map(|i| x[sm(i)]).collect();
    let output_slacks: Vec<f64> = (0..s).map(|r| x[sp(r)]).collect();
    let slack_sum = input_slacks.iter().chain(&output_slacks).sum::<f64>();
    let lambda_sum = lambda.iter().sum::<f64>();
    let is_efficient = theta >= 1.0 - tol.classification && slack_sum <= tol.classification;
    Ok(EfficiencyOutcome { theta, lambda, input_slacks, output_slacks, slack_sum, lambda_sum, is_efficient })
}

/// A maximal element of the set of intensity vectors (over the BCC-efficient
/// units) that generate the target's BCC projections.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalElementOutcome {
    /// Dataset indices of the BCC-efficient units, aligned with `mu_max`.
    pub efficient: Vec<usize>,
    pub mu_max: Vec<f64>,
    pub delta1: f64,
    pub delta2: f64,
    /// Dataset indices `j` with `mu_max_j > support tolerance`.
    pub support: Vec<usize>,
}

impl MaximalElementOutcome {
    /// `(dataset index, weight)` for every support unit.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        self.efficient
            .iter()
            .zip(&self.mu_max)
            .filter(|(j, _)| self.support.contains(j))
            .map(|(&j, &w)| (j, w))
            .collect()
    }
}

pub const DELTA2_CAP: f64 = 1e6;

/// Builds and solves the maximal-element model for `target` and normalizes
/// its optimum into `mu_max = (mu1 + mu2) / (1 + delta2)` (computed as
/// `delta1 + delta2` in the denominator, which is the same at `delta1 = 1`).
///
/// `theta_bcc` and `slack_sum_star` must come from the same
/// [`bcc_evaluate`] call on `target`.
pub fn solve_maximal_element(
    dataset: &Dataset,
    efficient: &[usize],
    target: &Point,
    theta_bcc: f64,
    slack_sum_star: f64,
    tol: &Tolerances,
) -> Result<MaximalElementOutcome, DeaError> {
    solve_maximal_element_capped(dataset, efficient, target, theta_bcc, slack_sum_star, DELTA2_CAP, tol)
}

/// [`solve_maximal_element`] with an explicit cap on `delta2`.
pub fn solve_maximal_element_capped(
    dataset: &Dataset,
    efficient: &[usize],
    target: &Point,
    theta_bcc: f64,
    slack_sum_star: f64,
    delta2_cap: f64,
    tol: &Tolerances,
) -> Result<MaximalElementOutcome, DeaError> {
    dataset.check_target(target)?;
    if efficient.is_empty() {
        return Err(DeaError::InvalidDataset("empty efficient set".into()));
    }
    if let Some(&j) = efficient.iter().find(|&&j| j >= dataset.len()) {
        return Err(DeaError::IndexOutOfRange(j));
    }
    let (e, m, s) = (efficient.len(), dataset.num_inputs(), dataset.num_outputs());
    // [mu1(e), mu2(e), s-(m), s+(s), delta1, delta2]
    let vars = 2 * e + m + s + 2;
    let mu1 = |k: usize| k;
    let mu2 = |k: usize| e + k;
    let sm = |i: usize| 2 * e + i;
    let sp = |r: usize| 2 * e + m + r;
    let d1 = 2 * e + m + s;
    let d2 = d1 + 1;

    let mut cost = vec![0.0; vars];
    (0..e).for_each(|k| cost[mu1(k)] = 1.0);
    cost[d1] = 1.0;
    let mut p = LpProblem::new(Objective::maximize(cost));
    (0..e).for_each(|k| {
        p.set_bounds(mu1(k), 0.0, Some(1.0));
    });
    p.set_bounds(d1, 0.0, Some(1.0));
    p.set_bounds(d2, 0.0, Some(delta2_cap));

    let scaled_row = |coeffs: &dyn Fn(usize) -> f64, rhs: f64| {
        let mut row = vec![0.0; vars];
        for k in 0..e {
            row[mu1(k)] = coeffs(k);
            row[mu2(k)] = coeffs(k);
        }
        row[d1] = -rhs;
        row[d2] = -rhs;
        row
    };
    for i in 0..m {
        let mut row = scaled_row(&|k| dataset.unit(efficient[k]).inputs[i], theta_bcc * target.inputs[i]);
        row[sm(i)] = 1.0;
        p.add_constraint(row, Relation::Eq, 0.0);
    }
    for r in 0..s {
        let mut row = scaled_row(&|k| dataset.unit(efficient[k]).outputs[r], target.outputs[r]);
        row[sp(r)] = -1.0;
        p.add_constraint(row, Relation::Eq, 0.0);
    }
    p.add_constraint(scaled_row(&|_| 1.0, 1.0), Relation::Eq, 0.0);
    let mut row = scaled_row(&|_| 0.0, slack_sum_star);
    (0..m).for_each(|i| row[sm(i)] = 1.0);
    (0..s).for_each(|r| row[sp(r)] = 1.0);
    p.add_constraint(row, Relation::Eq, 0.0);

    let solution = tol.simplex().solve(&p)?;
    let x = status_error(&solution, "maximal-element")?;
    let (delta1, delta2) = (x[d1], x[d2]);
    if delta1 < 1.0 - tol.classification {
        return Err(DeaError::InconsistentMaximalElement { delta1 });
    }
    if delta2 >= delta2_cap * (1.0 - 1e-9) {
        return Err(DeaError::ScaleCapBinding { cap: delta2_cap });
    }
    // Every row is homogenized by delta1 + delta2; dividing by that rather
    // than 1 + delta2 (equal at delta1 = 1) keeps the rows exact in floating point.
    let scale = delta1 + delta2;
    let mu_max: Vec<f64> = (0..e).map(|k| (x[mu1(k)] + x[mu2(k)]) / scale).collect();
    let support = efficient
        .iter()
        .zip(&mu_max)
        .filter(|(_, &w)| w > tol.support)
        .map(|(&j, _)| j)
        .collect();
    Ok(MaximalElementOutcome { efficient: efficient.to_vec(), mu_max, delta1, delta2, support })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDirection {
    /// minimize the intensity sum subject to `sum >= 1`
    Lower,
    /// maximize the intensity sum subject to `sum <= 1`
    Upper,
}

impl BoundDirection {
    pub fn name(self) -> &'static str {
        match self {
            BoundDirection::Lower => "lower",
            BoundDirection::Upper => "upper",
        }
    }
}

/// Optimal intensity sum over the CCR optimum face of `target`, restricted to
/// one side of 1.
pub fn intensity_sum_bound(
    dataset: &Dataset,
    target: &Point,
    theta_ccr: f64,
    direction: BoundDirection,
    tol: &Tolerances,
) -> Result<f64, DeaError> {
    dataset.check_target(target)?;
    let n = dataset.len();
    let objective = match direction {
        BoundDirection::Lower => Objective::minimize(vec![1.0; n]),
        BoundDirection::Upper => Objective::maximize(vec![1.0; n]),
    };
    let mut p = LpProblem::new(objective);
    for i in 0..dataset.num_inputs() {
        let row = dataset.units().iter().map(|u| u.inputs[i]).collect();
        p.add_constraint(row, Relation::Le, theta_ccr * target.inputs[i]);
    }
    for r in 0..dataset.num_outputs() {
        let row = dataset.units().iter().map(|u| u.outputs[r]).collect();
        p.add_constraint(row, Relation::Ge, target.outputs[r]);
    }
    let side = match direction {
        BoundDirection::Lower => Relation::Ge,
        BoundDirection::Upper => Relation::Le,
    };
    p.add_constraint(vec![1.0; n], side, 1.0);

    let solution = tol.simplex().solve(&p)?;
    match solution.status {
        LpStatus::Optimal => Ok(solution.objective.expect("optimal solutions carry an objective")),
        LpStatus::Infeasible => Err(DeaError::WrongDirection { direction: direction.name() }),
        LpStatus::Unbounded => Err(DeaError::Unbounded { model: "intensity-sum bound" }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn unit(name: &str) -> Point {
        let d = fixture::six_units();
        d.unit(d.index_of(name).unwrap()).clone()
    }

    #[test]
    fn ccr_scores_of_efficient_units() {
        let d = fixture::six_units();
        let a = ccr_evaluate(&d, &unit("A"), &tol()).unwrap();
        assert!((a.theta - 0.5).abs() < 1e-9);
        assert!(a.lambda_sum < 1.0);
        let b = ccr_evaluate(&d, &unit("B"), &tol()).unwrap();
        assert!((b.theta - 1.0).abs() < 1e-9);
        // weakly efficient: 2/3 of C uses the same first input and 4/3 less of the second
        assert!((b.slack_sum - 4.0 / 3.0).abs() < 1e-9 && !b.is_efficient);
        let c = ccr_evaluate(&d, &unit("C"), &tol()).unwrap();
        assert!(c.slack_sum.abs() < 1e-9 && c.is_efficient);
    }

    #[test]
    fn ccr_at_interior_point_of_ab() {
        // first-input row binds: 4a + 6c = 3 with 2a + 3c = 1.5
        let d = fixture::six_units();
        let o = ccr_evaluate(&d, &Point::new(vec![4.0, 1.5], vec![1.5]), &tol()).unwrap();
        assert!((o.theta - 0.75).abs() < 1e-9);
        assert!(o.lambda_sum >= 0.5 - 1e-9 && o.lambda_sum <= 0.65625 + 1e-9);
    }

    #[test]
    fn single_unit_self_evaluation() {
        let d = Dataset::new(vec!["U".into()], vec![vec![3.0, 2.0]], vec![vec![5.0]]).unwrap();
        for model in [Model::Ccr, Model::Bcc] {
            let o = radial_evaluate(&d, d.unit(0), model, &tol()).unwrap();
            assert!((o.theta - 1.0).abs() < 1e-12);
            assert!((o.lambda[0] - 1.0).abs() < 1e-12);
            assert!(o.is_efficient);
        }
    }

    #[test]
    fn bcc_six_unit_scores() {
        let d = fixture::six_units();
        let expect = [("A", 1.0, 0.0), ("B", 1.0, 0.0), ("C", 1.0, 0.0), ("D", 2.0 / 3.0, 0.0), ("E", 1.0, 1.0), ("F", 2.0 / 3.0, 2.0)];
        for (name, theta, slack) in expect {
            let o = bcc_evaluate(&d, &unit(name), &tol()).unwrap();
            assert!((o.theta - theta).abs() < 1e-9, "{name}: theta {}", o.theta);
            assert!((o.slack_sum - slack).abs() < 1e-9, "{name}: slack {}", o.slack_sum);
            assert!((o.lambda_sum - 1.0).abs() < 1e-9);
            assert_eq!(o.is_efficient, ["A", "B", "C"].contains(&name));
        }
    }

    #[test]
    fn outcome_satisfies_model_rows() {
        let d = fixture::six_units();
        for target in d.units() {
            for model in [Model::Ccr, Model::Bcc] {
                let o = radial_evaluate(&d, target, model, &tol()).unwrap();
                let proj = d.combination(&(0..d.len()).collect::<Vec<_>>(), &o.lambda);
                for i in 0..2 {
                    assert!((proj.inputs[i] + o.input_slacks[i] - o.theta * target.inputs[i]).abs() < 1e-9);
                }
                assert!((proj.outputs[0] - o.output_slacks[0] - target.outputs[0]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn external_point_outside_hull_is_diagnosed() {
        let d = Dataset::new(vec!["U".into()], vec![vec![1.0]], vec![vec![1.0, 0.0]]).unwrap();
        let err = ccr_evaluate(&d, &Point::new(vec![1.0], vec![1.0, 1.0]), &tol()).unwrap_err();
        assert_eq!(err, DeaError::Infeasible { model: "CCR" });
        let err = ccr_evaluate(&d, &Point::new(vec![1.0], vec![1.0]), &tol()).unwrap_err();
        assert!(matches!(err, DeaError::DimensionMismatch(_)));
        let err = ccr_evaluate(&d, &Point::new(vec![0.0], vec![1.0, 0.0]), &tol()).unwrap_err();
        assert!(matches!(err, DeaError::InvalidTarget(_)));
    }

    #[test]
    fn dataset_validation() {
        let ok = |n: Vec<&str>, x: Vec<Vec<f64>>, y: Vec<Vec<f64>>| {
            Dataset::new(n.into_iter().map(String::from).collect(), x, y)
        };
        assert!(ok(vec![], vec![], vec![]).is_err());
        assert!(ok(vec!["a", "a"], vec![vec![1.0], vec![1.0]], vec![vec![1.0], vec![1.0]]).is_err());
        assert!(ok(vec!["a"], vec![vec![-1.0]], vec![vec![1.0]]).is_err());
        assert!(ok(vec!["a"], vec![vec![0.0]], vec![vec![1.0]]).is_err());
        assert!(ok(vec!["a"], vec![vec![1.0]], vec![vec![0.0]]).is_err());
        assert!(ok(vec!["a"], vec![vec![f64::INFINITY]], vec![vec![1.0]]).is_err());
        assert!(ok(vec!["a", "b"], vec![vec![1.0], vec![1.0, 2.0]], vec![vec![1.0], vec![1.0]]).is_err());
        assert!(ok(vec!["a"], vec![vec![1.0]], vec![vec![1.0]]).is_ok());
    }

    #[test]
    fn maximal_element_supports() {
        let d = fixture::six_units();
        let eff = vec![0, 1, 2];
        for (name, support) in [("E", vec![0, 1]), ("F", vec![0, 2]), ("B", vec![1])] {
            let o = bcc_evaluate(&d, &unit(name), &tol()).unwrap();
            let me = solve_maximal_element(&d, &eff, &unit(name), o.theta, o.slack_sum, &tol()).unwrap();
            assert_eq!(me.support, support, "{name}");
            assert!((me.mu_max.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!((me.delta1 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn maximal_element_is_accurate_despite_large_cap() {
        // the cap row is six orders of magnitude above the others
        let d = fixture::six_units();
        let o = bcc_evaluate(&d, &unit("E"), &tol()).unwrap();
        let me = solve_maximal_element(&d, &[0, 1, 2], &unit("E"), o.theta, o.slack_sum, &tol()).unwrap();
        for (got, want) in me.mu_max.iter().zip([0.5, 0.5, 0.0]) {
            assert!((got - want).abs() < 1e-14, "{:?}", me.mu_max);
        }
    }

    #[test]
    fn maximal_element_cap_is_not_binding() {
        let d = fixture::six_units();
        let eff = vec![0, 1, 2];
        for name in ["D", "E", "F"] {
            let o = bcc_evaluate(&d, &unit(name), &tol()).unwrap();
            let a = solve_maximal_element(&d, &eff, &unit(name), o.theta, o.slack_sum, &tol()).unwrap();
            let b = solve_maximal_element_capped(&d, &eff, &unit(name), o.theta, o.slack_sum, 10.0 * DELTA2_CAP, &tol())
                .unwrap();
            assert_eq!(a.support, b.support);
            let pa = d.combination(&a.efficient, &a.mu_max);
            let pb = d.combination(&b.efficient, &b.mu_max);
            assert!(pa.max_abs_diff(&pb) < 1e-6 || a.mu_max.iter().zip(&b.mu_max).all(|(x, y)| (x - y).abs() < 1e-6));
        }
    }

    #[test]
    fn maximal_element_rejects_mismatched_inputs() {
        // slack sum larger than any achievable one: only the zero solution remains
        let d = fixture::six_units();
        let err = solve_maximal_element(&d, &[0, 1, 2], &unit("E"), 1.0, 5.0, &tol()).unwrap_err();
        assert!(matches!(err, DeaError::InconsistentMaximalElement { .. }));
    }

    #[test]
    fn intensity_sum_bounds() {
        let d = fixture::six_units();
        let up = intensity_sum_bound(&d, &unit("A"), 0.5, BoundDirection::Upper, &tol()).unwrap();
        assert!((up - 0.375).abs() < 1e-9);
        let err = intensity_sum_bound(&d, &unit("A"), 0.5, BoundDirection::Lower, &tol()).unwrap_err();
        assert_eq!(err, DeaError::WrongDirection { direction: "lower" });

        let p = Point::new(vec![4.0, 1.5], vec![1.5]);
        let up = intensity_sum_bound(&d, &p, 0.75, BoundDirection::Upper, &tol()).unwrap();
        assert!((up - 0.65625).abs() < 1e-9);

        for dir in [BoundDirection::Lower, BoundDirection::Upper] {
            let v = intensity_sum_bound(&d, &unit("C"), 1.0, dir, &tol()).unwrap();
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn bcc_dominates_ccr() {
        let d = fixture::six_units();
        for u in d.units() {
            let c = ccr_evaluate(&d, u, &tol()).unwrap().theta;
            let b = bcc_evaluate(&d, u, &tol()).unwrap().theta;
            assert!(b >= c - 1e-9);
        }
    }
}
