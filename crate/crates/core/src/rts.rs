//! Returns-to-scale classification of every unit in a dataset.
//!
//! Stage 1 screens each unit with the BCC model and sorts it into one of
//! three groups. BCC-efficient units are evaluated as they are. Inefficient
//! units with zero optimal slack have a unique BCC projection and are
//! evaluated there. Inefficient units with positive optimal slack may have
//! many projections, so they are evaluated at the point generated by a
//! maximal element of their projection set, which lies in the relative
//! interior of the minimum face; every relative-interior point of that face
//! has the same class of returns to scale.
//!
//! Stage 2 reads the class off a single CCR solve at the evaluation point:
//! constant if the CCR score is one, otherwise decreasing or increasing
//! according to whether the optimal intensity sum is above or below one. The
//! sign of `sum(lambda) - 1` is the same for every CCR optimum at a
//! BCC-efficient point, so one optimum is enough.
//!
//! Stage 3 (optional) computes the nearest most productive scale size.

use std::fmt;

use rayon::prelude::*;

use crate::error::DeaError;
use crate::models::{
    bcc_evaluate, ccr_evaluate, intensity_sum_bound, solve_maximal_element, BoundDirection, Dataset,
    EfficiencyOutcome, MaximalElementOutcome, Point, Tolerances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RtsClass {
    Constant,
    Increasing,
    Decreasing,
}

impl RtsClass {
    /// One-letter code: `C`, `I` or `D`.
    pub fn code(self) -> &'static str {
        match self {
            RtsClass::Constant => "C",
            RtsClass::Increasing => "I",
            RtsClass::Decreasing => "D",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RtsClass::Constant => "constant",
            RtsClass::Increasing => "increasing",
            RtsClass::Decreasing => "decreasing",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "constant" | "C" => Some(RtsClass::Constant),
            "increasing" | "I" => Some(RtsClass::Increasing),
            "decreasing" | "D" => Some(RtsClass::Decreasing),
            _ => None,
        }
    }
}

impl fmt::Display for RtsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DmuGroup {
    BccEfficient,
    /// BCC-inefficient with zero optimal slack sum.
    ZeroSlackInefficient,
    /// BCC-inefficient with positive optimal slack sum.
    PositiveSlackInefficient,
}

impl DmuGroup {
    pub fn name(self) -> &'static str {
        match self {
            DmuGroup::BccEfficient => "efficient",
            DmuGroup::ZeroSlackInefficient => "G1",
            DmuGroup::PositiveSlackInefficient => "G2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "efficient" => Some(DmuGroup::BccEfficient),
            "G1" => Some(DmuGroup::ZeroSlackInefficient),
            "G2" => Some(DmuGroup::PositiveSlackInefficient),
            _ => None,
        }
    }
}

/// Which point a unit was classified at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionKind {
    /// the observed unit itself
    Observed,
    /// `(theta * x - s-, y + s+)` from the BCC solve
    Bcc,
    /// the maximal-element combination of the global reference set
    Interior,
}

impl ProjectionKind {
    pub fn name(self) -> &'static str {
        match self {
            ProjectionKind::Observed => "observed",
            ProjectionKind::Bcc => "bcc",
            ProjectionKind::Interior => "interior",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "observed" => Some(ProjectionKind::Observed),
            "bcc" => Some(ProjectionKind::Bcc),
            "interior" => Some(ProjectionKind::Interior),
            _ => None,
        }
    }
}

/// Per-unit classification record.
///
/// Stage-2 and stage-3 fields are `None` only when that stage failed, in
/// which case `diagnostics` says why. The `grs` weights are one maximal
/// element among possibly many: the set of names is unique, the weights are
/// a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct RtsResult {
    pub dmu: String,
    pub index: usize,
    pub group: DmuGroup,
    pub theta_bcc: f64,
    pub slack_sum: f64,
    pub projection: ProjectionKind,
    pub evaluation_point: Option<Point>,
    pub theta_ccr: Option<f64>,
    pub lambda_sum: Option<f64>,
    pub rts: Option<RtsClass>,
    pub grs: Vec<(String, f64)>,
    pub nearest_mpss: Option<Point>,
    pub diagnostics: Vec<String>,
}

/// BCC-efficient units plus the stage-1 outcome of every unit.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficientSet {
    pub indices: Vec<usize>,
    pub outcomes: Vec<EfficiencyOutcome>,
}

impl EfficientSet {
    pub fn contains(&self, j: usize) -> bool {
        self.indices.contains(&j)
    }
}

/// Solves the BCC model once per unit and collects the efficient ones.
pub fn efficient_set(dataset: &Dataset, tol: &Tolerances) -> Result<EfficientSet, DeaError> {
    let outcomes = dataset
        .units()
        .iter()
        .map(|u| bcc_evaluate(dataset, u, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let indices = outcomes.iter().enumerate().filter(|(_, o)| o.is_efficient).map(|(j, _)| j).collect();
    Ok(EfficientSet { indices, outcomes })
}

pub fn assign_group(outcome: &EfficiencyOutcome, tol: &Tolerances) -> DmuGroup {
    if outcome.is_efficient {
        DmuGroup::BccEfficient
    } else if outcome.slack_sum <= tol.classification {
        DmuGroup::ZeroSlackInefficient
    } else {
        DmuGroup::PositiveSlackInefficient
    }
}

/// `(theta * x - s-, y + s+)`.
pub fn bcc_projection(target: &Point, outcome: &EfficiencyOutcome, tol: &Tolerances) -> Result<Point, DeaError> {
    let inputs: Vec<f64> = target
        .inputs
        .iter()
        .zip(&outcome.input_slacks)
        .map(|(x, s)| outcome.theta * x - s)
        .collect();
    let outputs: Vec<f64> = target.outputs.iter().zip(&outcome.output_slacks).map(|(y, s)| y + s).collect();
    let mut point = Point::new(inputs, outputs);
    for (index, v) in point.inputs.iter_mut().chain(point.outputs.iter_mut()).enumerate() {
        if *v < -tol.classification {
            return Err(DeaError::NegativeProjection { index, value: *v });
        }
        *v = v.max(0.0);
    }
    Ok(point)
}

/// `(X_E mu_max, Y_E mu_max)`.
pub fn interior_projection(mu_max: &MaximalElementOutcome, dataset: &Dataset) -> Point {
    dataset.combination(&mu_max.efficient, &mu_max.mu_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointClassification {
    pub rts: RtsClass,
    pub theta_ccr: f64,
    pub lambda_sum: f64,
}

/// Classifies a BCC-efficient point from one CCR solve.
pub fn classify_at_point(dataset: &Dataset, point: &Point, tol: &Tolerances) -> Result<PointClassification, DeaError> {
    let ccr = ccr_evaluate(dataset, point, tol)?;
    let (theta, lambda_sum) = (ccr.theta, ccr.lambda_sum);
    let rts = if theta >= 1.0 - tol.classification {
        RtsClass::Constant
    } else if lambda_sum > 1.0 + tol.classification {
        RtsClass::Decreasing
    } else if lambda_sum < 1.0 - tol.classification {
        RtsClass::Increasing
    } else {
        return Err(DeaError::AmbiguousClassification { theta, lambda_sum });
    };
    Ok(PointClassification { rts, theta_ccr: theta, lambda_sum })
}

/// Nearest most productive scale size of `point`:
/// `(theta * x, y) / sum(lambda*)` with `lambda*` the extreme intensity sum
/// on the correct side of one. Constant points are their own MPSS.
pub fn nearest_mpss(
    dataset: &Dataset,
    point: &Point,
    theta_ccr: f64,
    rts: RtsClass,
    tol: &Tolerances,
) -> Result<Point, DeaError> {
    let direction = match rts {
        RtsClass::Constant => return Ok(point.clone()),
        RtsClass::Increasing => BoundDirection::Upper,
        RtsClass::Decreasing => BoundDirection::Lower,
    };
    let sum = intensity_sum_bound(dataset, point, theta_ccr, direction, tol)?;
    Ok(point.scaled(theta_ccr / sum, 1.0 / sum))
}

/// Stage-1 results for a dataset, reused across per-unit classifications.
#[derive(Debug, Clone)]
pub struct RtsAnalysis<'a> {
    dataset: &'a Dataset,
    tol: Tolerances,
    efficient: EfficientSet,
    verify_projections: bool,
}

impl<'a> RtsAnalysis<'a> {
    pub fn new(dataset: &'a Dataset, tol: Tolerances) -> Result<Self, DeaError> {
        let efficient = efficient_set(dataset, &tol)?;
        Ok(Self { dataset, tol, efficient, verify_projections: false })
    }

    /// Re-solve the BCC model at every projected evaluation point and record a
    /// diagnostic if it is not efficient. Costs one extra LP per inefficient unit.
    pub fn verify_projections(mut self, yes: bool) -> Self {
        self.verify_projections = yes;
        self
    }

    pub fn dataset(&self) -> &Dataset {
        self.dataset
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn efficient(&self) -> &EfficientSet {
        &self.efficient
    }

    pub fn group(&self, o: usize) -> DmuGroup {
        assign_group(&self.efficient.outcomes[o], &self.tol)
    }

    /// Maximal element of unit `o`'s projection set.
    pub fn maximal_element(&self, o: usize) -> Result<MaximalElementOutcome, DeaError> {
        if o >= self.dataset.len() {
            return Err(DeaError::IndexOutOfRange(o));
        }
        let bcc = &self.efficient.outcomes[o];
        solve_maximal_element(
            self.dataset,
            &self.efficient.indices,
            self.dataset.unit(o),
            bcc.theta,
            bcc.slack_sum,
            &self.tol,
        )
    }

    pub fn classify_dmu(&self, o: usize, with_mpss: bool) -> Result<RtsResult, DeaError> {
        if o >= self.dataset.len() {
            return Err(DeaError::IndexOutOfRange(o));
        }
        let (result, status) = self.run(o, with_mpss);
        status.map(|_| result)
    }

    /// One record per unit in dataset order. Failures after stage 1 are
    /// reported in the record's diagnostics instead of aborting the batch.
    pub fn classify_all(&self, with_mpss: bool) -> Vec<RtsResult> {
        (0..self.dataset.len())
            .into_par_iter()
            .map(|o| {
                let (mut result, status) = self.run(o, with_mpss);
                if let Err(e) = status {
                    result.diagnostics.push(format!("error: {e}"));
                }
                result
            })
            .collect()
    }

    fn run(&self, o: usize, with_mpss: bool) -> (RtsResult, Result<(), DeaError>) {
        let dataset = self.dataset;
        let bcc = &self.efficient.outcomes[o];
        let group = self.group(o);
        let unit = dataset.unit(o);
        let mut result = RtsResult {
            dmu: dataset.name(o).to_string(),
            index: o,
            group,
            theta_bcc: bcc.theta,
            slack_sum: bcc.slack_sum,
            projection: ProjectionKind::Observed,
            evaluation_point: None,
            theta_ccr: None,
            lambda_sum: None,
            rts: None,
            grs: Vec::new(),
            nearest_mpss: None,
            diagnostics: Vec::new(),
        };

        let point = match group {
            DmuGroup::BccEfficient => Ok(unit.clone()),
            DmuGroup::ZeroSlackInefficient => {
                result.projection = ProjectionKind::Bcc;
                bcc_projection(unit, bcc, &self.tol)
            }
            DmuGroup::PositiveSlackInefficient => {
                result.projection = ProjectionKind::Interior;
                self.maximal_element(o).map(|me| {
                    result.grs = me.weights().into_iter().map(|(j, w)| (dataset.name(j).to_string(), w)).collect();
                    interior_projection(&me, dataset)
                })
            }
        };
        let point = match point {
            Ok(p) => p,
            Err(e) => return (result, Err(e)),
        };
        result.evaluation_point = Some(point.clone());

        if self.verify_projections && group != DmuGroup::BccEfficient {
            match bcc_evaluate(dataset, &point, &self.tol) {
                Ok(check) if check.is_efficient => {}
                Ok(check) => result.diagnostics.push(format!(
                    "warning: evaluation point is not BCC-efficient (theta {}, slack sum {})",
                    check.theta, check.slack_sum
                )),
                Err(e) => result.diagnostics.push(format!("warning: could not verify evaluation point: {e}")),
            }
        }

        let class = match classify_at_point(dataset, &point, &self.tol) {
            Ok(c) => c,
            Err(e) => return (result, Err(e)),
        };
        result.theta_ccr = Some(class.theta_ccr);
        result.lambda_sum = Some(class.lambda_sum);
        result.rts = Some(class.rts);

        if with_mpss {
            match nearest_mpss(dataset, &point, class.theta_ccr, class.rts, &self.tol) {
                Ok(p) => result.nearest_mpss = Some(p),
                Err(e) => return (result, Err(e)),
            }
        }
        (result, Ok(()))
    }
}

/// Convenience wrapper: runs stage 1 for the whole dataset, then classifies `o`.
pub fn classify_dmu(dataset: &Dataset, o: usize, with_mpss: bool, tol: &Tolerances) -> Result<RtsResult, DeaError> {
    RtsAnalysis::new(dataset, *tol)?.classify_dmu(o, with_mpss)
}

pub fn classify_all(dataset: &Dataset, with_mpss: bool, tol: &Tolerances) -> Result<Vec<RtsResult>, DeaError> {
    Ok(RtsAnalysis::new(dataset, *tol)?.classify_all(with_mpss))
}
