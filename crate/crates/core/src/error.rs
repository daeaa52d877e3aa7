use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeaError {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid target point: {0}")]
    InvalidTarget(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("{model} model is infeasible for the target; the point is not enveloped by the observed units")]
    Infeasible { model: &'static str },
    #[error("{model} model is unbounded")]
    Unbounded { model: &'static str },
    #[error("maximal-element model has no normalizable optimum (delta1 = {delta1}); BCC score and slack sum must come from the same BCC solve")]
    InconsistentMaximalElement { delta1: f64 },
    #[error("maximal-element scale cap {cap} is binding")]
    ScaleCapBinding { cap: f64 },
    #[error("intensity-sum bound in the {direction} direction is infeasible at this point")]
    WrongDirection { direction: &'static str },
    #[error("ambiguous classification: theta {theta} < 1 but lambda sum {lambda_sum} is within tolerance of 1")]
    AmbiguousClassification { theta: f64, lambda_sum: f64 },
    #[error("projection has negative component {value} at position {index}")]
    NegativeProjection { index: usize, value: f64 },
    #[error("unknown DMU {0:?}")]
    UnknownDmu(String),
    #[error("DMU index {0} out of range")]
    IndexOutOfRange(usize),
}
