#![allow(dead_code)]

use dea_rts::lp::{self, LpProblem, LpStatus, Objective, Relation};
use dea_rts::models::{BoundDirection, Dataset, Point};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Small integer-valued dataset: ties and weakly efficient units are common,
/// which is what exercises the positive-slack path.
pub fn random_dataset(rng: &mut ChaCha8Rng) -> Dataset {
    let n = rng.gen_range(2..=8);
    let m = rng.gen_range(1..=3);
    let s = rng.gen_range(1..=3);
    let names = (0..n).map(|j| format!("U{j}")).collect();
    let xs = (0..n).map(|_| (0..m).map(|_| rng.gen_range(1..=9) as f64).collect()).collect();
    let ys = (0..n).map(|_| (0..s).map(|_| rng.gen_range(1..=9) as f64).collect()).collect();
    Dataset::new(names, xs, ys).unwrap()
}

/// One element of the set of intensity vectors over `efficient` whose BCC
/// projections of `target` use the optimal slack sum, picked by maximizing a
/// random objective. Built directly from the projection-set equations,
/// independent of the maximal-element model.
pub fn projection_set_vertex(
    dataset: &Dataset,
    efficient: &[usize],
    target: &Point,
    theta_bcc: f64,
    slack_sum: f64,
    weights: &[f64],
) -> Option<Vec<f64>> {
    let (e, m, s) = (efficient.len(), dataset.num_inputs(), dataset.num_outputs());
    let vars = e + m + s;
    let mut cost = vec![0.0; vars];
    cost[..e].copy_from_slice(weights);
    let mut p = LpProblem::new(Objective::maximize(cost));
    for i in 0..m {
        let mut row = vec![0.0; vars];
        for (k, &j) in efficient.iter().enumerate() {
            row[k] = dataset.unit(j).inputs[i];
        }
        row[e + i] = 1.0;
        p.add_constraint(row, Relation::Eq, theta_bcc * target.inputs[i]);
    }
    for r in 0..s {
        let mut row = vec![0.0; vars];
        for (k, &j) in efficient.iter().enumerate() {
            row[k] = dataset.unit(j).outputs[r];
        }
        row[e + m + r] = -1.0;
        p.add_constraint(row, Relation::Eq, target.outputs[r]);
    }
    let mut conv = vec![0.0; vars];
    conv[..e].iter_mut().for_each(|v| *v = 1.0);
    p.add_constraint(conv, Relation::Eq, 1.0);
    let mut slack = vec![1.0; vars];
    slack[..e].iter_mut().for_each(|v| *v = 0.0);
    p.add_constraint(slack, Relation::Eq, slack_sum);
    let sol = lp::solve(&p).ok()?;
    (sol.status == LpStatus::Optimal).then(|| sol.x.unwrap()[..e].to_vec())
}

/// Checks that `weights` over `efficient` generate a BCC projection of
/// `target`: returns the largest violation of the projection-set equations.
pub fn projection_set_residual(
    dataset: &Dataset,
    efficient: &[usize],
    weights: &[f64],
    target: &Point,
    theta_bcc: f64,
    slack_sum: f64,
) -> f64 {
    let p = dataset.combination(efficient, weights);
    let input_slacks: Vec<f64> = (0..dataset.num_inputs()).map(|i| theta_bcc * target.inputs[i] - p.inputs[i]).collect();
    let output_slacks: Vec<f64> = (0..dataset.num_outputs()).map(|r| p.outputs[r] - target.outputs[r]).collect();
    let negative = input_slacks.iter().chain(&output_slacks).map(|v| -v).fold(0.0, f64::max);
    let total: f64 = input_slacks.iter().chain(&output_slacks).sum();
    let convexity = (weights.iter().sum::<f64>() - 1.0).abs();
    let negative_weight = weights.iter().map(|w| -w).fold(0.0, f64::max);
    negative.max((total - slack_sum).abs()).max(convexity).max(negative_weight)
}

/// Min and max of the intensity sum over the CCR optimum face, with no side
/// constraint. Straight from the envelopment rows.
pub fn ccr_intensity_range(dataset: &Dataset, target: &Point, theta: f64) -> (f64, f64) {
    let n = dataset.len();
    let solve = |direction: BoundDirection| {
        let obj = match direction {
            BoundDirection::Lower => Objective::minimize(vec![1.0; n]),
            BoundDirection::Upper => Objective::maximize(vec![1.0; n]),
        };
        let mut p = LpProblem::new(obj);
        for i in 0..dataset.num_inputs() {
            p.add_constraint(dataset.units().iter().map(|u| u.inputs[i]).collect(), Relation::Le, theta * target.inputs[i]);
        }
        for r in 0..dataset.num_outputs() {
            p.add_constraint(dataset.units().iter().map(|u| u.outputs[r]).collect(), Relation::Ge, target.outputs[r]);
        }
        lp::solve(&p).unwrap().objective.unwrap()
    };
    (solve(BoundDirection::Lower), solve(BoundDirection::Upper))
}

/// Textbook graphical method for `max c'x, A x <= b, x >= 0` in two variables:
/// enumerate every intersection of two boundary lines (axes included) and
/// keep the best feasible one.
pub fn graphical_max(c: [f64; 2], rows: &[([f64; 2], f64)]) -> Option<f64> {
    let mut lines: Vec<([f64; 2], f64)> = rows.to_vec();
    lines.push(([1.0, 0.0], 0.0));
    lines.push(([0.0, 1.0], 0.0));
    let mut best: Option<f64> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let ([a1, b1], r1) = lines[i];
            let ([a2, b2], r2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (r1 * b2 - r2 * b1) / det;
            let y = (a1 * r2 - a2 * r1) / det;
            let feasible = x >= -1e-9 && y >= -1e-9 && rows.iter().all(|([a, b], r)| a * x + b * y <= r + 1e-9);
            if feasible {
                let v = c[0] * x + c[1] * y;
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Distance from `p` to the segment `[a, b]` (max-norm of the residual at the
/// best Euclidean parameter).
pub fn distance_to_segment(p: &Point, a: &Point, b: &Point) -> f64 {
    let flat = |q: &Point| q.inputs.iter().chain(&q.outputs).copied().collect::<Vec<f64>>();
    let (p, a, b) = (flat(p), flat(a), flat(b));
    let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| y - x).collect();
    let dd: f64 = d.iter().map(|v| v * v).sum();
    let t = if dd == 0.0 { 0.0 } else { (p.iter().zip(&a).zip(&d).map(|((p, a), d)| (p - a) * d).sum::<f64>() / dd).clamp(0.0, 1.0) };
    p.iter().zip(&a).zip(&d).map(|((p, a), d)| (p - a - t * d).abs()).fold(0.0, f64::max)
}
