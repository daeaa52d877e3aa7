//! Most productive scale size closest to a point: rescale the point along its
//! CCR ray by the extreme intensity sum on the right side of one.

use dea_rts::models::ccr_evaluate;
use dea_rts::rts::{classify_at_point, nearest_mpss};
use dea_rts::{fixture, Point, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixture::six_units();
    let tol = Tolerances::default();
    let points = [
        ("A", data.unit(0).clone()),
        ("E interior", Point::new(vec![4.0, 1.5], vec![1.5])),
        ("C", data.unit(2).clone()),
    ];
    for (label, point) in points {
        let class = classify_at_point(&data, &point, &tol)?;
        let mpss = nearest_mpss(&data, &point, class.theta_ccr, class.rts, &tol)?;
        let check = ccr_evaluate(&data, &mpss, &tol)?;
        println!(
            "{label}: {} -> MPSS {:?}/{:?} (CCR score there {:.4})",
            class.rts.name(),
            mpss.inputs,
            mpss.outputs,
            check.theta
        );
    }
    Ok(())
}
