//! Radial efficiency under constant (CCR) and variable (BCC) returns to scale,
//! with the second-stage slacks and the resulting BCC projection.

use dea_rts::models::{bcc_evaluate, ccr_evaluate};
use dea_rts::rts::{assign_group, bcc_projection};
use dea_rts::{fixture, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixture::six_units();
    let tol = Tolerances::default();
    println!("{:<4} {:>8} {:>8} {:>10}  {:<8} BCC projection", "DMU", "CCR", "BCC", "slack sum", "group");
    for (j, unit) in data.units().iter().enumerate() {
        let ccr = ccr_evaluate(&data, unit, &tol)?;
        let bcc = bcc_evaluate(&data, unit, &tol)?;
        let projection = bcc_projection(unit, &bcc, &tol)?;
        println!(
            "{:<4} {:>8.4} {:>8.4} {:>10.4}  {:<8} {:?} -> {:?}",
            data.name(j),
            ccr.theta,
            bcc.theta,
            bcc.slack_sum,
            assign_group(&bcc, &tol).name(),
            projection.inputs,
            projection.outputs,
        );
    }
    Ok(())
}
