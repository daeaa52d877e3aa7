//! Returns-to-scale classification of every unit, including the units whose
//! BCC projection is not unique.

use dea_rts::rts::{classify_at_point, RtsAnalysis};
use dea_rts::{fixture, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixture::six_units();
    let analysis = RtsAnalysis::new(&data, Tolerances::default())?;
    for r in analysis.classify_all(false) {
        let point = r.evaluation_point.as_ref().unwrap();
        println!(
            "{}: {:<10} evaluated at {:?}/{:?} ({:?}), theta_ccr = {:.4}, sum lambda = {:.4}",
            r.dmu,
            r.rts.map(|c| c.name()).unwrap_or("?"),
            point.inputs,
            point.outputs,
            r.projection,
            r.theta_ccr.unwrap(),
            r.lambda_sum.unwrap(),
        );
    }

    // E can be projected onto B, but B is not where E's returns are decided.
    let b = data.unit(data.index_of("B").unwrap());
    let at_b = classify_at_point(&data, b, analysis.tolerances())?;
    println!("classifying E at the vertex B instead would give: {}", at_b.rts.name());
    Ok(())
}
