//! The global reference set of a unit with positive optimal slacks: every
//! efficient unit that takes part in some BCC projection, and the interior
//! projection point they generate.

use dea_rts::rts::{interior_projection, RtsAnalysis};
use dea_rts::{fixture, DmuGroup, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixture::six_units();
    let analysis = RtsAnalysis::new(&data, Tolerances::default())?;
    for o in 0..data.len() {
        if analysis.group(o) != DmuGroup::PositiveSlackInefficient {
            continue;
        }
        let me = analysis.maximal_element(o)?;
        let members: Vec<String> =
            me.weights().iter().map(|&(j, w)| format!("{} ({:.4})", data.name(j), w)).collect();
        let point = interior_projection(&me, &data);
        println!("{}: {{{}}}", data.name(o), members.join(", "));
        println!("   interior projection {:?}/{:?}", point.inputs, point.outputs);
    }
    Ok(())
}
