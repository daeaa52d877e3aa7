//! Reading a dataset from CSV text and writing the full report in each
//! output format. The same code path backs the `dea-rts` binary.

use dea_rts::io::{parse_csv, parse_report_csv, render_report, Format};
use dea_rts::rts::RtsAnalysis;
use dea_rts::Tolerances;

const PLANTS: &str = "\
dmu,in:labour,in:capital,out:tonnes
north,12,40,30
south,8,25,20
east,20,60,34
west,10,30,26
harbour,15,35,28
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = parse_csv(PLANTS)?;
    println!("inputs {:?}, outputs {:?}", table.input_labels, table.output_labels);
    let data = table.into_dataset()?;
    let results = RtsAnalysis::new(&data, Tolerances::default())?.classify_all(true);

    print!("{}", render_report(&results, Format::Table));
    let csv = render_report(&results, Format::Csv);
    println!("\n{csv}");
    let parsed = parse_report_csv(&csv)?;
    println!("parsed back {} records; first is {} ({:?})", parsed.len(), parsed[0].dmu, parsed[0].rts);
    let json = render_report(&results[..1], Format::Json);
    println!("\n{json}");
    Ok(())
}
