//! The six-unit, two-input, one-output example used throughout the docs,
//! tests and the `demo` command.

use crate::io::parse_csv;
use crate::models::Dataset;

pub const SIX_UNITS_CSV: &str = "\
dmu,in:x1,in:x2,out:y
A,4,1,1
B,4,2,2
C,6,1,3
D,9,1.5,3
E,4,2,1
F,9,1.5,1
";

pub fn six_units() -> Dataset {
    parse_csv(SIX_UNITS_CSV)
        .and_then(|t| t.into_dataset())
        .expect("embedded fixture is valid")
}
