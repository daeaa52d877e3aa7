//! Returns-to-scale measurement in data envelopment analysis.
//!
//! Each decision-making unit (DMU) is screened with the input-oriented BCC
//! model, inefficient units are projected onto the frontier (units with
//! non-zero optimal slacks into the relative interior of their minimum face,
//! through a maximal element of the projection set), and the class of returns
//! to scale is read off a single CCR solve at that point. The nearest most
//! productive scale size can optionally be computed for non-constant units.
//!
//! ```
//! use dea_rts::{fixture, rts::RtsAnalysis, RtsClass, Tolerances};
//!
//! let data = fixture::six_units();
//! let analysis = RtsAnalysis::new(&data, Tolerances::default()).unwrap();
//! let e = analysis.classify_dmu(data.index_of("E").unwrap(), false).unwrap();
//! assert_eq!(e.rts, Some(RtsClass::Increasing));
//! ```

pub mod error;
pub mod fixture;
pub mod io;
pub mod lp;
pub mod models;
pub mod rts;

pub use error::DeaError;
pub use models::{Dataset, EfficiencyOutcome, MaximalElementOutcome, Point, Tolerances};
pub use rts::{DmuGroup, ProjectionKind, RtsClass, RtsResult};
