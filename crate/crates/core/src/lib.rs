//! A bin-packing toolkit built around a linear-time heuristic that classifies
//! items into ten weight deciles and matches complementary ranges.
//!
//! The crate bundles:
//!
//! * [`ranger`] — the decile-range matching heuristic as an explicit state
//!   machine with an injectable draw strategy and a full event trace;
//! * [`baselines`] — first-fit-decreasing and best-fit-decreasing for
//!   comparison;
//! * [`oracle`] — an exact branch-and-bound optimum for small instances and
//!   cheap lower bounds for everything else;
//! * [`generators`] — instance families with certified optima, including the
//!   adversarial complement family that drives the heuristic to exactly 3/2
//!   times the optimum;
//! * [`io`] — the instance text format and CSV/JSON result records;
//! * [`batch`] — ordered parallel evaluation of independent runs (rayon,
//!   behind the default `parallel` feature).
//!
//! All weights are exact rationals `size / capacity` over integers; there is
//! no floating-point mode, so decile boundaries and fit checks never suffer
//! rounding.

pub mod baselines;
pub mod batch;
pub mod generators;
pub mod io;
pub mod model;
pub mod oracle;
pub mod ranger;

pub use model::{
    range_index, validate_solution, Bin, CompositeItem, Instance, InstanceError, Item,
    RangeBuckets, Solution, SolutionStats, ValidationReport, Violation,
};
pub use ranger::{pack, pack_with_trace, ProbeStrategy, State, TraceEvent};
