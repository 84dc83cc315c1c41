//! Finite-scope checking of the algebraic laws.
//!
//! Processes are enumerated (or sampled) over a quantized grade grid, every
//! law in the catalogue is evaluated on every tuple, and failures come back
//! as self-validating, shrunk counterexamples.

mod catalogue;
mod check;
mod shrink;
mod space;
mod suite;

pub use catalogue::{LawId, Violation, ViolationKind};
pub use check::{check_law, Checker, Counterexample, LawVerdict, Scope, SearchMode, VerdictResult, DEFAULT_BUDGET};
pub use shrink::{distinct_grades, shrink_counterexample, shrink_verdict};
pub use space::{enumerate_processes, space_size, Grid, ProcessSpace, ENUMERATION_LIMIT};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
