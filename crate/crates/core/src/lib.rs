//! Fuzzy process contracts over finite execution universes.
//!
//! A [`FuzzyProcess`] pairs an accessibility subset (what the device may do)
//! with an acceptability subset (what the environment tolerates). The crate
//! provides the composition operators, the refinement order, a finite-scope
//! checker for the algebraic laws, and a small scripting language.

pub mod algebra;
pub mod cli;
pub mod classify;
pub mod error;
pub mod grade;
pub mod lang;
pub mod laws;
pub mod process;
pub mod universe;

pub use algebra::{join, meet, product, reflect, sum, BinaryOp};
pub use classify::{classify, execution_flags, process_flags, Classification, ExecutionClass, ExecutionFlags, ProcessFlags};
pub use error::{Error, Result};
pub use grade::MembershipGrade;
pub use process::{
    bottom, constant, equal, first_difference, make_process, omega, refinement_failure, refines, top,
    BlockingPolicy, Constant, EqualityMode, FuzzySubset, FuzzyProcess,
};
pub use universe::Universe;
