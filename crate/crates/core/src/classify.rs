//! The four-way split of a universe induced by a process, and the per-execution
//! and per-process flags derived from it.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::process::FuzzyProcess;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecutionClass {
    /// `delta > 0` and `gamma > 0`.
    Goal,
    /// `delta = 0` and `gamma > 0`.
    Escape,
    /// `gamma = 0` and `delta > 0`.
    Reject,
    /// `delta = gamma = 0`.
    Blocking,
}

impl fmt::Display for ExecutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExecutionClass::Goal => "goal",
            ExecutionClass::Escape => "escape",
            ExecutionClass::Reject => "reject",
            ExecutionClass::Blocking => "blocking",
        })
    }
}

/// Label sets in universe order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Classification {
    pub goals: Vec<String>,
    pub escapes: Vec<String>,
    pub rejects: Vec<String>,
    pub blockings: Vec<String>,
    /// `escapes ∪ rejects`.
    pub violations: Vec<String>,
    /// Same as `goals`.
    pub contract_set: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExecutionFlags {
    pub completely_accessible: bool,
    pub completely_acceptable: bool,
    pub class: ExecutionClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProcessFlags {
    /// `gamma = 1` everywhere.
    pub is_robust: bool,
    /// `delta = 1` everywhere.
    pub is_chaotic: bool,
}

pub(crate) fn class_at(p: &FuzzyProcess, index: usize) -> ExecutionClass {
    let (d, g) = p.grades_at(index);
    match (d.is_positive(), g.is_positive()) {
        (true, true) => ExecutionClass::Goal,
        (false, true) => ExecutionClass::Escape,
        (true, false) => ExecutionClass::Reject,
        (false, false) => ExecutionClass::Blocking,
    }
}

pub fn classify(p: &FuzzyProcess) -> Classification {
    let mut out = Classification::default();
    for (i, label) in p.universe().labels().iter().enumerate() {
        let class = class_at(p, i);
        let bucket = match class {
            ExecutionClass::Goal => &mut out.goals,
            ExecutionClass::Escape => &mut out.escapes,
            ExecutionClass::Reject => &mut out.rejects,
            ExecutionClass::Blocking => &mut out.blockings,
        };
        bucket.push(label.clone());
        if matches!(class, ExecutionClass::Escape | ExecutionClass::Reject) {
            out.violations.push(label.clone());
        }
    }
    out.contract_set = out.goals.clone();
    out
}

pub fn execution_flags(p: &FuzzyProcess, label: &str) -> Result<ExecutionFlags> {
    let i = p.universe().require(label)?;
    let (d, g) = p.grades_at(i);
    Ok(ExecutionFlags {
        completely_accessible: d.is_one(),
        completely_acceptable: g.is_one(),
        class: class_at(p, i),
    })
}

pub fn process_flags(p: &FuzzyProcess) -> ProcessFlags {
    ProcessFlags {
        is_robust: p.gamma().as_slice().iter().all(|g| g.is_one()),
        is_chaotic: p.delta().as_slice().iter().all(|g| g.is_one()),
    }
}
