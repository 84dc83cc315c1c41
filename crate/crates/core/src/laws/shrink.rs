//! Counterexample minimization.
//!
//! Two reductions are tried until neither applies: dropping a label from the
//! universe (earliest label first), then merging two distinct grade values
//! into one. Among several successful merges, the one whose witness tuple
//! comes first in enumeration order wins.

use std::cmp::Ordering;

use super::check::{Counterexample, LawVerdict, VerdictResult};
use crate::error::{Error, Result};
use crate::grade::MembershipGrade;
use crate::process::FuzzyProcess;

/// Shrinks a valid counterexample. Returns it unchanged when no reduction
/// preserves the failure; fails with `StaleCounterexample` if the input does
/// not reproduce.
pub fn shrink_counterexample(cex: &Counterexample) -> Result<Counterexample> {
    if !cex.validates() {
        return Err(Error::StaleCounterexample);
    }
    let mut current = cex.clone();
    loop {
        if let Some(next) = drop_one_label(&current)? {
            current = next;
            continue;
        }
        if let Some(next) = merge_two_grades(&current)? {
            current = next;
            continue;
        }
        return Ok(current);
    }
}

/// Shrinks the counterexample inside a verdict.
pub fn shrink_verdict(verdict: &LawVerdict) -> Result<LawVerdict> {
    match &verdict.result {
        VerdictResult::Verified { .. } => Err(Error::NothingToShrink),
        VerdictResult::Counterexample(cex) => Ok(LawVerdict {
            result: VerdictResult::Counterexample(shrink_counterexample(cex)?),
            ..verdict.clone()
        }),
    }
}

fn with_witnesses(cex: &Counterexample, witnesses: Vec<FuzzyProcess>) -> Result<Option<Counterexample>> {
    let refs: Vec<&FuzzyProcess> = witnesses.iter().collect();
    Ok(cex.law.evaluate(cex.mode, &refs)?.map(|violation| Counterexample {
        witnesses,
        violation,
        ..cex.clone()
    }))
}

fn drop_one_label(cex: &Counterexample) -> Result<Option<Counterexample>> {
    let n = cex.witnesses[0].universe().len();
    if n <= 1 {
        return Ok(None);
    }
    for skip in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
        let witnesses = cex
            .witnesses
            .iter()
            .map(|w| w.restrict(&keep))
            .collect::<Result<Vec<_>>>()?;
        if let Some(candidate) = with_witnesses(cex, witnesses)? {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

fn merge_two_grades(cex: &Counterexample) -> Result<Option<Counterexample>> {
    let used = distinct_grades(&cex.witnesses);
    let mut best: Option<Counterexample> = None;
    for &from in &used {
        for &to in &used {
            if from == to {
                continue;
            }
            let witnesses: Vec<FuzzyProcess> = cex
                .witnesses
                .iter()
                .map(|w| w.map_grades(|g| if g == from { to } else { g }))
                .collect();
            if !witnesses.iter().all(FuzzyProcess::is_blocking_free) {
                continue;
            }
            if let Some(candidate) = with_witnesses(cex, witnesses)? {
                best = Some(earliest(best, candidate));
            }
        }
    }
    Ok(best)
}

/// Every grade occurring in the witnesses, zero included.
pub fn distinct_grades(witnesses: &[FuzzyProcess]) -> Vec<MembershipGrade> {
    let mut grades: Vec<MembershipGrade> = witnesses
        .iter()
        .flat_map(|w| w.delta().as_slice().iter().chain(w.gamma().as_slice()).copied())
        .collect();
    grades.sort();
    grades.dedup();
    grades
}

/// Enumeration order on tuples over one universe: witness by witness, label
/// by label, comparing `(delta, gamma)` lexicographically.
fn tuple_order(a: &[FuzzyProcess], b: &[FuzzyProcess]) -> Ordering {
    let key = |t: &[FuzzyProcess]| -> Vec<(MembershipGrade, MembershipGrade)> {
        t.iter()
            .flat_map(|w| (0..w.universe().len()).map(move |i| w.grades_at(i)))
            .collect()
    };
    key(a).cmp(&key(b))
}

fn earliest(best: Option<Counterexample>, candidate: Counterexample) -> Counterexample {
    match best {
        Some(b) if tuple_order(&b.witnesses, &candidate.witnesses) != Ordering::Greater => b,
        _ => candidate,
    }
}
