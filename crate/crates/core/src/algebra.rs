//! Composition operators on fuzzy processes.
//!
//! `product` composes devices and `sum` composes environments; `meet` and
//! `join` are choices between devices and between environments; `reflect`
//! swaps the device and environment views. The four binary operators require
//! blocking-free operands over the same universe and always return a
//! blocking-free process.

use crate::classify::{class_at, ExecutionClass};
use crate::error::Result;
use crate::grade::MembershipGrade;
use crate::process::{same_universe, FuzzyProcess};

fn check_operands(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<()> {
    same_universe(p, q)?;
    p.ensure_blocking_free()?;
    q.ensure_blocking_free()
}

/// Grade on the "composed" channel of product/sum, which gets the cross
/// regions where one operand escapes and the other rejects.
///
/// `own` is the channel being built (gamma for product, delta for sum),
/// `other` the opposite one. On the shared region both operands carry the
/// channel and the result is their minimum. On an escape/reject crossing the
/// result is the minimum of the escaping side's gamma and the rejecting
/// side's delta.
fn crossed_grade(p: &FuzzyProcess, q: &FuzzyProcess, i: usize, own_is_gamma: bool) -> MembershipGrade {
    use ExecutionClass::*;
    let (dp, gp) = p.grades_at(i);
    let (dq, gq) = q.grades_at(i);
    let (own_p, own_q) = if own_is_gamma { (gp, gq) } else { (dp, dq) };
    match (class_at(p, i), class_at(q, i)) {
        _ if own_p.is_positive() && own_q.is_positive() => own_p.min(own_q),
        (Escape, Reject) => gp.min(dq),
        (Reject, Escape) => gq.min(dp),
        _ => MembershipGrade::ZERO,
    }
}

/// Grade on the "intersected" channel: positive only where both operands
/// carry it.
fn shared_grade(a: MembershipGrade, b: MembershipGrade) -> MembershipGrade {
    if a.is_positive() && b.is_positive() {
        a.min(b)
    } else {
        MembershipGrade::ZERO
    }
}

/// `p ⊗ q`.
pub fn product(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<FuzzyProcess> {
    check_operands(p, q)?;
    let n = p.universe().len();
    let delta = (0..n)
        .map(|i| shared_grade(p.delta().grade_at(i), q.delta().grade_at(i)))
        .collect();
    let gamma = (0..n).map(|i| crossed_grade(p, q, i, true)).collect();
    Ok(FuzzyProcess::from_dense(p.universe(), delta, gamma))
}

/// `p ⊕ q`.
pub fn sum(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<FuzzyProcess> {
    check_operands(p, q)?;
    let n = p.universe().len();
    let delta = (0..n).map(|i| crossed_grade(p, q, i, false)).collect();
    let gamma = (0..n)
        .map(|i| shared_grade(p.gamma().grade_at(i), q.gamma().grade_at(i)))
        .collect();
    Ok(FuzzyProcess::from_dense(p.universe(), delta, gamma))
}

fn pointwise(
    p: &FuzzyProcess,
    q: &FuzzyProcess,
    on_delta: fn(MembershipGrade, MembershipGrade) -> MembershipGrade,
    on_gamma: fn(MembershipGrade, MembershipGrade) -> MembershipGrade,
) -> Result<FuzzyProcess> {
    check_operands(p, q)?;
    let zip = |a: &[MembershipGrade], b: &[MembershipGrade], f: fn(_, _) -> _| {
        a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
    };
    Ok(FuzzyProcess::from_dense(
        p.universe(),
        zip(p.delta().as_slice(), q.delta().as_slice(), on_delta),
        zip(p.gamma().as_slice(), q.gamma().as_slice(), on_gamma),
    ))
}

/// `p ⊓ q`: pointwise max of delta, min of gamma.
pub fn meet(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<FuzzyProcess> {
    pointwise(p, q, Ord::max, Ord::min)
}

/// `p ⊔ q`: pointwise min of delta, max of gamma.
pub fn join(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<FuzzyProcess> {
    pointwise(p, q, Ord::min, Ord::max)
}

/// `-p`: the channels swapped.
pub fn reflect(p: &FuzzyProcess) -> FuzzyProcess {
    FuzzyProcess::from_dense(
        p.universe(),
        p.gamma().as_slice().to_vec(),
        p.delta().as_slice().to_vec(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Product,
    Sum,
    Meet,
    Join,
}

impl BinaryOp {
    pub fn apply(self, p: &FuzzyProcess, q: &FuzzyProcess) -> Result<FuzzyProcess> {
        match self {
            BinaryOp::Product => product(p, q),
            BinaryOp::Sum => sum(p, q),
            BinaryOp::Meet => meet(p, q),
            BinaryOp::Join => join(p, q),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Product => "*",
            BinaryOp::Sum => "+",
            BinaryOp::Meet => "&",
            BinaryOp::Join => "|",
        }
    }
}
