//! The checkable law catalogue: one entry per algebraic identity or order
//! property, each with an arity and a predicate that either holds on a tuple
//! of processes or yields a concrete [`Violation`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::algebra::{join, meet, product, reflect, sum};
use crate::classify::process_flags;
use crate::error::Result;
use crate::process::{
    bottom, first_difference, omega, refinement_failure, top, EqualityMode, FuzzyProcess,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    /// `p * p == p`
    ProductIdempotent,
    /// `p * (q * r) == (p * q) * r`
    ProductAssociative,
    /// `p * q == q * p`
    ProductCommutative,
    /// `p * OMEGA == p`
    ProductIdentity,
    SumIdempotent,
    SumAssociative,
    SumCommutative,
    SumIdentity,
    /// `--p == p`
    ReflectInvolution,
    /// `p <= q` iff `-q <= -p`
    ReflectAntitone,
    /// `p` robust iff `-p` chaotic
    ReflectSwapsRobustChaotic,
    MeetTop,
    JoinTop,
    ProductTop,
    ReflectTop,
    JoinBottom,
    MeetBottom,
    SumBottom,
    ReflectProduct,
    ReflectSum,
    ReflectMeet,
    ReflectJoin,
    OrderReflexive,
    OrderTransitive,
    OrderAntisymmetric,
    OrderBounds,
    LatticeGlb,
    LatticeLub,
    ClosureBlockingFree,
}

use LawId::*;

impl LawId {
    pub const ALL: [LawId; 29] = [
        ProductIdempotent,
        ProductAssociative,
        ProductCommutative,
        ProductIdentity,
        SumIdempotent,
        SumAssociative,
        SumCommutative,
        SumIdentity,
        ReflectInvolution,
        ReflectAntitone,
        ReflectSwapsRobustChaotic,
        MeetTop,
        JoinTop,
        ProductTop,
        ReflectTop,
        JoinBottom,
        MeetBottom,
        SumBottom,
        ReflectProduct,
        ReflectSum,
        ReflectMeet,
        ReflectJoin,
        OrderReflexive,
        OrderTransitive,
        OrderAntisymmetric,
        OrderBounds,
        LatticeGlb,
        LatticeLub,
        ClosureBlockingFree,
    ];

    /// Catalogue identifier, e.g. `P1.ii'` or `ORDER.bounds`.
    pub fn name(self) -> &'static str {
        match self {
            ProductIdempotent => "P1.i",
            ProductAssociative => "P1.ii",
            ProductCommutative => "P1.iii",
            ProductIdentity => "P1.iv",
            SumIdempotent => "P1.i'",
            SumAssociative => "P1.ii'",
            SumCommutative => "P1.iii'",
            SumIdentity => "P1.iv'",
            ReflectInvolution => "P2.i",
            ReflectAntitone => "P2.ii",
            ReflectSwapsRobustChaotic => "P2.iii",
            MeetTop => "P3.i",
            JoinTop => "P3.ii",
            ProductTop => "P3.iii",
            ReflectTop => "P3.iv",
            JoinBottom => "P3.i'",
            MeetBottom => "P3.ii'",
            SumBottom => "P3.iii'",
            ReflectProduct => "P4.i",
            ReflectSum => "P4.ii",
            ReflectMeet => "P4.iii",
            ReflectJoin => "P4.iv",
            OrderReflexive => "ORDER.reflexive",
            OrderTransitive => "ORDER.transitive",
            OrderAntisymmetric => "ORDER.antisymmetric",
            OrderBounds => "ORDER.bounds",
            LatticeGlb => "LATTICE.glb",
            LatticeLub => "LATTICE.lub",
            ClosureBlockingFree => "CLOSURE.blocking_free",
        }
    }

    /// The law written in script syntax.
    pub fn statement(self) -> &'static str {
        match self {
            ProductIdempotent => "p * p == p",
            ProductAssociative => "p * (q * r) == (p * q) * r",
            ProductCommutative => "p * q == q * p",
            ProductIdentity => "p * OMEGA == p",
            SumIdempotent => "p + p == p",
            SumAssociative => "p + (q + r) == (p + q) + r",
            SumCommutative => "p + q == q + p",
            SumIdentity => "p + OMEGA == p",
            ReflectInvolution => "--p == p",
            ReflectAntitone => "p <= q  iff  -q <= -p",
            ReflectSwapsRobustChaotic => "robust(p)  iff  chaotic(-p)",
            MeetTop => "p & TOP == p",
            JoinTop => "p | TOP == TOP",
            ProductTop => "p * TOP == TOP",
            ReflectTop => "-TOP == BOT",
            JoinBottom => "p | BOT == p",
            MeetBottom => "p & BOT == BOT",
            SumBottom => "p + BOT == BOT",
            ReflectProduct => "-(p * q) == -p + -q",
            ReflectSum => "-(p + q) == -p * -q",
            ReflectMeet => "-(p & q) == -p | -q",
            ReflectJoin => "-(p | q) == -p & -q",
            OrderReflexive => "p <= p",
            OrderTransitive => "p <= q, q <= r  implies  p <= r",
            OrderAntisymmetric => "p <= q, q <= p  implies  p == q",
            OrderBounds => "BOT <= p <= TOP",
            LatticeGlb => "p & q is the greatest lower bound of p, q",
            LatticeLub => "p | q is the least upper bound of p, q",
            ClosureBlockingFree => "p * q, p + q, p & q, p | q, -p are blocking-free",
        }
    }

    /// Number of process variables the law quantifies over. Laws about
    /// constants alone still range over one (unused) variable.
    pub fn arity(self) -> usize {
        match self {
            ProductAssociative | SumAssociative | OrderTransitive | LatticeGlb | LatticeLub => 3,
            ProductCommutative | SumCommutative | ReflectAntitone | ReflectProduct | ReflectSum
            | ReflectMeet | ReflectJoin | OrderAntisymmetric | ClosureBlockingFree => 2,
            _ => 1,
        }
    }

    /// Whether the verdict depends on the equality mode. Order, lattice and
    /// closure laws (and the two boolean reflection laws) do not.
    pub fn uses_equality(self) -> bool {
        !matches!(
            self,
            ReflectAntitone
                | ReflectSwapsRobustChaotic
                | OrderReflexive
                | OrderTransitive
                | OrderAntisymmetric
                | OrderBounds
                | LatticeGlb
                | LatticeLub
                | ClosureBlockingFree
        )
    }

    /// Runs the law on `tuple` (length = arity). `Ok(None)` means it holds.
    pub fn evaluate(self, mode: EqualityMode, tuple: &[&FuzzyProcess]) -> Result<Option<Violation>> {
        assert_eq!(tuple.len(), self.arity(), "{} takes {} processes", self.name(), self.arity());
        let p = tuple[0];
        let u = p.universe();
        let eq = |lhs: FuzzyProcess, rhs: FuzzyProcess| Violation::unless_equal(lhs, rhs, mode);
        match self {
            ProductIdempotent => eq(product(p, p)?, p.clone()),
            ProductAssociative => {
                let (q, r) = (tuple[1], tuple[2]);
                eq(product(p, &product(q, r)?)?, product(&product(p, q)?, r)?)
            }
            ProductCommutative => eq(product(p, tuple[1])?, product(tuple[1], p)?),
            ProductIdentity => eq(product(p, &omega(u))?, p.clone()),
            SumIdempotent => eq(sum(p, p)?, p.clone()),
            SumAssociative => {
                let (q, r) = (tuple[1], tuple[2]);
                eq(sum(p, &sum(q, r)?)?, sum(&sum(p, q)?, r)?)
            }
            SumCommutative => eq(sum(p, tuple[1])?, sum(tuple[1], p)?),
            SumIdentity => eq(sum(p, &omega(u))?, p.clone()),
            ReflectInvolution => eq(reflect(&reflect(p)), p.clone()),
            ReflectAntitone => {
                let q = tuple[1];
                let (nq, np) = (reflect(q), reflect(p));
                let direct = refinement_failure(p, q)?;
                let mirrored = refinement_failure(&nq, &np)?;
                Ok(match (direct, mirrored) {
                    (None, Some(i)) => Some(Violation::new(ViolationKind::NotRefined, nq, np, i)),
                    (Some(i), None) => Some(Violation::new(ViolationKind::NotRefined, p.clone(), q.clone(), i)),
                    _ => None,
                })
            }
            ReflectSwapsRobustChaotic => {
                let np = reflect(p);
                if process_flags(p).is_robust == process_flags(&np).is_chaotic {
                    return Ok(None);
                }
                let i = (0..u.len())
                    .find(|&i| p.gamma().grade_at(i).is_one() != np.delta().grade_at(i).is_one())
                    .unwrap_or(0);
                Ok(Some(Violation::new(ViolationKind::FlagMismatch, p.clone(), np, i)))
            }
            MeetTop => eq(meet(p, &top(u))?, p.clone()),
            JoinTop => eq(join(p, &top(u))?, top(u)),
            ProductTop => eq(product(p, &top(u))?, top(u)),
            ReflectTop => eq(reflect(&top(u)), bottom(u)),
            JoinBottom => eq(join(p, &bottom(u))?, p.clone()),
            MeetBottom => eq(meet(p, &bottom(u))?, bottom(u)),
            SumBottom => eq(sum(p, &bottom(u))?, bottom(u)),
            ReflectProduct => {
                let q = tuple[1];
                eq(reflect(&product(p, q)?), sum(&reflect(p), &reflect(q))?)
            }
            ReflectSum => {
                let q = tuple[1];
                eq(reflect(&sum(p, q)?), product(&reflect(p), &reflect(q))?)
            }
            ReflectMeet => {
                let q = tuple[1];
                eq(reflect(&meet(p, q)?), join(&reflect(p), &reflect(q))?)
            }
            ReflectJoin => {
                let q = tuple[1];
                eq(reflect(&join(p, q)?), meet(&reflect(p), &reflect(q))?)
            }
            OrderReflexive => Violation::unless_refines(p, p),
            OrderTransitive => {
                let (q, r) = (tuple[1], tuple[2]);
                if refinement_failure(p, q)?.is_some() || refinement_failure(q, r)?.is_some() {
                    return Ok(None);
                }
                Violation::unless_refines(p, r)
            }
            OrderAntisymmetric => {
                let q = tuple[1];
                if refinement_failure(p, q)?.is_some() || refinement_failure(q, p)?.is_some() {
                    return Ok(None);
                }
                Violation::unless_equal(p.clone(), q.clone(), EqualityMode::ValueLevel)
            }
            OrderBounds => match Violation::unless_refines(&bottom(u), p)? {
                Some(v) => Ok(Some(v)),
                None => Violation::unless_refines(p, &top(u)),
            },
            LatticeGlb => {
                let (q, r) = (tuple[1], tuple[2]);
                let m = meet(p, q)?;
                if let Some(v) = Violation::unless_refines(&m, p)? {
                    return Ok(Some(v));
                }
                if let Some(v) = Violation::unless_refines(&m, q)? {
                    return Ok(Some(v));
                }
                if refinement_failure(r, p)?.is_none() && refinement_failure(r, q)?.is_none() {
                    return Violation::unless_refines(r, &m);
                }
                Ok(None)
            }
            LatticeLub => {
                let (q, r) = (tuple[1], tuple[2]);
                let j = join(p, q)?;
                if let Some(v) = Violation::unless_refines(p, &j)? {
                    return Ok(Some(v));
                }
                if let Some(v) = Violation::unless_refines(q, &j)? {
                    return Ok(Some(v));
                }
                if refinement_failure(p, r)?.is_none() && refinement_failure(q, r)?.is_none() {
                    return Violation::unless_refines(&j, r);
                }
                Ok(None)
            }
            ClosureBlockingFree => {
                let q = tuple[1];
                let results = [product(p, q)?, sum(p, q)?, meet(p, q)?, join(p, q)?, reflect(p)];
                for result in results {
                    if let Some(label) = result.first_blocking() {
                        let i = u.require(label)?;
                        return Ok(Some(Violation::new(ViolationKind::Blocking, result, p.clone(), i)));
                    }
                }
                Ok(None)
            }
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = String;

    /// Accepts the catalogue name; `′` is read as `'`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.trim().replace('′', "'");
        LawId::ALL
            .into_iter()
            .find(|law| law.name() == normalized)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

impl Serialize for LawId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `lhs` and `rhs` differ under the checked equality mode.
    NotEqual,
    /// `lhs` is not refined by `rhs`.
    NotRefined,
    /// `lhs` has a blocking execution; `rhs` is the first operand.
    Blocking,
    /// `lhs` is robust but `rhs` (its reflection) is not chaotic, or vice versa.
    FlagMismatch,
}

/// Concrete evidence that a law failed on one tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub lhs: FuzzyProcess,
    pub rhs: FuzzyProcess,
    /// Label in `lhs`'s universe where the failure shows.
    pub label: String,
}

impl Violation {
    fn new(kind: ViolationKind, lhs: FuzzyProcess, rhs: FuzzyProcess, index: usize) -> Self {
        let label = lhs.universe().label(index).to_string();
        Violation { kind, lhs, rhs, label }
    }

    fn unless_equal(lhs: FuzzyProcess, rhs: FuzzyProcess, mode: EqualityMode) -> Result<Option<Self>> {
        Ok(first_difference(&lhs, &rhs, mode)?
            .map(|i| Violation::new(ViolationKind::NotEqual, lhs, rhs, i)))
    }

    fn unless_refines(lhs: &FuzzyProcess, rhs: &FuzzyProcess) -> Result<Option<Self>> {
        Ok(refinement_failure(lhs, rhs)?
            .map(|i| Violation::new(ViolationKind::NotRefined, lhs.clone(), rhs.clone(), i)))
    }
}
