//! Checking one law at one equality mode over one scope.
//!
//! Tuples are indexed in lexicographic order over the process space and
//! checked in parallel; the reported counterexample is always the one with
//! the smallest index, so verdicts do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::catalogue::{LawId, Violation};
use super::space::{enumerate_processes, process_from_digits, space_size, Grid};
use crate::error::{Error, Result};
use crate::process::{EqualityMode, FuzzyProcess};
use crate::universe::Universe;

/// Default ceiling on exhaustive work (tuples examined per law).
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "search", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub universe_size: usize,
    pub grid: Grid,
    #[serde(flatten)]
    pub mode: SearchMode,
}

impl Scope {
    pub fn exhaustive(universe_size: usize, grid: Grid) -> Self {
        Scope { universe_size, grid, mode: SearchMode::Exhaustive }
    }

    pub fn randomized(universe_size: usize, grid: Grid, samples: u64, seed: u64) -> Self {
        Scope {
            universe_size,
            grid,
            mode: SearchMode::Randomized { samples, seed },
        }
    }

    pub fn universe(&self) -> Result<Universe> {
        Universe::numbered(self.universe_size)
    }

    /// Tuples an exhaustive check of `law` would examine.
    pub fn work_estimate(&self, law: LawId) -> u128 {
        let n = space_size(self.universe_size, &self.grid, true);
        n.checked_pow(law.arity() as u32).unwrap_or(u128::MAX)
    }
}

/// A law failure together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub law: LawId,
    pub mode: EqualityMode,
    pub witnesses: Vec<FuzzyProcess>,
    pub violation: Violation,
}

impl Counterexample {
    pub fn lhs(&self) -> &FuzzyProcess {
        &self.violation.lhs
    }

    pub fn rhs(&self) -> &FuzzyProcess {
        &self.violation.rhs
    }

    pub fn first_differing_label(&self) -> &str {
        &self.violation.label
    }

    pub(crate) fn replay(&self) -> Result<Option<Violation>> {
        let refs: Vec<&FuzzyProcess> = self.witnesses.iter().collect();
        self.law.evaluate(self.mode, &refs)
    }

    /// Re-runs the law on the stored witnesses and checks that the exact same
    /// violation comes back.
    pub fn validates(&self) -> bool {
        matches!(self.replay(), Ok(Some(v)) if v == self.violation)
    }
}

impl Serialize for Counterexample {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Counterexample", 5)?;
        s.serialize_field("violation", &self.violation.kind)?;
        s.serialize_field("witnesses", &self.witnesses)?;
        s.serialize_field("lhs", &self.violation.lhs)?;
        s.serialize_field("rhs", &self.violation.rhs)?;
        s.serialize_field("first_differing_label", &self.violation.label)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum VerdictResult {
    Verified { cases_checked: u64 },
    Counterexample(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub law: LawId,
    /// `None` for laws whose truth does not involve an equality notion.
    pub mode: Option<EqualityMode>,
    pub scope: Scope,
    pub result: VerdictResult,
}

impl LawVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self.result, VerdictResult::Verified { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.result {
            VerdictResult::Counterexample(c) => Some(c),
            VerdictResult::Verified { .. } => None,
        }
    }
}

/// Runs law checks under a work budget for exhaustive scopes.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    pub budget: u128,
}

impl Default for Checker {
    fn default() -> Self {
        Checker { budget: DEFAULT_BUDGET }
    }
}

impl Checker {
    pub fn new(budget: u128) -> Self {
        Checker { budget }
    }

    pub fn check_law(&self, law: LawId, mode: EqualityMode, scope: &Scope) -> Result<LawVerdict> {
        let universe = scope.universe()?;
        let found = match scope.mode {
            SearchMode::Exhaustive => {
                let required = scope.work_estimate(law);
                if required > self.budget {
                    return Err(Error::BudgetExceeded { required, budget: self.budget });
                }
                exhaustive(law, mode, &universe, &scope.grid)?
            }
            SearchMode::Randomized { samples, seed } => {
                randomized(law, mode, &universe, &scope.grid, samples, seed)?
            }
        };
        let result = match found {
            Search::Clean(cases_checked) => VerdictResult::Verified { cases_checked },
            Search::Failed(witnesses, violation) => VerdictResult::Counterexample(Counterexample {
                law,
                mode,
                witnesses,
                violation,
            }),
        };
        Ok(LawVerdict {
            law,
            mode: law.uses_equality().then_some(mode),
            scope: scope.clone(),
            result,
        })
    }
}

/// [`Checker::check_law`] with the default budget.
pub fn check_law(law: LawId, mode: EqualityMode, scope: &Scope) -> Result<LawVerdict> {
    Checker::default().check_law(law, mode, scope)
}

enum Search {
    Clean(u64),
    Failed(Vec<FuzzyProcess>, Violation),
}

fn first_failure<F>(total: u64, law: LawId, mode: EqualityMode, tuple_at: F) -> Result<Search>
where
    F: Fn(u64) -> Vec<FuzzyProcess> + Sync,
{
    let hit = (0..total).into_par_iter().find_map_first(|index| {
        let tuple = tuple_at(index);
        let refs: Vec<&FuzzyProcess> = tuple.iter().collect();
        match law.evaluate(mode, &refs) {
            Ok(None) => None,
            Ok(Some(v)) => Some(Ok((tuple, v))),
            Err(e) => Some(Err(e)),
        }
    });
    Ok(match hit.transpose()? {
        Some((tuple, violation)) => Search::Failed(tuple, violation),
        None => Search::Clean(total),
    })
}

fn exhaustive(law: LawId, mode: EqualityMode, universe: &Universe, grid: &Grid) -> Result<Search> {
    let space = enumerate_processes(universe, grid, true)?;
    let n = space.len() as u64;
    let arity = law.arity();
    let total = n.pow(arity as u32);
    first_failure(total, law, mode, |index| {
        let mut slots = vec![0u64; arity];
        let mut rest = index;
        for slot in slots.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        slots.into_iter().map(|i| space.get(i as usize).clone()).collect()
    })
}

/// Sample `i` draws from its own ChaCha stream keyed by `(seed, i)`, so the
/// sample set is identical however the work is split.
fn randomized(
    law: LawId,
    mode: EqualityMode,
    universe: &Universe,
    grid: &Grid,
    samples: u64,
    seed: u64,
) -> Result<Search> {
    if samples == 0 {
        return Err(Error::InvalidScope("randomized scope needs at least one sample".into()));
    }
    let pairs = grid.pairs(true);
    first_failure(samples, law, mode, |index| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        (0..law.arity())
            .map(|_| {
                let digits: Vec<usize> = (0..universe.len()).map(|_| rng.gen_range(0..pairs.len())).collect();
                process_from_digits(universe, &pairs, digits.into_iter())
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grade::MembershipGrade;

    fn grid(s: &str) -> Grid {
        s.parse().unwrap()
    }

    #[test]
    fn identity_verified_with_exact_count() {
        let v = check_law(LawId::ProductIdentity, EqualityMode::ValueLevel, &Scope::exhaustive(1, Grid::three())).unwrap();
        assert_eq!(v.result, VerdictResult::Verified { cases_checked: 8 });
        assert_eq!(v.mode, Some(EqualityMode::ValueLevel));
    }

    #[test]
    fn associativity_fails_at_value_level() {
        let scope = Scope::exhaustive(1, grid("0,1/5,1"));
        let v = check_law(LawId::ProductAssociative, EqualityMode::ValueLevel, &scope).unwrap();
        let cex = v.counterexample().expect("counterexample");
        assert!(cex.validates());
        assert_eq!(cex.witnesses.len(), 3);
        let s = check_law(LawId::ProductAssociative, EqualityMode::SupportLevel, &Scope::exhaustive(1, Grid::three())).unwrap();
        assert_eq!(s.result, VerdictResult::Verified { cases_checked: 512 });
    }

    #[test]
    fn order_laws_have_no_mode() {
        let v = check_law(LawId::OrderTransitive, EqualityMode::SupportLevel, &Scope::exhaustive(1, Grid::three())).unwrap();
        assert_eq!(v.mode, None);
        assert_eq!(v.result, VerdictResult::Verified { cases_checked: 512 });
    }

    #[test]
    fn budget_is_enforced() {
        let scope = Scope::exhaustive(2, Grid::three());
        let err = Checker::new(1000).check_law(LawId::ProductAssociative, EqualityMode::ValueLevel, &scope).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { required: 262_144, budget: 1000 });
        assert!(Checker::new(1000).check_law(LawId::ProductIdentity, EqualityMode::ValueLevel, &scope).is_ok());
    }

    #[test]
    fn randomized_is_seed_deterministic() {
        let scope = Scope::randomized(3, Grid::uniform(4).unwrap(), 2000, 7);
        let a = check_law(LawId::ProductTop, EqualityMode::ValueLevel, &scope).unwrap();
        let b = check_law(LawId::ProductTop, EqualityMode::ValueLevel, &scope).unwrap();
        assert_eq!(a, b);
        assert!(a.counterexample().unwrap().validates());
        let clean = check_law(LawId::ReflectProduct, EqualityMode::ValueLevel, &scope).unwrap();
        assert_eq!(clean.result, VerdictResult::Verified { cases_checked: 2000 });
    }

    #[test]
    fn tampered_counterexample_does_not_validate() {
        let v = check_law(LawId::ProductTop, EqualityMode::ValueLevel, &Scope::exhaustive(1, Grid::three())).unwrap();
        let mut cex = v.counterexample().unwrap().clone();
        cex.violation.rhs = cex.violation.rhs.map_grades(|_| MembershipGrade::ZERO);
        assert!(!cex.validates());
    }
}
