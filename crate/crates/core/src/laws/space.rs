//! Finite process spaces: every process whose per-label grade pair is drawn
//! from a quantized grid.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grade::MembershipGrade;
use crate::process::FuzzyProcess;
use crate::universe::Universe;

/// Largest process space [`enumerate_processes`] will materialize.
pub const ENUMERATION_LIMIT: u128 = 1 << 22;

/// A finite, strictly increasing set of grades containing 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid(Vec<MembershipGrade>);

impl Grid {
    /// Sorts and deduplicates `grades`; fails unless both 0 and 1 are present.
    pub fn new(mut grades: Vec<MembershipGrade>) -> Result<Self> {
        grades.sort();
        grades.dedup();
        if grades.first() != Some(&MembershipGrade::ZERO) || grades.last() != Some(&MembershipGrade::ONE) {
            return Err(Error::InvalidGrid("grid must contain 0 and 1".into()));
        }
        Ok(Grid(grades))
    }

    /// `{0, 1/2, 1}`.
    pub fn three() -> Self {
        Grid(vec![
            MembershipGrade::ZERO,
            MembershipGrade::new(1, 2).unwrap(),
            MembershipGrade::ONE,
        ])
    }

    /// `{0, 1/n, 2/n, ..., 1}`.
    pub fn uniform(steps: u64) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidGrid("need at least one step".into()));
        }
        Grid::new((0..=steps).map(|k| MembershipGrade::new(k, steps)).collect::<Result<_>>()?)
    }

    pub fn grades(&self) -> &[MembershipGrade] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Per-label `(delta, gamma)` choices in enumeration order: delta-major,
    /// then gamma, both ascending.
    pub fn pairs(&self, blocking_free: bool) -> Vec<(MembershipGrade, MembershipGrade)> {
        self.0
            .iter()
            .flat_map(|&d| self.0.iter().map(move |&g| (d, g)))
            .filter(|(d, g)| !blocking_free || d.is_positive() || g.is_positive())
            .collect()
    }

    pub fn contains(&self, grade: MembershipGrade) -> bool {
        self.0.binary_search(&grade).is_ok()
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Comma-separated grade literals, e.g. `0,1/2,1` or `0,0.25,0.5,0.75,1`.
    fn from_str(s: &str) -> Result<Self> {
        let grades = s
            .split(',')
            .map(|part| part.trim().parse::<MembershipGrade>())
            .collect::<Result<Vec<_>>>()?;
        Grid::new(grades)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Number of processes over `size` labels: `pairs^size`.
pub fn space_size(size: usize, grid: &Grid, blocking_free: bool) -> u128 {
    let pairs = grid.pairs(blocking_free).len() as u128;
    u32::try_from(size)
        .ok()
        .and_then(|n| pairs.checked_pow(n))
        .unwrap_or(u128::MAX)
}

/// A materialized process space with random access by enumeration index.
#[derive(Debug, Clone)]
pub struct ProcessSpace {
    universe: Universe,
    processes: Vec<FuzzyProcess>,
}

impl ProcessSpace {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn get(&self, index: usize) -> &FuzzyProcess {
        &self.processes[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FuzzyProcess> {
        self.processes.iter()
    }
}

impl<'a> IntoIterator for &'a ProcessSpace {
    type Item = &'a FuzzyProcess;
    type IntoIter = std::slice::Iter<'a, FuzzyProcess>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Builds the process with the given per-label pair indices.
pub(crate) fn process_from_digits(
    universe: &Universe,
    pairs: &[(MembershipGrade, MembershipGrade)],
    digits: impl Iterator<Item = usize>,
) -> FuzzyProcess {
    let (delta, gamma) = digits.map(|d| pairs[d]).unzip();
    FuzzyProcess::from_dense(universe, delta, gamma)
}

/// Every process over `universe` with grades from `grid`, in lexicographic
/// order: the first label is the most significant digit and each label
/// ranges over [`Grid::pairs`]. With `blocking_free`, `(0, 0)` is excluded.
pub fn enumerate_processes(universe: &Universe, grid: &Grid, blocking_free: bool) -> Result<ProcessSpace> {
    let count = space_size(universe.len(), grid, blocking_free);
    if count > ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded { required: count, budget: ENUMERATION_LIMIT });
    }
    let pairs = grid.pairs(blocking_free);
    let n = universe.len();
    let base = pairs.len();
    let processes = (0..count as usize)
        .map(|index| {
            let mut digits = vec![0; n];
            let mut rest = index;
            for slot in digits.iter_mut().rev() {
                *slot = rest % base;
                rest /= base;
            }
            process_from_digits(universe, &pairs, digits.into_iter())
        })
        .collect();
    Ok(ProcessSpace {
        universe: universe.clone(),
        processes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let grid = Grid::three();
        let one = Universe::numbered(1).unwrap();
        let two = Universe::numbered(2).unwrap();
        assert_eq!(enumerate_processes(&one, &grid, true).unwrap().len(), 8);
        assert_eq!(enumerate_processes(&two, &grid, true).unwrap().len(), 64);
        let with_blocking = enumerate_processes(&one, &grid, false).unwrap();
        assert_eq!(with_blocking.len(), 9);
        assert!(!with_blocking.get(0).is_blocking_free());
    }

    #[test]
    fn order_is_lexicographic() {
        let grid = Grid::three();
        let two = Universe::numbered(2).unwrap();
        let space = enumerate_processes(&two, &grid, true).unwrap();
        let half: MembershipGrade = "1/2".parse().unwrap();
        // first process: both labels (0, 1/2); second bumps the last label
        assert_eq!(space.get(0).grades_at(0), (MembershipGrade::ZERO, half));
        assert_eq!(space.get(0).grades_at(1), (MembershipGrade::ZERO, half));
        assert_eq!(space.get(1).grades_at(1), (MembershipGrade::ZERO, MembershipGrade::ONE));
        assert_eq!(space.get(8).grades_at(0), (MembershipGrade::ZERO, MembershipGrade::ONE));
        assert!(space.iter().all(FuzzyProcess::is_blocking_free));
    }

    #[test]
    fn grid_parsing() {
        let g: Grid = "1, 0, 1/2, 0.5".parse().unwrap();
        assert_eq!(g, Grid::three());
        assert_eq!(g.to_string(), "{0, 1/2, 1}");
        assert!(matches!("0,0.5,1.5".parse::<Grid>(), Err(Error::GradeOutOfRange(_))));
        assert!(matches!("0,1/2".parse::<Grid>(), Err(Error::InvalidGrid(_))));
        assert_eq!(Grid::uniform(4).unwrap().to_string(), "{0, 1/4, 1/2, 3/4, 1}");
    }

    #[test]
    fn refuses_huge_spaces() {
        let u = Universe::numbered(8).unwrap();
        assert!(matches!(
            enumerate_processes(&u, &Grid::three(), true),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
