//! Fuzzy processes: a device/environment contract as a pair of fuzzy subsets
//! (accessibility `delta`, acceptability `gamma`) over one finite universe.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grade::MembershipGrade;
use crate::universe::Universe;

/// A fuzzy subset of a universe. Labels absent from the support have grade 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FuzzySubset {
    universe: Universe,
    grades: Vec<MembershipGrade>,
}

impl FuzzySubset {
    pub fn empty(universe: &Universe) -> Self {
        Self::constant(universe, MembershipGrade::ZERO)
    }

    pub fn constant(universe: &Universe, grade: MembershipGrade) -> Self {
        FuzzySubset {
            universe: universe.clone(),
            grades: vec![grade; universe.len()],
        }
    }

    /// Builds from `(label, grade)` pairs. Zero grades are accepted and simply
    /// leave the label outside the support.
    pub fn from_pairs<S: AsRef<str>>(
        universe: &Universe,
        pairs: &[(S, MembershipGrade)],
    ) -> Result<Self> {
        let mut grades = vec![MembershipGrade::ZERO; universe.len()];
        let mut seen = vec![false; universe.len()];
        for (label, grade) in pairs {
            let label = label.as_ref();
            let i = universe.require(label)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            grades[i] = *grade;
        }
        Ok(FuzzySubset {
            universe: universe.clone(),
            grades,
        })
    }

    pub(crate) fn from_vec(universe: &Universe, grades: Vec<MembershipGrade>) -> Self {
        debug_assert_eq!(universe.len(), grades.len());
        FuzzySubset {
            universe: universe.clone(),
            grades,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn grade(&self, label: &str) -> Result<MembershipGrade> {
        Ok(self.grades[self.universe.require(label)?])
    }

    pub fn grade_at(&self, index: usize) -> MembershipGrade {
        self.grades[index]
    }

    pub fn contains_at(&self, index: usize) -> bool {
        self.grades[index].is_positive()
    }

    /// All grades in universe order, zeros included.
    pub fn as_slice(&self) -> &[MembershipGrade] {
        &self.grades
    }

    /// Positive entries in universe order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, MembershipGrade)> + '_ {
        self.grades
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_positive())
            .map(|(i, g)| (self.universe.label(i), *g))
    }

    pub fn support(&self) -> Vec<&str> {
        self.iter().map(|(label, _)| label).collect()
    }

    pub fn support_len(&self) -> usize {
        self.grades.iter().filter(|g| g.is_positive()).count()
    }

    fn restrict(&self, universe: &Universe, keep: &[usize]) -> Self {
        FuzzySubset::from_vec(universe, keep.iter().map(|&i| self.grades[i]).collect())
    }
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Sparse label-to-grade map, grades as reduced-fraction strings.
impl Serialize for FuzzySubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.support_len()))?;
        for (label, grade) in self.iter() {
            map.serialize_entry(label, &grade)?;
        }
        map.end()
    }
}

/// What to do with executions whose delta and gamma are both zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingPolicy {
    /// Fail construction.
    Strict,
    /// Drop them from the universe.
    RemoveBlockings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityMode {
    /// Grades agree pointwise on both channels.
    #[serde(rename = "value")]
    ValueLevel,
    /// Supports of both channels agree as crisp sets.
    #[serde(rename = "support")]
    SupportLevel,
}

impl EqualityMode {
    pub const ALL: [EqualityMode; 2] = [EqualityMode::ValueLevel, EqualityMode::SupportLevel];

    pub fn name(self) -> &'static str {
        match self {
            EqualityMode::ValueLevel => "value",
            EqualityMode::SupportLevel => "support",
        }
    }
}

impl fmt::Display for EqualityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EqualityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "value" | "ValueLevel" => Ok(EqualityMode::ValueLevel),
            "support" | "SupportLevel" => Ok(EqualityMode::SupportLevel),
            other => Err(format!("unknown equality mode `{other}` (expected value or support)")),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FuzzyProcess {
    universe: Universe,
    delta: FuzzySubset,
    gamma: FuzzySubset,
}

/// Builds a process from sparse `(label, grade)` lists.
///
/// Under [`BlockingPolicy::RemoveBlockings`] the result lives over the
/// universe with every blocking execution removed. Fails with
/// `BlockingViolation` if that would leave nothing.
pub fn make_process<S: AsRef<str>>(
    universe: &Universe,
    delta_pairs: &[(S, MembershipGrade)],
    gamma_pairs: &[(S, MembershipGrade)],
    policy: BlockingPolicy,
) -> Result<FuzzyProcess> {
    let delta = FuzzySubset::from_pairs(universe, delta_pairs)?;
    let gamma = FuzzySubset::from_pairs(universe, gamma_pairs)?;
    FuzzyProcess::from_subsets(delta, gamma, policy)
}

impl FuzzyProcess {
    pub fn from_subsets(
        delta: FuzzySubset,
        gamma: FuzzySubset,
        policy: BlockingPolicy,
    ) -> Result<Self> {
        if delta.universe != gamma.universe {
            return Err(Error::UniverseMismatch);
        }
        let p = FuzzyProcess {
            universe: delta.universe.clone(),
            delta,
            gamma,
        };
        let blocked = p.blocking_indices();
        match (policy, blocked.first()) {
            (_, None) => Ok(p),
            (BlockingPolicy::Strict, Some(&i)) => {
                Err(Error::BlockingViolation(p.universe.label(i).to_string()))
            }
            (BlockingPolicy::RemoveBlockings, Some(&i)) => {
                let keep: Vec<usize> = (0..p.universe.len())
                    .filter(|j| !blocked.contains(j))
                    .collect();
                if keep.is_empty() {
                    return Err(Error::BlockingViolation(p.universe.label(i).to_string()));
                }
                p.restrict(&keep)
            }
        }
    }

    /// Dense constructor used by the operators and the enumerator. Does not
    /// check blocking-freeness.
    pub(crate) fn from_dense(
        universe: &Universe,
        delta: Vec<MembershipGrade>,
        gamma: Vec<MembershipGrade>,
    ) -> Self {
        FuzzyProcess {
            universe: universe.clone(),
            delta: FuzzySubset::from_vec(universe, delta),
            gamma: FuzzySubset::from_vec(universe, gamma),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn delta(&self) -> &FuzzySubset {
        &self.delta
    }

    pub fn gamma(&self) -> &FuzzySubset {
        &self.gamma
    }

    /// `(delta(x), gamma(x))`, zero outside the supports.
    pub fn grades(&self, label: &str) -> Result<(MembershipGrade, MembershipGrade)> {
        let i = self.universe.require(label)?;
        Ok(self.grades_at(i))
    }

    pub fn grades_at(&self, index: usize) -> (MembershipGrade, MembershipGrade) {
        (self.delta.grades[index], self.gamma.grades[index])
    }

    pub(crate) fn blocking_indices(&self) -> Vec<usize> {
        (0..self.universe.len())
            .filter(|&i| self.delta.grades[i].is_zero() && self.gamma.grades[i].is_zero())
            .collect()
    }

    pub fn first_blocking(&self) -> Option<&str> {
        self.blocking_indices()
            .first()
            .map(|&i| self.universe.label(i))
    }

    pub fn is_blocking_free(&self) -> bool {
        self.first_blocking().is_none()
    }

    pub(crate) fn ensure_blocking_free(&self) -> Result<()> {
        match self.first_blocking() {
            Some(label) => Err(Error::BlockingViolation(label.to_string())),
            None => Ok(()),
        }
    }

    /// The same contract seen over a sub-universe of kept positions.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let universe = self.universe.restrict(keep)?;
        Ok(FuzzyProcess {
            delta: self.delta.restrict(&universe, keep),
            gamma: self.gamma.restrict(&universe, keep),
            universe,
        })
    }

    /// Applies `f` to every grade on both channels.
    pub fn map_grades(&self, f: impl Fn(MembershipGrade) -> MembershipGrade) -> Self {
        FuzzyProcess::from_dense(
            &self.universe,
            self.delta.grades.iter().map(|&g| f(g)).collect(),
            self.gamma.grades.iter().map(|&g| f(g)).collect(),
        )
    }
}

impl fmt::Debug for FuzzyProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuzzyProcess")
            .field("delta", &self.delta)
            .field("gamma", &self.gamma)
            .finish()
    }
}

impl Serialize for FuzzyProcess {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FuzzyProcess", 3)?;
        s.serialize_field("universe", self.universe.labels())?;
        s.serialize_field("delta", &self.delta)?;
        s.serialize_field("gamma", &self.gamma)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Omega,
    Top,
    Bottom,
}

/// `Omega = (1, 1)`, `Top = (0, 1)`, `Bottom = (1, 0)` over `universe`.
pub fn constant(kind: Constant, universe: &Universe) -> FuzzyProcess {
    use MembershipGrade as G;
    let (d, g) = match kind {
        Constant::Omega => (G::ONE, G::ONE),
        Constant::Top => (G::ZERO, G::ONE),
        Constant::Bottom => (G::ONE, G::ZERO),
    };
    FuzzyProcess {
        universe: universe.clone(),
        delta: FuzzySubset::constant(universe, d),
        gamma: FuzzySubset::constant(universe, g),
    }
}

pub fn omega(universe: &Universe) -> FuzzyProcess {
    constant(Constant::Omega, universe)
}

pub fn top(universe: &Universe) -> FuzzyProcess {
    constant(Constant::Top, universe)
}

pub fn bottom(universe: &Universe) -> FuzzyProcess {
    constant(Constant::Bottom, universe)
}

pub(crate) fn same_universe(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<()> {
    if p.universe == q.universe {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// First position where `p` is not refined by `q`, i.e. where
/// `delta_p < delta_q` or `gamma_p > gamma_q`.
pub fn refinement_failure(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<Option<usize>> {
    same_universe(p, q)?;
    Ok((0..p.universe.len()).find(|&i| {
        let (dp, gp) = p.grades_at(i);
        let (dq, gq) = q.grades_at(i);
        dp < dq || gp > gq
    }))
}

/// `p ⊑ q`: `q` is an acceptable substitute for `p`.
pub fn refines(p: &FuzzyProcess, q: &FuzzyProcess) -> Result<bool> {
    Ok(refinement_failure(p, q)?.is_none())
}

/// First position where `p` and `q` disagree under `mode`.
pub fn first_difference(
    p: &FuzzyProcess,
    q: &FuzzyProcess,
    mode: EqualityMode,
) -> Result<Option<usize>> {
    same_universe(p, q)?;
    Ok((0..p.universe.len()).find(|&i| {
        let (dp, gp) = p.grades_at(i);
        let (dq, gq) = q.grades_at(i);
        match mode {
            EqualityMode::ValueLevel => dp != dq || gp != gq,
            EqualityMode::SupportLevel => {
                dp.is_positive() != dq.is_positive() || gp.is_positive() != gq.is_positive()
            }
        }
    }))
}

pub fn equal(p: &FuzzyProcess, q: &FuzzyProcess, mode: EqualityMode) -> Result<bool> {
    Ok(first_difference(p, q, mode)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> MembershipGrade {
        s.parse().unwrap()
    }

    fn uni(labels: &[&str]) -> Universe {
        Universe::new(labels.iter().copied()).unwrap()
    }

    pub(crate) fn fixture_p() -> FuzzyProcess {
        make_process(
            &uni(&["a", "b", "c"]),
            &[("a", g("4/5")), ("b", g("1/2"))],
            &[("a", g("2/5")), ("c", g("7/10"))],
            BlockingPolicy::Strict,
        )
        .unwrap()
    }

    pub(crate) fn fixture_q() -> FuzzyProcess {
        make_process(
            &uni(&["a", "b", "c"]),
            &[("a", g("3/5")), ("c", g("9/10"))],
            &[("a", g("1")), ("b", g("3/10"))],
            BlockingPolicy::Strict,
        )
        .unwrap()
    }

    #[test]
    fn fixture_supports() {
        let p = fixture_p();
        assert_eq!(p.delta().support(), ["a", "b"]);
        assert_eq!(p.gamma().support(), ["a", "c"]);
        let q = fixture_q();
        assert_eq!(q.delta().support(), ["a", "c"]);
        assert_eq!(q.gamma().support(), ["a", "b"]);
    }

    #[test]
    fn grades_read_back() {
        let p = fixture_p();
        assert_eq!(p.grades("a").unwrap(), (g("4/5"), g("2/5")));
        assert_eq!(p.grades("c").unwrap(), (g("0"), g("7/10")));
        assert_eq!(omega(&uni(&["a"])).grades("a").unwrap(), (g("1"), g("1")));
        assert_eq!(p.grades("z").unwrap_err(), Error::UnknownLabel("z".into()));
    }

    #[test]
    fn construction_errors() {
        let u = uni(&["a"]);
        let none: &[(&str, MembershipGrade)] = &[];
        assert_eq!(
            make_process(&u, none, none, BlockingPolicy::Strict).unwrap_err(),
            Error::BlockingViolation("a".into())
        );
        assert_eq!(
            make_process(&u, &[("b", g("1"))], none, BlockingPolicy::Strict).unwrap_err(),
            Error::UnknownLabel("b".into())
        );
        assert_eq!(
            make_process(&u, &[("a", g("1")), ("a", g("1/2"))], none, BlockingPolicy::Strict)
                .unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert!(make_process(&u, none, none, BlockingPolicy::RemoveBlockings).is_err());
    }

    #[test]
    fn zero_pairs_are_dropped() {
        let u = uni(&["a", "b"]);
        let p = make_process(
            &u,
            &[("a", g("0")), ("b", g("1"))],
            &[("a", g("1/2"))],
            BlockingPolicy::Strict,
        )
        .unwrap();
        assert_eq!(p.delta().support(), ["b"]);
    }

    #[test]
    fn remove_blockings_shrinks_universe() {
        let u = uni(&["a", "b"]);
        let p = make_process(
            &u,
            &[("a", g("1"))],
            &[("a", g("1"))],
            BlockingPolicy::RemoveBlockings,
        )
        .unwrap();
        assert_eq!(p.universe().labels(), ["a"]);
        assert_eq!(p.grades("a").unwrap(), (g("1"), g("1")));
        assert!(p.is_blocking_free());
    }

    #[test]
    fn constants() {
        let u = uni(&["a", "b"]);
        let o = omega(&u);
        assert_eq!(o.delta().support(), ["a", "b"]);
        assert_eq!(o.gamma().support(), ["a", "b"]);
        let t = top(&uni(&["a"]));
        assert!(t.delta().support().is_empty());
        assert_eq!(t.gamma().grade("a").unwrap(), g("1"));
        for k in [Constant::Omega, Constant::Top, Constant::Bottom] {
            assert!(constant(k, &u).is_blocking_free());
        }
    }

    #[test]
    fn refinement_examples() {
        let (p, q) = (fixture_p(), fixture_q());
        assert!(refines(&p, &p).unwrap());
        assert!(!refines(&p, &q).unwrap());
        assert_eq!(refinement_failure(&p, &q).unwrap(), Some(2));
        assert!(refines(&bottom(p.universe()), &p).unwrap());
        assert!(refines(&p, &top(p.universe())).unwrap());
        let other = omega(&uni(&["a"]));
        assert_eq!(refines(&p, &other).unwrap_err(), Error::UniverseMismatch);
    }

    #[test]
    fn equality_modes() {
        let p = fixture_p();
        assert!(equal(&p, &p, EqualityMode::ValueLevel).unwrap());
        let halved = p.map_grades(|x| if x.is_positive() { g("1/10") } else { x });
        assert!(!equal(&p, &halved, EqualityMode::ValueLevel).unwrap());
        assert!(equal(&p, &halved, EqualityMode::SupportLevel).unwrap());
        assert_eq!(first_difference(&p, &halved, EqualityMode::ValueLevel).unwrap(), Some(0));
    }
}
