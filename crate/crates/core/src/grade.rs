//! Exact membership grades in `[0, 1]`.
//!
//! Grades are only ever compared, so `min`/`max` keep every computed value
//! inside the set of grades that appeared in the inputs. Rationals make that
//! exact with no tolerance to tune.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A reduced rational in the closed unit interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MembershipGrade(Ratio<u64>);

impl MembershipGrade {
    pub const ZERO: MembershipGrade = MembershipGrade(Ratio::new_raw(0, 1));
    pub const ONE: MembershipGrade = MembershipGrade(Ratio::new_raw(1, 1));

    /// Builds `numer/denom`, rejecting a zero denominator or a value above one.
    pub fn new(numer: u64, denom: u64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidGrade(format!("{numer}/0")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(value: Ratio<u64>) -> Result<Self, Error> {
        if value > Ratio::from_integer(1) {
            return Err(Error::GradeOutOfRange(value.to_string()));
        }
        Ok(MembershipGrade(value))
    }

    pub fn ratio(self) -> Ratio<u64> {
        self.0
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_positive(self) -> bool {
        !self.is_zero()
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }
}

/// Parses an unsigned rational literal: `n`, `n/d`, or an exact decimal `d.ddd`.
///
/// The value is not range-checked; callers decide whether a literal above one
/// is a syntax problem or a domain problem.
pub fn parse_rational(text: &str) -> Option<Ratio<u64>> {
    fn digits(s: &str) -> Option<u64> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }

    if let Some((n, d)) = text.split_once('/') {
        let (n, d) = (digits(n)?, digits(d)?);
        if d == 0 {
            return None;
        }
        return Some(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int = digits(int)?;
        let scale = 10u64.checked_pow(u32::try_from(frac.len()).ok()?)?;
        let frac: u64 = frac.parse().ok()?;
        let numer = int.checked_mul(scale)?.checked_add(frac)?;
        return Some(Ratio::new(numer, scale));
    }
    digits(text).map(Ratio::from_integer)
}

impl FromStr for MembershipGrade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_rational(s.trim()).ok_or_else(|| Error::InvalidGrade(s.to_string()))?;
        Self::from_ratio(value)
    }
}

impl fmt::Display for MembershipGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for MembershipGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MembershipGrade {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MembershipGrade {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
