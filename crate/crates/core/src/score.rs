//! Extended integers: a finite `i64` or `+∞`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest magnitude accepted as input to a product. Any two-term sum of
/// such values fits in an `i64` with room to spare.
pub const MAX_FINITE: i64 = 1 << 61;

/// A finite integer score or `+∞`.
///
/// `+∞` is represented by the sentinel `i64::MAX`, so the derived ordering
/// is the natural one (`∞` is larger than every finite value).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Score(i64);

impl Score {
    pub const INF: Score = Score(i64::MAX);
    pub const ZERO: Score = Score(0);

    /// Wraps a finite value. Panics if `v` collides with the sentinel.
    #[inline]
    pub fn finite(v: i64) -> Score {
        assert!(v != i64::MAX, "i64::MAX is reserved for +inf");
        Score(v)
    }

    #[inline]
    pub(crate) const fn from_raw(raw: i64) -> Score {
        Score(raw)
    }

    #[inline]
    pub(crate) const fn raw(self) -> i64 {
        self.0
    }

    #[inline]
    pub fn is_inf(self) -> bool {
        self.0 == i64::MAX
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    /// The finite value, or `None` for `∞`.
    #[inline]
    pub fn value(self) -> Option<i64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// `∞ + x = ∞`; finite overflow is an error rather than a wraparound.
    pub fn checked_add(self, other: Score) -> Result<Score> {
        if self.is_inf() || other.is_inf() {
            return Ok(Score::INF);
        }
        match self.0.checked_add(other.0) {
            Some(v) if v != i64::MAX => Ok(Score(v)),
            _ => Err(Error::Overflow),
        }
    }

    /// Addition for values already validated to lie within `±MAX_FINITE`.
    #[inline]
    pub(crate) fn add_bounded(self, other: Score) -> Score {
        if self.is_inf() || other.is_inf() {
            Score::INF
        } else {
            Score(self.0 + other.0)
        }
    }

    /// `|self| ≤ MAX_FINITE` or `∞`.
    #[inline]
    pub fn in_product_range(self) -> bool {
        self.is_inf() || (-MAX_FINITE..=MAX_FINITE).contains(&self.0)
    }
}

impl From<i64> for Score {
    fn from(v: i64) -> Self {
        Score::finite(v)
    }
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl PartialEq<i64> for Score {
    fn eq(&self, other: &i64) -> bool {
        self.value() == Some(*other)
    }
}

impl PartialOrd<i64> for Score {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Score::finite(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs() {
        assert!(Score::INF.checked_add(Score::finite(-5)).unwrap().is_inf());
        assert!(Score::finite(3).checked_add(Score::INF).unwrap().is_inf());
        assert_eq!(Score::INF.min(Score::finite(7)), 7);
    }

    #[test]
    fn finite_overflow_is_an_error() {
        let big = Score::finite(i64::MAX - 1);
        assert!(matches!(big.checked_add(Score::finite(1)), Err(Error::Overflow)));
        assert!(matches!(
            Score::finite(i64::MIN).checked_add(Score::finite(-1)),
            Err(Error::Overflow)
        ));
        assert_eq!(Score::finite(2).checked_add(Score::finite(-5)).unwrap(), -3);
    }

    #[test]
    fn display_round_trips_through_text() {
        assert_eq!(Score::INF.to_string(), "inf");
        assert_eq!(Score::finite(-12).to_string(), "-12");
    }
}
