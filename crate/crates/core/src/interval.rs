//! Closed rational intervals and the min/max distance between them.

use num::rational::BigRational;
use num::Zero;

use crate::rational::rat;

/// A closed interval `[lo, hi]` with exact rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// Panics if `lo > hi`; callers construct intervals whose order is
    /// guaranteed, so a violation is a logic error.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RationalInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    /// Endpoint-inclusive membership.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Closed intervals that merely touch at an endpoint still intersect.
    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// The exact range of `|s - t|` over `s` in one interval and `t` in another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDistance {
    pub d_min: BigRational,
    pub d_max: BigRational,
}

impl IntervalDistance {
    /// Midpoint of the bracket: a derived convenience scalar, not part of
    /// the bracket semantics.
    pub fn bracket_midpoint(&self) -> BigRational {
        (&self.d_min + &self.d_max) / BigRational::from_integer(2.into())
    }
}

/// Computes `[inf, sup]` of `|s - t|` for `s` in `i`, `t` in `j`.
///
/// The infimum is the gap between the intervals (zero when they intersect);
/// the supremum is attained at opposite endpoints.
pub fn interval_distance(i: &RationalInterval, j: &RationalInterval) -> IntervalDistance {
    let gap_ij = &i.lo - &j.hi;
    let gap_ji = &j.lo - &i.hi;
    let d_min = gap_ij.max(gap_ji).max(BigRational::zero());
    let span_ij = &i.hi - &j.lo;
    let span_ji = &j.hi - &i.lo;
    let d_max = span_ij.max(span_ji);
    IntervalDistance { d_min, d_max }
}
