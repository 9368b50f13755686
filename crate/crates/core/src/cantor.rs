//! Middle-thirds construction stages with exact rational endpoints.
//!
//! Stage m is the union of 2^m closed intervals of width 3^-m inside
//! [0, 1]. Stage m+1 keeps the outer third of each interval. All endpoint
//! arithmetic is exact; the depth guard only rejects absurd requests,
//! memory binds far earlier since a stage holds 2^depth intervals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::interval::RationalInterval;

/// Default cap on construction depth.
pub const DEFAULT_DEPTH_LIMIT: usize = 64;

/// Depths up to this are cheap enough to re-derive the measure by summing
/// interval widths as a cross-check.
const MEASURE_CROSS_CHECK_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CantorError {
    #[error("depth {depth} exceeds the limit {limit}")]
    DepthTooLarge { depth: usize, limit: usize },
}

/// One construction stage: the surviving closed intervals, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorStage {
    pub depth: usize,
    pub intervals: Vec<RationalInterval>,
}

/// Finite-depth proxies for the limit set's topological properties,
/// computed from the actual stage intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub depth: usize,
    /// The stage is a finite union of closed intervals.
    pub closed: bool,
    /// Width of the widest interval contained in the stage after merging
    /// touching pieces; equals `width_bound` at every depth.
    pub largest_contained_width: BigRational,
    /// Max over stage endpoints of the distance to the nearest other
    /// endpoint; no endpoint is isolated at scale beyond `width_bound`.
    pub max_endpoint_gap: BigRational,
    /// 3^-depth, the single-interval width at this stage.
    pub width_bound: BigRational,
    /// Every pair of consecutive intervals is separated by a gap.
    pub disconnected_holds: bool,
    /// `max_endpoint_gap <= width_bound`.
    pub perfect_holds: bool,
    pub notes: Vec<String>,
}

pub fn cantor_stage(depth: usize) -> Result<CantorStage, CantorError> {
    cantor_stage_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn cantor_stage_with_limit(depth: usize, limit: usize) -> Result<CantorStage, CantorError> {
    if depth > limit {
        return Err(CantorError::DepthTooLarge { depth, limit });
    }
    let denom = BigInt::from(3).pow(depth as u32);
    let mut intervals = Vec::with_capacity(1usize << depth.min(24));
    for i in 0..(1u128 << depth) {
        // The i-th interval's left endpoint is the depth-digit ternary
        // numeral using digit 2 where i has a binary 1.
        let mut num = BigInt::zero();
        for b in (0..depth).rev() {
            num *= 3;
            if (i >> b) & 1 == 1 {
                num += 2;
            }
        }
        let lo = BigRational::new(num.clone(), denom.clone());
        let hi = BigRational::new(num + 1, denom.clone());
        intervals.push(RationalInterval::new(lo, hi));
    }
    Ok(CantorStage { depth, intervals })
}

/// Total length (2/3)^depth of stage `depth`.
pub fn cantor_measure(depth: usize) -> Result<BigRational, CantorError> {
    cantor_measure_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn cantor_measure_with_limit(depth: usize, limit: usize) -> Result<BigRational, CantorError> {
    if depth > limit {
        return Err(CantorError::DepthTooLarge { depth, limit });
    }
    let closed_form = BigRational::new(
        BigInt::from(2).pow(depth as u32),
        BigInt::from(3).pow(depth as u32),
    );
    if depth <= MEASURE_CROSS_CHECK_LIMIT {
        let summed: BigRational = cantor_stage_with_limit(depth, limit)?
            .intervals
            .iter()
            .map(|iv| iv.width())
            .sum();
        assert_eq!(summed, closed_form, "stage widths must sum to (2/3)^depth");
    }
    Ok(closed_form)
}

pub fn property_report(depth: usize) -> Result<PropertyReport, CantorError> {
    property_report_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn property_report_with_limit(
    depth: usize,
    limit: usize,
) -> Result<PropertyReport, CantorError> {
    let stage = cantor_stage_with_limit(depth, limit)?;
    let width_bound = BigRational::new(BigInt::one(), BigInt::from(3).pow(depth as u32));

    // Merge touching intervals, then take the widest merged run.
    let mut merged: Vec<RationalInterval> = Vec::new();
    for iv in &stage.intervals {
        match merged.last_mut() {
            Some(last) if last.hi() >= iv.lo() => {
                *last = RationalInterval::new(last.lo().clone(), iv.hi().clone());
            }
            _ => merged.push(iv.clone()),
        }
    }
    let largest_contained_width = merged
        .iter()
        .map(|iv| iv.width())
        .max()
        .expect("a stage always has at least one interval");
    let disconnected_holds = merged.len() == stage.intervals.len();

    // Endpoints come out sorted and distinct; each one's nearest other
    // endpoint is a sorted neighbor.
    let endpoints: Vec<&BigRational> = stage
        .intervals
        .iter()
        .flat_map(|iv| [iv.lo(), iv.hi()])
        .collect();
    let mut max_endpoint_gap = BigRational::zero();
    for (i, e) in endpoints.iter().enumerate() {
        let left = (i > 0).then(|| *e - endpoints[i - 1]);
        let right = (i + 1 < endpoints.len()).then(|| endpoints[i + 1] - *e);
        let nearest = match (left, right) {
            (Some(l), Some(r)) => l.min(r),
            (Some(l), None) => l,
            (None, Some(r)) => r,
            (None, None) => continue,
        };
        max_endpoint_gap = max_endpoint_gap.max(nearest);
    }
    let perfect_holds = depth == 0 || max_endpoint_gap <= width_bound;

    let mut notes = Vec::new();
    if depth == 0 {
        notes.push(
            "depth 0 is the single interval [0, 1]; separation and shrinking checks are vacuous"
                .to_string(),
        );
    }

    Ok(PropertyReport {
        depth,
        closed: true,
        largest_contained_width,
        max_endpoint_gap,
        width_bound,
        disconnected_holds,
        perfect_holds,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn iv(lo: BigRational, hi: BigRational) -> RationalInterval {
        RationalInterval::new(lo, hi)
    }

    #[test]
    fn first_stages_have_the_expected_intervals() {
        assert_eq!(cantor_stage(0).unwrap().intervals, vec![iv(rat(0, 1), rat(1, 1))]);
        assert_eq!(
            cantor_stage(1).unwrap().intervals,
            vec![iv(rat(0, 1), rat(1, 3)), iv(rat(2, 3), rat(1, 1))]
        );
        assert_eq!(
            cantor_stage(2).unwrap().intervals,
            vec![
                iv(rat(0, 1), rat(1, 9)),
                iv(rat(2, 9), rat(1, 3)),
                iv(rat(2, 3), rat(7, 9)),
                iv(rat(8, 9), rat(1, 1)),
            ]
        );
    }

    #[test]
    fn each_stage_keeps_the_outer_thirds_of_the_previous() {
        for m in 0..6usize {
            let parent = cantor_stage(m).unwrap();
            let child = cantor_stage(m + 1).unwrap();
            let mut expected = Vec::new();
            for p in &parent.intervals {
                let third = p.width() / rat(3, 1);
                expected.push(iv(p.lo().clone(), p.lo() + &third));
                expected.push(iv(p.hi() - &third, p.hi().clone()));
            }
            assert_eq!(child.intervals, expected, "stage {} -> {}", m, m + 1);
        }
    }

    #[test]
    fn measure_is_two_thirds_to_the_depth() {
        assert_eq!(cantor_measure(0).unwrap(), rat(1, 1));
        assert_eq!(cantor_measure(1).unwrap(), rat(2, 3));
        assert_eq!(cantor_measure(5).unwrap(), rat(32, 243));
        for m in 0..8usize {
            let ratio = cantor_measure(m + 1).unwrap() / cantor_measure(m).unwrap();
            assert_eq!(ratio, rat(2, 3));
        }
    }

    #[test]
    fn stage_interval_count_doubles() {
        for m in 0..10usize {
            assert_eq!(cantor_stage(m).unwrap().intervals.len(), 1 << m);
        }
    }

    #[test]
    fn property_report_bounds_shrink_with_depth() {
        let r1 = property_report(1).unwrap();
        assert!(r1.closed);
        assert_eq!(r1.width_bound, rat(1, 3));
        assert_eq!(r1.largest_contained_width, rat(1, 3));
        assert_eq!(r1.max_endpoint_gap, rat(1, 3));
        assert!(r1.disconnected_holds);
        assert!(r1.perfect_holds);
        assert!(r1.notes.is_empty());

        let r2 = property_report(2).unwrap();
        assert_eq!(r2.width_bound, rat(1, 9));
        assert_eq!(r2.largest_contained_width, rat(1, 9));
        assert_eq!(r2.max_endpoint_gap, rat(1, 9));
        assert!(r2.disconnected_holds && r2.perfect_holds);
    }

    #[test]
    fn depth_zero_report_is_vacuous_but_noted() {
        let r = property_report(0).unwrap();
        assert!(r.closed && r.disconnected_holds && r.perfect_holds);
        assert_eq!(r.width_bound, rat(1, 1));
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn depth_guard_rejects_before_materializing() {
        assert_eq!(
            cantor_stage_with_limit(10, 5),
            Err(CantorError::DepthTooLarge { depth: 10, limit: 5 })
        );
        assert_eq!(
            cantor_stage(65).unwrap_err(),
            CantorError::DepthTooLarge { depth: 65, limit: 64 }
        );
        assert_eq!(
            cantor_measure_with_limit(7, 6),
            Err(CantorError::DepthTooLarge { depth: 7, limit: 6 })
        );
        assert!(property_report_with_limit(3, 3).is_ok());
    }
}
