//! Constructive separating functions on normal finite spaces.
//!
//! Given disjoint nonempty closed sets A and B, a family of opens U_q indexed
//! by dyadic rationals q in [0,1] is built so that A ⊆ U_0, B misses U_1, and
//! closure(U_q) ⊆ U_{q'} whenever q < q'. The induced function
//! f(x) = min{q : x ∈ U_q} (or 1) is 0 on A, 1 on B, and d(x,y) = |f(x)−f(y)|
//! is an exact pseudometric.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Signed;

use crate::metric::{verify_pseudometric, MetricVerdict, PseudoMetricTable};
use crate::rational::rat;
use crate::topology::{FiniteSpace, NormalityReport, Subset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UrysohnError {
    #[error("space is not normal: closed sets {closed_a:?} and {closed_b:?} have no disjoint open covers")]
    NotNormal { closed_a: Vec<String>, closed_b: Vec<String> },
    #[error("side {side} is empty after taking closures")]
    EmptySide { side: &'static str },
    #[error("sides intersect after taking closures; common points {common:?}")]
    NotDisjoint { common: Vec<String> },
    #[error("refinement depth must be at least 1")]
    DepthZero,
    #[error("point {0:?} is missing from the separating function")]
    PointMissing(String),
    #[error(
        "internal consistency failure: no open interpolates between {lower:?} and {upper:?} in a normal space"
    )]
    NoInterpolatingOpen { lower: Vec<String>, upper: Vec<String> },
}

/// Nested opens indexed by dyadic rationals in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicFamily {
    space: FiniteSpace,
    side_a: Subset,
    side_b: Subset,
    levels: BTreeMap<BigRational, Subset>,
    requested_depth: u32,
    depth: u32,
    stabilized: bool,
    replaced_a: bool,
    replaced_b: bool,
}

impl DyadicFamily {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// The closed set carried to value 0 (the closure of the requested A).
    pub fn side_a(&self) -> Subset {
        self.side_a
    }

    /// The closed set carried to value 1 (the closure of the requested B).
    pub fn side_b(&self) -> Subset {
        self.side_b
    }

    /// All levels, keyed by the dyadic index q, ascending.
    pub fn levels(&self) -> &BTreeMap<BigRational, Subset> {
        &self.levels
    }

    pub fn level(&self, q: &BigRational) -> Option<Subset> {
        self.levels.get(q).copied()
    }

    /// Depth actually reached: the last refinement level that was built.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn requested_depth(&self) -> u32 {
        self.requested_depth
    }

    /// True when refinement stopped early because a level reproduced its
    /// parent level exactly.
    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    /// True when the requested A was not closed and its closure was used.
    pub fn replaced_a(&self) -> bool {
        self.replaced_a
    }

    pub fn replaced_b(&self) -> bool {
        self.replaced_b
    }

    pub fn function(&self) -> SeparatingFunction {
        urysohn_function(self)
    }
}

/// Canonically smallest open W with `lower ⊆ W` and `closure(W) ⊆ upper`.
/// `lower` must be closed for the construction invariants to hold.
fn interpolate(space: &FiniteSpace, lower: Subset, upper: Subset) -> Option<Subset> {
    space
        .opens()
        .iter()
        .copied()
        .find(|&w| lower.is_subset_of(w) && space.closure(w).is_subset_of(upper))
}

/// Builds the dyadic family for closed sides `a` (value 0) and `b`
/// (value 1). Non-closed inputs are replaced by their closures, recorded on
/// the result. Refinement inserts one midpoint level per step and stops at
/// `depth` or as soon as a level adds no new open.
pub fn build_dyadic_family(
    space: &FiniteSpace,
    a: Subset,
    b: Subset,
    depth: u32,
) -> Result<DyadicFamily, UrysohnError> {
    if depth == 0 {
        return Err(UrysohnError::DepthZero);
    }
    let closed_a = space.closure(a);
    let closed_b = space.closure(b);
    let replaced_a = closed_a != a;
    let replaced_b = closed_b != b;
    if closed_a.is_empty() {
        return Err(UrysohnError::EmptySide { side: "A" });
    }
    if closed_b.is_empty() {
        return Err(UrysohnError::EmptySide { side: "B" });
    }
    let common = closed_a.intersection(closed_b);
    if !common.is_empty() {
        return Err(UrysohnError::NotDisjoint { common: space.names(common) });
    }
    if let NormalityReport::NotNormal { closed_a, closed_b } = space.is_normal() {
        return Err(UrysohnError::NotNormal {
            closed_a: space.names(closed_a),
            closed_b: space.names(closed_b),
        });
    }

    let complement_b = space.complement(closed_b);
    let u1 = if space.is_open(complement_b) {
        complement_b
    } else {
        space
            .separate(closed_a, closed_b)
            .expect("normal space separates every disjoint closed pair")
            .0
    };
    let u0 = interpolate(space, closed_a, u1).ok_or_else(|| UrysohnError::NoInterpolatingOpen {
        lower: space.names(closed_a),
        upper: space.names(u1),
    })?;

    let mut levels = BTreeMap::new();
    levels.insert(rat(0, 1), u0);
    levels.insert(rat(1, 1), u1);
    let mut achieved = 0;
    let mut stabilized = false;
    for d in 1..=depth {
        let snapshot: Vec<(BigRational, Subset)> =
            levels.iter().map(|(q, &u)| (q.clone(), u)).collect();
        let mut inserted = Vec::with_capacity(snapshot.len() - 1);
        let mut all_reproduced = true;
        for pair in snapshot.windows(2) {
            let (ref q_lo, u_lo) = pair[0];
            let (ref q_hi, u_hi) = pair[1];
            let mid = (q_lo + q_hi) / rat(2, 1);
            let w = interpolate(space, space.closure(u_lo), u_hi).ok_or_else(|| {
                UrysohnError::NoInterpolatingOpen {
                    lower: space.names(space.closure(u_lo)),
                    upper: space.names(u_hi),
                }
            })?;
            if w != u_lo && w != u_hi {
                all_reproduced = false;
            }
            inserted.push((mid, w));
        }
        levels.extend(inserted);
        achieved = d;
        if all_reproduced {
            stabilized = true;
            break;
        }
    }

    Ok(DyadicFamily {
        space: space.clone(),
        side_a: closed_a,
        side_b: closed_b,
        levels,
        requested_depth: depth,
        depth: achieved,
        stabilized,
        replaced_a,
        replaced_b,
    })
}

/// f with f ≡ 0 on A and f ≡ 1 on B, exact dyadic values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingFunction {
    values: BTreeMap<String, BigRational>,
    family: DyadicFamily,
}

impl SeparatingFunction {
    pub fn value(&self, point: &str) -> Option<&BigRational> {
        self.values.get(point)
    }

    pub fn values(&self) -> &BTreeMap<String, BigRational> {
        &self.values
    }

    pub fn family(&self) -> &DyadicFamily {
        &self.family
    }
}

/// f(x) = min{q : x ∈ U_q}, or 1 when x lies in no level.
pub fn urysohn_function(family: &DyadicFamily) -> SeparatingFunction {
    let space = family.space();
    let mut values = BTreeMap::new();
    for (i, point) in space.points().iter().enumerate() {
        let value = family
            .levels
            .iter()
            .find(|(_, u)| u.contains_index(i))
            .map(|(q, _)| q.clone())
            .unwrap_or_else(|| rat(1, 1));
        values.insert(point.clone(), value);
    }
    SeparatingFunction { values, family: family.clone() }
}

/// The distance table d(x, y) = |f(x) − f(y)| plus its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPseudometric {
    pub table: PseudoMetricTable,
    /// Metric exactly when f is injective on the points; otherwise the
    /// equal-value classes are listed.
    pub verdict: MetricVerdict,
}

/// Builds the exact distance table over `points` (order preserved).
pub fn induced_pseudometric(
    f: &SeparatingFunction,
    points: &[String],
) -> Result<InducedPseudometric, UrysohnError> {
    let mut values = Vec::with_capacity(points.len());
    for p in points {
        values.push(f.value(p).ok_or_else(|| UrysohnError::PointMissing(p.clone()))?.clone());
    }
    let d: Vec<Vec<BigRational>> = values
        .iter()
        .map(|x| values.iter().map(|y| (x - y).abs()).collect())
        .collect();
    let table = PseudoMetricTable { points: points.to_vec(), d };
    let report = verify_pseudometric(&table).expect("table is square by construction");
    let verdict = report
        .verdict
        .expect("|f(x) - f(y)| satisfies the pseudometric axioms");
    Ok(InducedPseudometric { table, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::FiniteSpace;

    fn space(points: &[&str], opens: &[&[&str]]) -> FiniteSpace {
        FiniteSpace::new(
            points.iter().map(|s| s.to_string()).collect(),
            opens.iter().map(|o| o.iter().map(|s| s.to_string()).collect()).collect(),
        )
        .unwrap()
    }

    fn sub(space: &FiniteSpace, names: &[&str]) -> Subset {
        space.subset_from_names(names.iter().copied()).unwrap()
    }

    fn split_space() -> FiniteSpace {
        space(&["a", "b", "c"], &[&[], &["a"], &["b", "c"], &["a", "b", "c"]])
    }

    #[test]
    fn forced_family_stabilizes_at_depth_one() {
        let s = split_space();
        let family =
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["b", "c"]), 2).unwrap();
        assert_eq!(family.level(&rat(0, 1)), Some(sub(&s, &["a"])));
        assert_eq!(family.level(&rat(1, 2)), Some(sub(&s, &["a"])));
        assert_eq!(family.level(&rat(1, 1)), Some(sub(&s, &["a"])));
        assert_eq!(family.depth(), 1);
        assert_eq!(family.requested_depth(), 2);
        assert!(family.stabilized());
        assert!(!family.replaced_a());
        assert!(!family.replaced_b());

        let f = family.function();
        assert_eq!(f.value("a"), Some(&rat(0, 1)));
        assert_eq!(f.value("b"), Some(&rat(1, 1)));
        assert_eq!(f.value("c"), Some(&rat(1, 1)));
    }

    #[test]
    fn discrete_two_points_use_the_complement_of_b() {
        let s = space(&["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]]);
        let family = build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["b"]), 1).unwrap();
        assert_eq!(family.level(&rat(0, 1)), Some(sub(&s, &["a"])));
        assert_eq!(family.level(&rat(1, 1)), Some(sub(&s, &["a"])));

        let induced = induced_pseudometric(&family.function(), s.points()).unwrap();
        assert_eq!(induced.verdict, MetricVerdict::Metric);
        assert_eq!(induced.table.d[0][1], rat(1, 1));
    }

    #[test]
    fn non_closed_sides_are_replaced_by_closures() {
        let s = split_space();
        // {b} is not closed here; closure({b}) = {b,c}.
        let family = build_dyadic_family(&s, sub(&s, &["b"]), sub(&s, &["a"]), 1).unwrap();
        assert!(family.replaced_a());
        assert!(!family.replaced_b());
        assert_eq!(family.side_a(), sub(&s, &["b", "c"]));
        let f = family.function();
        assert_eq!(f.value("b"), Some(&rat(0, 1)));
        assert_eq!(f.value("c"), Some(&rat(0, 1)));
        assert_eq!(f.value("a"), Some(&rat(1, 1)));
    }

    #[test]
    fn rejects_bad_sides_and_depths() {
        let s = split_space();
        assert_eq!(
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["a", "b"]), 1),
            Err(UrysohnError::NotDisjoint { common: vec!["a".into()] })
        );
        assert_eq!(
            build_dyadic_family(&s, Subset::EMPTY, sub(&s, &["a"]), 1),
            Err(UrysohnError::EmptySide { side: "A" })
        );
        assert_eq!(
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["b", "c"]), 0),
            Err(UrysohnError::DepthZero)
        );
    }

    #[test]
    fn rejects_non_normal_spaces() {
        let s = space(
            &["a", "b", "c"],
            &[&[], &["b"], &["a", "b"], &["b", "c"], &["a", "b", "c"]],
        );
        assert_eq!(
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["c"]), 1),
            Err(UrysohnError::NotNormal {
                closed_a: vec!["a".into()],
                closed_b: vec!["c".into()]
            })
        );
    }

    #[test]
    fn induced_table_reports_equal_value_classes() {
        let s = split_space();
        let family =
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["b", "c"]), 2).unwrap();
        let induced = induced_pseudometric(&family.function(), s.points()).unwrap();
        assert_eq!(induced.table.d[0][1], rat(1, 1));
        assert_eq!(induced.table.d[1][2], rat(0, 1));
        assert_eq!(
            induced.verdict,
            MetricVerdict::Pseudometric { classes: vec![vec!["b".into(), "c".into()]] }
        );

        let err =
            induced_pseudometric(&family.function(), &["a".into(), "q".into()]).unwrap_err();
        assert_eq!(err, UrysohnError::PointMissing("q".into()));
    }

    #[test]
    fn levels_nest_with_closure_containment() {
        let s = split_space();
        let family =
            build_dyadic_family(&s, sub(&s, &["a"]), sub(&s, &["b", "c"]), 3).unwrap();
        let levels: Vec<(&BigRational, &Subset)> = family.levels().iter().collect();
        for pair in levels.windows(2) {
            let (q_lo, &u_lo) = pair[0];
            let (q_hi, &u_hi) = pair[1];
            assert!(q_lo < q_hi);
            assert!(u_lo.is_subset_of(u_hi));
            assert!(s.closure(u_lo).is_subset_of(u_hi));
        }
    }
}
