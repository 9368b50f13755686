//! Finite topological spaces: explicit open-set families over a small point
//! set, with closure/interior, normality checking, neighborhood queries,
//! greedy descending open chains, and exhaustive enumeration.
//!
//! Points are opaque strings; subsets are bitmasks over point indices,
//! ordered by cardinality and then lexicographically on the ascending index
//! list ("canonical order"). All operations are pure functions of immutable
//! values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;

/// Hard cap of the bitmask representation.
pub const MAX_POINTS: usize = 64;

/// Enumerating all subsets (for the loose neighborhood kind) is exponential;
/// refuse beyond this many points.
const NEIGHBORHOOD_ENUM_LIMIT: usize = 20;

/// Exhaustive topology enumeration is doubly exponential; 4 points is the
/// largest size that stays trivial (2^14 candidate families).
const ENUMERATION_LIMIT: usize = 4;

/// A subset of a space's points, stored as a bitmask over point indices.
///
/// Ordering is canonical: by cardinality, then lexicographically on the
/// ascending list of member indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Subset {
        Subset(mask)
    }

    pub fn singleton(index: usize) -> Subset {
        assert!(index < MAX_POINTS, "point index {index} out of range");
        Subset(1 << index)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Subset {
        let mut mask = 0u64;
        for i in indices {
            assert!(i < MAX_POINTS, "point index {i} out of range");
            mask |= 1 << i;
        }
        Subset(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_index(self, index: usize) -> bool {
        index < MAX_POINTS && self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        bits::indices(self.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        bits::is_subset(self.0, other.0)
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.0 != other.0 && bits::is_subset(self.0, other.0)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        bits::canonical_mask_cmp(self.0, other.0)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// One reason a family of subsets fails to be a topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyViolation {
    MissingUnion { s: Vec<String>, t: Vec<String>, union: Vec<String> },
    MissingIntersection { s: Vec<String>, t: Vec<String>, intersection: Vec<String> },
    MissingEmptySet,
    MissingFullSet,
}

fn braced(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::MissingUnion { s, t, union } => {
                write!(f, "missing union {} of {} and {}", braced(union), braced(s), braced(t))
            }
            FamilyViolation::MissingIntersection { s, t, intersection } => write!(
                f,
                "missing intersection {} of {} and {}",
                braced(intersection),
                braced(s),
                braced(t)
            ),
            FamilyViolation::MissingEmptySet => write!(f, "missing empty set"),
            FamilyViolation::MissingFullSet => write!(f, "missing full set"),
        }
    }
}

fn format_violations(violations: &[FamilyViolation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("a space needs at least one point")]
    EmptyPointSet,
    #[error("{count} points exceed the {limit}-point representation limit")]
    TooManyPoints { count: usize, limit: usize },
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("subset index {index} is outside the {points}-point universe")]
    IndexOutOfRange { index: usize, points: usize },
    #[error("invalid open-set family: {}", format_violations(.0))]
    InvalidFamily(Vec<FamilyViolation>),
    #[error("no open set contains {x:?} but not {excluded:?}; the points are topologically inseparable")]
    Inseparable { x: String, excluded: String },
    #[error("chain endpoints must be distinct, got {0:?} twice")]
    PointsNotDistinct(String),
    #[error("topology enumeration supports 1 through {limit} points, got {n}")]
    EnumerationOutOfRange { n: usize, limit: usize },
    #[error("subset-neighborhood enumeration is limited to {limit} points, space has {points}")]
    NeighborhoodTooLarge { points: usize, limit: usize },
}

/// Which sets count as neighborhoods of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborhoodKind {
    /// Any subset of the universe containing the point and at least one
    /// other element, open or not.
    AnySet,
    /// Open sets containing the point.
    Open,
}

/// A strictly decreasing chain of open sets around a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosenessChain {
    /// Each step properly contains the next; the target point is in every
    /// step and the excluded point is in none.
    pub steps: Vec<Subset>,
    /// True when no further proper step exists after the last one taken.
    pub terminated: bool,
}

impl ClosenessChain {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }
}

/// How one disjoint closed pair was separated by disjoint opens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedPair {
    pub closed_a: Subset,
    pub closed_b: Subset,
    pub open_u: Subset,
    pub open_v: Subset,
}

/// Outcome of the normality check over all disjoint nonempty closed pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalityReport {
    /// One witness per pair, deterministic: the first separating open pair
    /// in canonical order.
    Normal { separations: Vec<SeparatedPair> },
    /// The first pair (in canonical order) with no disjoint open covers.
    NotNormal { closed_a: Subset, closed_b: Subset },
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityReport::Normal { .. })
    }
}

/// A finite topological space: named points plus a validated family of open
/// sets containing ∅ and the full set and closed under union/intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    /// Sorted in canonical order, no duplicates.
    opens: Vec<Subset>,
}

impl FiniteSpace {
    /// Strict constructor from named subsets. The family must already
    /// contain ∅ and the full set; see [`SpaceDoc::into_space`] for the
    /// lenient document form.
    pub fn new(points: Vec<String>, opens: Vec<Vec<String>>) -> Result<Self, TopologyError> {
        let index = point_index_map(&points)?;
        let mut masks = Vec::with_capacity(opens.len());
        for subset in &opens {
            masks.push(resolve_names(&index, subset.iter().map(String::as_str))?);
        }
        FiniteSpace::from_masks(points, masks)
    }

    /// Strict constructor from raw bitmasks (bit i = `points[i]`).
    pub fn from_masks(
        points: Vec<String>,
        masks: impl IntoIterator<Item = u64>,
    ) -> Result<Self, TopologyError> {
        if points.is_empty() {
            return Err(TopologyError::EmptyPointSet);
        }
        if points.len() > MAX_POINTS {
            return Err(TopologyError::TooManyPoints { count: points.len(), limit: MAX_POINTS });
        }
        point_index_map(&points)?;
        let full = full_mask(points.len());
        let mut opens: Vec<u64> = masks.into_iter().collect();
        for &mask in &opens {
            if mask & !full != 0 {
                let index = (mask & !full).trailing_zeros() as usize;
                return Err(TopologyError::IndexOutOfRange { index, points: points.len() });
            }
        }
        opens.sort_unstable_by(|&a, &b| bits::canonical_mask_cmp(a, b));
        opens.dedup();

        let space = FiniteSpace { points, opens: opens.iter().map(|&m| Subset(m)).collect() };
        let mut violations = Vec::new();
        if let Some((s, t, union)) = space.first_missing(|a, b| a | b) {
            violations.push(FamilyViolation::MissingUnion {
                s: space.names(s),
                t: space.names(t),
                union: space.names(union),
            });
        }
        if let Some((s, t, intersection)) = space.first_missing(|a, b| a & b) {
            violations.push(FamilyViolation::MissingIntersection {
                s: space.names(s),
                t: space.names(t),
                intersection: space.names(intersection),
            });
        }
        if !space.is_open(Subset::EMPTY) {
            violations.push(FamilyViolation::MissingEmptySet);
        }
        if !space.is_open(Subset(full)) {
            violations.push(FamilyViolation::MissingFullSet);
        }
        if !violations.is_empty() {
            return Err(TopologyError::InvalidFamily(violations));
        }
        Ok(space)
    }

    /// First pair (canonical order) whose combination is absent, if any.
    fn first_missing(&self, combine: impl Fn(u64, u64) -> u64) -> Option<(Subset, Subset, Subset)> {
        for (i, &s) in self.opens.iter().enumerate() {
            for &t in &self.opens[i + 1..] {
                let c = Subset(combine(s.0, t.0));
                if !self.is_open(c) {
                    return Some((s, t, c));
                }
            }
        }
        None
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn universe(&self) -> Subset {
        Subset(full_mask(self.points.len()))
    }

    pub fn point_index(&self, name: &str) -> Result<usize, TopologyError> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| TopologyError::UnknownPoint(name.to_string()))
    }

    pub fn subset_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Subset, TopologyError> {
        let mut mask = 0u64;
        for name in names {
            mask |= 1 << self.point_index(name)?;
        }
        Ok(Subset(mask))
    }

    /// Member names of a subset, in point order.
    pub fn names(&self, s: Subset) -> Vec<String> {
        s.indices().map(|i| self.points[i].clone()).collect()
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(self.complement(s))
    }

    pub fn complement(&self, s: Subset) -> Subset {
        debug_assert!(s.is_subset_of(self.universe()));
        Subset(!s.0 & self.universe().0)
    }

    /// Complements of the opens, in canonical order.
    pub fn closed_sets(&self) -> Vec<Subset> {
        let mut closed: Vec<Subset> = self.opens.iter().map(|&o| self.complement(o)).collect();
        closed.sort_unstable();
        closed
    }

    fn assert_in_universe(&self, s: Subset) {
        assert!(
            s.is_subset_of(self.universe()),
            "subset {s:?} has members outside the {}-point universe",
            self.points.len()
        );
    }

    /// Smallest closed superset of `s`. Panics if `s` has out-of-universe
    /// members.
    pub fn closure(&self, s: Subset) -> Subset {
        self.assert_in_universe(s);
        let mut acc = self.universe();
        for &open in &self.opens {
            let closed = self.complement(open);
            if s.is_subset_of(closed) {
                acc = acc.intersection(closed);
            }
        }
        acc
    }

    /// Union of all open subsets of `s`. Panics if `s` has out-of-universe
    /// members.
    pub fn interior(&self, s: Subset) -> Subset {
        self.assert_in_universe(s);
        let mut acc = Subset::EMPTY;
        for &open in &self.opens {
            if open.is_subset_of(s) {
                acc = acc.union(open);
            }
        }
        acc
    }

    /// First (in canonical pair order) disjoint open pair covering `a` and
    /// `b` respectively, if one exists.
    pub(crate) fn separate(&self, a: Subset, b: Subset) -> Option<(Subset, Subset)> {
        for &u in &self.opens {
            if !a.is_subset_of(u) {
                continue;
            }
            for &v in &self.opens {
                if b.is_subset_of(v) && u.intersection(v).is_empty() {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Checks that every pair of disjoint nonempty closed sets has disjoint
    /// open covers. Empty closed sets are skipped (trivially separable).
    pub fn is_normal(&self) -> NormalityReport {
        let closed = self.closed_sets();
        let mut separations = Vec::new();
        for (i, &a) in closed.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for &b in &closed[i + 1..] {
                if b.is_empty() || !a.intersection(b).is_empty() {
                    continue;
                }
                match self.separate(a, b) {
                    Some((open_u, open_v)) => separations.push(SeparatedPair {
                        closed_a: a,
                        closed_b: b,
                        open_u,
                        open_v,
                    }),
                    None => return NormalityReport::NotNormal { closed_a: a, closed_b: b },
                }
            }
        }
        NormalityReport::Normal { separations }
    }

    /// Neighborhoods of `x`, in canonical order. `AnySet` enumerates every
    /// subset of cardinality ≥ 2 containing `x`; `Open` filters the opens.
    pub fn neighborhoods_of(
        &self,
        x: &str,
        kind: NeighborhoodKind,
    ) -> Result<Vec<Subset>, TopologyError> {
        let xi = self.point_index(x)?;
        match kind {
            NeighborhoodKind::Open => {
                Ok(self.opens.iter().copied().filter(|o| o.contains_index(xi)).collect())
            }
            NeighborhoodKind::AnySet => {
                let n = self.points.len();
                if n > NEIGHBORHOOD_ENUM_LIMIT {
                    return Err(TopologyError::NeighborhoodTooLarge {
                        points: n,
                        limit: NEIGHBORHOOD_ENUM_LIMIT,
                    });
                }
                let bit = 1u64 << xi;
                let rest = self.universe().0 & !bit;
                let mut out = Vec::new();
                let mut sub = rest;
                loop {
                    if sub != 0 {
                        out.push(Subset(sub | bit));
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                out.sort_unstable();
                Ok(out)
            }
        }
    }

    /// Greedy strictly decreasing chain of opens containing `x`, starting
    /// from the largest open that avoids `excluded`; at every step the
    /// largest proper open subset still containing `x` is chosen (ties go to
    /// the canonically smallest). With `max_len = 0` an empty chain is
    /// returned without any separability check.
    pub fn closeness_chain(
        &self,
        x: &str,
        excluded: &str,
        max_len: usize,
    ) -> Result<ClosenessChain, TopologyError> {
        let xi = self.point_index(x)?;
        let ei = self.point_index(excluded)?;
        if xi == ei {
            return Err(TopologyError::PointsNotDistinct(x.to_string()));
        }
        if max_len == 0 {
            return Ok(ClosenessChain { steps: Vec::new(), terminated: false });
        }
        let first = self.best_step(|o| o.contains_index(xi) && !o.contains_index(ei));
        let Some(first) = first else {
            return Err(TopologyError::Inseparable {
                x: x.to_string(),
                excluded: excluded.to_string(),
            });
        };
        let mut steps = vec![first];
        while steps.len() < max_len {
            let last = *steps.last().expect("chain is nonempty");
            match self.best_step(|o| o.contains_index(xi) && o.is_proper_subset_of(last)) {
                Some(next) => steps.push(next),
                None => break,
            }
        }
        let last = *steps.last().expect("chain is nonempty");
        let terminated = self
            .best_step(|o| o.contains_index(xi) && o.is_proper_subset_of(last))
            .is_none();
        Ok(ClosenessChain { steps, terminated })
    }

    /// Largest-cardinality open satisfying `pred`; among ties, the
    /// canonically smallest. Relies on `opens` being canonically sorted, so
    /// the first candidate of the top cardinality class wins.
    fn best_step(&self, pred: impl Fn(Subset) -> bool) -> Option<Subset> {
        let mut best: Option<Subset> = None;
        for &open in &self.opens {
            if pred(open) && best.is_none_or(|b| open.len() > b.len()) {
                best = Some(open);
            }
        }
        best
    }

    pub fn to_doc(&self) -> SpaceDoc {
        SpaceDoc {
            points: self.points.clone(),
            opens: self.opens.iter().map(|&o| self.names(o)).collect(),
        }
    }
}

fn full_mask(n: usize) -> u64 {
    debug_assert!(n >= 1 && n <= MAX_POINTS);
    if n == MAX_POINTS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn point_index_map(points: &[String]) -> Result<BTreeMap<&str, usize>, TopologyError> {
    let mut index = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.as_str(), i).is_some() {
            return Err(TopologyError::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

fn resolve_names<'a>(
    index: &BTreeMap<&str, usize>,
    names: impl IntoIterator<Item = &'a str>,
) -> Result<u64, TopologyError> {
    let mut mask = 0u64;
    for name in names {
        match index.get(name) {
            Some(&i) => mask |= 1 << i,
            None => return Err(TopologyError::UnknownPoint(name.to_string())),
        }
    }
    Ok(mask)
}

/// JSON document form of a space: `{"points": [...], "opens": [[...], ...]}`.
/// The document may omit ∅ and the full set; they are added during
/// validation with a note.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceDoc {
    /// Lenient validation: resolves names, silently deduplicates, inserts a
    /// missing ∅ or full set (recording a note for each), then applies the
    /// strict closure checks.
    pub fn into_space(self) -> Result<(FiniteSpace, Vec<String>), TopologyError> {
        let SpaceDoc { points, opens } = self;
        if points.is_empty() {
            return Err(TopologyError::EmptyPointSet);
        }
        if points.len() > MAX_POINTS {
            return Err(TopologyError::TooManyPoints { count: points.len(), limit: MAX_POINTS });
        }
        let index = point_index_map(&points)?;
        let mut masks = Vec::with_capacity(opens.len() + 2);
        for subset in &opens {
            masks.push(resolve_names(&index, subset.iter().map(String::as_str))?);
        }
        let full = full_mask(points.len());
        let mut notes = Vec::new();
        if !masks.contains(&0) {
            masks.push(0);
            notes.push("added missing empty set".to_string());
        }
        if !masks.contains(&full) {
            masks.push(full);
            notes.push("added missing full set".to_string());
        }
        let space = FiniteSpace::from_masks(points, masks)?;
        Ok((space, notes))
    }
}

/// Every topology on `n` labeled points (`"a"`, `"b"`, …), in ascending
/// order of the family's membership code over intermediate subsets. Counts
/// for n = 1..4 are 1, 4, 29, 355.
pub fn enumerate_topologies(
    n: usize,
) -> Result<impl Iterator<Item = FiniteSpace>, TopologyError> {
    if n < 1 || n > ENUMERATION_LIMIT {
        return Err(TopologyError::EnumerationOutOfRange { n, limit: ENUMERATION_LIMIT });
    }
    let names: Vec<String> = ["a", "b", "c", "d"][..n].iter().map(|s| s.to_string()).collect();
    let full = full_mask(n);
    // Intermediate subsets are the masks 1 ..= full-1; bit i of the code
    // selects mask i+1. ∅ and the full set are always present.
    let intermediates = (full - 1) as u32;
    Ok((0u64..1 << intermediates).filter_map(move |code| {
        let mut masks = vec![0u64, full];
        for i in 0..intermediates {
            if code >> i & 1 == 1 {
                masks.push(u64::from(i) + 1);
            }
        }
        closed_family(&masks, full).then(|| {
            FiniteSpace::from_masks(names.clone(), masks).expect("family pre-validated")
        })
    }))
}

fn closed_family(masks: &[u64], full: u64) -> bool {
    debug_assert!(full < 16);
    let mut have = [false; 16];
    for &m in masks {
        have[m as usize] = true;
    }
    masks
        .iter()
        .all(|&s| masks.iter().all(|&t| have[(s | t) as usize] && have[(s & t) as usize]))
}
