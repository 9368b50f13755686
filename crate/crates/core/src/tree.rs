//! Iterated-cover refinement trees.
//!
//! A tree covers its universe: every node's children jointly cover the node
//! (overlaps allowed), and each child is a nonempty proper subset of its
//! parent. Elements get addresses (child-index paths to leaves), addresses
//! map to exact rational subintervals of a base interval, and the tree
//! induces both a midpoint pseudometric and, after truncation at depth m,
//! interval-valued distance brackets.

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigUint;
use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::interval::{interval_distance, IntervalDistance, RationalInterval};
use crate::metric::{verify_pseudometric, MetricVerdict, PseudoMetricTable};
use crate::rational::rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("universe must be nonempty")]
    EmptyUniverse,
    #[error("duplicate element {0:?} in universe")]
    DuplicateElement(String),
    #[error("unknown element {name:?} in node {path:?}")]
    UnknownMember { path: Vec<usize>, name: String },
    #[error("root members must equal the universe; missing {missing:?}")]
    RootMismatch { missing: Vec<String> },
    #[error("child {path:?} is empty")]
    EmptyChild { path: Vec<usize> },
    #[error("child {path:?} reaches outside its parent: {outside:?}")]
    ChildNotSubset { path: Vec<usize>, outside: Vec<String> },
    #[error("child {path:?} equals its parent; children must be proper subsets")]
    ChildEqualsParent { path: Vec<usize> },
    #[error("children of node {path:?} do not cover it; missing {missing:?}")]
    CoverGap { path: Vec<usize>, missing: Vec<String> },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("address {address:?} is invalid: index {index} at depth {depth} exceeds the node's {children} children")]
    InvalidAddress { address: Vec<usize>, depth: usize, index: usize, children: usize },
    #[error("base interval must have positive width")]
    DegenerateBase,
    #[error("truncation depth must be at least 1")]
    TruncationDepthZero,
}

/// A path of child indices from the root. Lexicographic order, with a
/// prefix sorting before its extensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(pub Vec<usize>);

impl Address {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All maximal addresses of one element plus the canonical
/// (lexicographically smallest) one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementAddresses {
    pub all: Vec<Address>,
    pub canonical: Address,
}

/// How a node's interval is divided among its k children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// k equal closed pieces in child order; siblings touch at endpoints.
    Contiguous,
    /// 2k−1 equal pieces, children take pieces 0, 2, 4, …, leaving gaps
    /// between siblings. For k = 2 this is the middle-thirds split.
    Gapped,
}

impl SplitStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SplitStrategy::Contiguous => "contiguous",
            SplitStrategy::Gapped => "gapped",
        }
    }
}

/// One node: a set of element indices plus ordered children (none = leaf).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverNode {
    members: BTreeSet<u32>,
    children: Vec<CoverNode>,
}

impl CoverNode {
    pub fn members(&self) -> &BTreeSet<u32> {
        &self.members
    }

    pub fn children(&self) -> &[CoverNode] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Element-to-midpoint embedding of a tree into its base interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidpointMetric {
    /// d(e, e') = |φ(e) − φ(e')| over the universe, in universe order.
    pub table: PseudoMetricTable,
    /// Metric exactly when every leaf is a singleton and canonical
    /// addresses are distinct; otherwise pseudometric with the equal-φ
    /// classes (which may be empty when only redundant non-singleton
    /// leaves exist).
    pub verdict: MetricVerdict,
    /// φ: element → midpoint of its canonical address interval.
    pub positions: BTreeMap<String, BigRational>,
    /// Addresses of the non-singleton leaves, in address order.
    pub offending_leaves: Vec<Address>,
}

/// Pairwise [d_min, d_max] brackets at truncation depth m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDistanceTable {
    pub elements: Vec<String>,
    pub entries: Vec<Vec<IntervalDistance>>,
    pub m: usize,
    pub strategy: SplitStrategy,
    pub base: RationalInterval,
}

/// JSON document form of a tree:
/// `{"universe": [...], "root": {"members": [...], "children": [...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub universe: Vec<String>,
    pub root: NodeDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeDoc>,
}

/// A validated refinement tree over a named universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTree {
    universe: Vec<String>,
    root: CoverNode,
}

impl RefinementTree {
    pub fn from_doc(doc: &TreeDoc) -> Result<Self, TreeError> {
        if doc.universe.is_empty() {
            return Err(TreeError::EmptyUniverse);
        }
        let mut index: BTreeMap<&str, u32> = BTreeMap::new();
        for (i, name) in doc.universe.iter().enumerate() {
            if index.insert(name.as_str(), i as u32).is_some() {
                return Err(TreeError::DuplicateElement(name.clone()));
            }
        }
        let mut path = Vec::new();
        let root = build_node(&doc.root, &index, &doc.universe, &mut path)?;
        if root.members.len() != doc.universe.len() {
            let missing = doc
                .universe
                .iter()
                .enumerate()
                .filter(|(i, _)| !root.members.contains(&(*i as u32)))
                .map(|(_, name)| name.clone())
                .collect();
            return Err(TreeError::RootMismatch { missing });
        }
        Ok(RefinementTree { universe: doc.universe.clone(), root })
    }

    pub fn to_doc(&self) -> TreeDoc {
        TreeDoc { universe: self.universe.clone(), root: self.node_doc(&self.root) }
    }

    fn node_doc(&self, node: &CoverNode) -> NodeDoc {
        NodeDoc {
            members: node.members.iter().map(|&i| self.universe[i as usize].clone()).collect(),
            children: node.children.iter().map(|c| self.node_doc(c)).collect(),
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn root(&self) -> &CoverNode {
        &self.root
    }

    pub fn element_names(&self, node: &CoverNode) -> Vec<String> {
        node.members.iter().map(|&i| self.universe[i as usize].clone()).collect()
    }

    /// Maximum leaf depth.
    pub fn depth(&self) -> usize {
        fn go(node: &CoverNode) -> usize {
            node.children.iter().map(|c| 1 + go(c)).max().unwrap_or(0)
        }
        go(&self.root)
    }

    /// All leaf addresses whose node contains `e` (in address order; never
    /// empty thanks to the cover invariant), plus the canonical first one.
    pub fn addresses_of(&self, e: &str) -> Result<ElementAddresses, TreeError> {
        let idx = self
            .universe
            .iter()
            .position(|u| u == e)
            .ok_or_else(|| TreeError::UnknownElement(e.to_string()))? as u32;
        let mut all = Vec::new();
        let mut prefix = Vec::new();
        collect_addresses(&self.root, idx, &mut prefix, &mut all);
        let canonical = all
            .first()
            .cloned()
            .expect("cover invariant: every element reaches a leaf");
        Ok(ElementAddresses { all, canonical })
    }

    /// Recursively subdivides `base` along `address`, one split per node.
    pub fn interval_of(
        &self,
        address: &Address,
        base: &RationalInterval,
        strategy: SplitStrategy,
    ) -> Result<RationalInterval, TreeError> {
        if base.width().is_zero() {
            return Err(TreeError::DegenerateBase);
        }
        let mut node = &self.root;
        let mut current = base.clone();
        for (depth, &index) in address.indices().iter().enumerate() {
            let k = node.children.len();
            if index >= k {
                return Err(TreeError::InvalidAddress {
                    address: address.0.clone(),
                    depth,
                    index,
                    children: k,
                });
            }
            current = split_piece(&current, k, index, strategy);
            node = &node.children[index];
        }
        Ok(current)
    }

    /// φ(e) = midpoint of e's canonical interval; d = |φ − φ|. The verdict
    /// is structural: metric iff every leaf is a singleton and canonical
    /// addresses are distinct.
    pub fn midpoint_metric(
        &self,
        base: &RationalInterval,
        strategy: SplitStrategy,
    ) -> Result<MidpointMetric, TreeError> {
        if base.width().is_zero() {
            return Err(TreeError::DegenerateBase);
        }
        let mut positions = BTreeMap::new();
        let mut values = Vec::with_capacity(self.universe.len());
        let mut seen = BTreeSet::new();
        let mut distinct = true;
        for e in &self.universe {
            let addresses = self.addresses_of(e)?;
            if !seen.insert(addresses.canonical.clone()) {
                distinct = false;
            }
            let phi = self.interval_of(&addresses.canonical, base, strategy)?.midpoint();
            positions.insert(e.clone(), phi.clone());
            values.push(phi);
        }
        let d: Vec<Vec<BigRational>> = values
            .iter()
            .map(|x| {
                values
                    .iter()
                    .map(|y| if x >= y { x - y } else { y - x })
                    .collect()
            })
            .collect();
        let table = PseudoMetricTable { points: self.universe.clone(), d };
        let offending_leaves = self.non_singleton_leaves();
        let verdict = if offending_leaves.is_empty() && distinct {
            MetricVerdict::Metric
        } else {
            let report = verify_pseudometric(&table).expect("table is square by construction");
            let classes = match report.verdict.expect("|φ − φ| satisfies the axioms") {
                MetricVerdict::Metric => Vec::new(),
                MetricVerdict::Pseudometric { classes } => classes,
            };
            MetricVerdict::Pseudometric { classes }
        };
        Ok(MidpointMetric { table, verdict, positions, offending_leaves })
    }

    fn non_singleton_leaves(&self) -> Vec<Address> {
        fn go(node: &CoverNode, prefix: &mut Vec<usize>, out: &mut Vec<Address>) {
            if node.is_leaf() {
                if node.members.len() > 1 {
                    out.push(Address(prefix.clone()));
                }
                return;
            }
            for (i, child) in node.children.iter().enumerate() {
                prefix.push(i);
                go(child, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut Vec::new(), &mut out);
        out
    }

    /// Removes everything below depth `m`; depth-m nodes become leaves.
    /// Depths beyond the tree leave it unchanged.
    pub fn truncate(&self, m: usize) -> Result<RefinementTree, TreeError> {
        if m == 0 {
            return Err(TreeError::TruncationDepthZero);
        }
        fn cut(node: &CoverNode, left: usize) -> CoverNode {
            CoverNode {
                members: node.members.clone(),
                children: if left == 0 {
                    Vec::new()
                } else {
                    node.children.iter().map(|c| cut(c, left - 1)).collect()
                },
            }
        }
        Ok(RefinementTree { universe: self.universe.clone(), root: cut(&self.root, m) })
    }

    /// Pairwise interval-distance brackets between canonical intervals in
    /// the depth-m truncation.
    pub fn truncated_distances(
        &self,
        m: usize,
        base: &RationalInterval,
        strategy: SplitStrategy,
    ) -> Result<IntervalDistanceTable, TreeError> {
        let truncated = self.truncate(m)?;
        let mut intervals = Vec::with_capacity(self.universe.len());
        for e in &self.universe {
            let addresses = truncated.addresses_of(e)?;
            intervals.push(truncated.interval_of(&addresses.canonical, base, strategy)?);
        }
        let entries = intervals
            .iter()
            .map(|i| intervals.iter().map(|j| interval_distance(i, j)).collect())
            .collect();
        Ok(IntervalDistanceTable {
            elements: self.universe.clone(),
            entries,
            m,
            strategy,
            base: base.clone(),
        })
    }
}

fn collect_addresses(node: &CoverNode, idx: u32, prefix: &mut Vec<usize>, out: &mut Vec<Address>) {
    if !node.members.contains(&idx) {
        return;
    }
    if node.is_leaf() {
        out.push(Address(prefix.clone()));
        return;
    }
    for (i, child) in node.children.iter().enumerate() {
        prefix.push(i);
        collect_addresses(child, idx, prefix, out);
        prefix.pop();
    }
}

fn build_node(
    doc: &NodeDoc,
    index: &BTreeMap<&str, u32>,
    universe: &[String],
    path: &mut Vec<usize>,
) -> Result<CoverNode, TreeError> {
    let mut members = BTreeSet::new();
    for name in &doc.members {
        match index.get(name.as_str()) {
            Some(&i) => {
                members.insert(i);
            }
            None => {
                return Err(TreeError::UnknownMember { path: path.clone(), name: name.clone() })
            }
        }
    }
    let mut children = Vec::with_capacity(doc.children.len());
    for (i, child_doc) in doc.children.iter().enumerate() {
        path.push(i);
        let child = build_node(child_doc, index, universe, path)?;
        if child.members.is_empty() {
            return Err(TreeError::EmptyChild { path: path.clone() });
        }
        let outside: Vec<String> = child
            .members
            .difference(&members)
            .map(|&j| universe[j as usize].clone())
            .collect();
        if !outside.is_empty() {
            return Err(TreeError::ChildNotSubset { path: path.clone(), outside });
        }
        if child.members == members {
            return Err(TreeError::ChildEqualsParent { path: path.clone() });
        }
        path.pop();
        children.push(child);
    }
    if !children.is_empty() {
        let covered: BTreeSet<u32> =
            children.iter().flat_map(|c| c.members.iter().copied()).collect();
        if covered != members {
            let missing = members
                .difference(&covered)
                .map(|&j| universe[j as usize].clone())
                .collect();
            return Err(TreeError::CoverGap { path: path.clone(), missing });
        }
    }
    Ok(CoverNode { members, children })
}

fn split_piece(
    interval: &RationalInterval,
    k: usize,
    index: usize,
    strategy: SplitStrategy,
) -> RationalInterval {
    let (pieces, position) = match strategy {
        SplitStrategy::Contiguous => (k, index),
        SplitStrategy::Gapped => (2 * k - 1, 2 * index),
    };
    let width = interval.width() / rat(pieces as i64, 1);
    let lo = interval.lo() + &width * rat(position as i64, 1);
    let hi = &lo + &width;
    RationalInterval::new(lo, hi)
}

/// Exact count of depth-`depth` address strings over `branching`-fold
/// covers: branching^depth.
pub fn count_addresses(branching: u64, depth: u32) -> BigUint {
    assert!(branching >= 1, "branching factor must be at least 1");
    BigUint::from(branching).pow(depth)
}
