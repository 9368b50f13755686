//! Exact constructions that turn nested set structure into distances.
//!
//! The crate covers five related pieces of machinery, all over exact
//! rational arithmetic:
//!
//! * [`topology`]: finite topological spaces given explicitly by their open
//!   sets, with closure/interior, normality checking, and nested-neighborhood
//!   chains.
//! * [`urysohn`]: a constructive separating function `f` with `f = 0` on one
//!   closed set and `f = 1` on another, built from a dyadic family of opens,
//!   and the pseudometric `|f(x) - f(y)|` it induces.
//! * [`tree`]: refinement trees (iterated covers of a finite universe),
//!   element addresses, the address-to-subinterval map, the induced point
//!   metric, and truncated interval-valued distances.
//! * [`cantor`]: the middle-thirds construction at finite depth as a
//!   reference for the gapped subdivision strategy.
//! * [`dimension`]: the fluctuation-exponent sequence 1, 3/2, 7/4, ... and
//!   the sum-of-squares dimension estimate, kept exact end to end.
//!
//! Rationals are [`num::BigRational`] everywhere; nothing is ever rounded
//! except values explicitly labeled approximate.

pub mod cantor;
pub mod dimension;
pub mod interval;
pub mod metric;
pub mod rational;
pub mod topology;
pub mod tree;
pub mod urysohn;

mod bits;

pub use cantor::{
    cantor_measure, cantor_measure_with_limit, cantor_stage, cantor_stage_with_limit,
    property_report, property_report_with_limit, CantorError, CantorStage, PropertyReport,
    DEFAULT_DEPTH_LIMIT,
};
pub use dimension::{
    exponent_sequence, population, total_points, DimensionReport, ExponentSequence, Population,
};
pub use interval::{interval_distance, IntervalDistance, RationalInterval};
pub use metric::{
    verify_pseudometric, AxiomReport, AxiomViolation, MetricError, MetricVerdict,
    PseudoMetricTable,
};
pub use rational::{approx_f64, format_rational, parse_rational, RationalParseError};
pub use topology::{
    enumerate_topologies, ClosenessChain, FamilyViolation, FiniteSpace, NeighborhoodKind,
    NormalityReport, SeparatedPair, SpaceDoc, Subset, TopologyError,
};
pub use tree::{
    count_addresses, Address, CoverNode, ElementAddresses, IntervalDistanceTable, MidpointMetric,
    NodeDoc, RefinementTree, SplitStrategy, TreeDoc, TreeError,
};
pub use urysohn::{
    build_dyadic_family, induced_pseudometric, urysohn_function, DyadicFamily, InducedPseudometric,
    SeparatingFunction, UrysohnError,
};

pub use num::bigint::BigUint;
pub use num::rational::BigRational;
