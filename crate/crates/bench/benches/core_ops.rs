//! Timings for the expensive library entry points. All inputs are fixed so
//! runs are comparable across commits.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use metric_genesis::rational::rat;
use metric_genesis::topology::{enumerate_topologies, FiniteSpace, SpaceDoc};
use metric_genesis::tree::{NodeDoc, RefinementTree, SplitStrategy, TreeDoc};
use metric_genesis::urysohn::build_dyadic_family;
use metric_genesis::{cantor_stage, total_points, RationalInterval};

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate_topologies_n4", |b| {
        b.iter(|| enumerate_topologies(black_box(4)).unwrap().count())
    });
}

fn bench_cantor(c: &mut Criterion) {
    c.bench_function("cantor_stage_m12", |b| {
        b.iter(|| cantor_stage(black_box(12)).unwrap())
    });
}

/// Balanced k-ary partition tree over `width^depth` named leaves.
fn balanced_tree(width: usize, depth: usize) -> RefinementTree {
    fn node(names: &[String], lo: usize, hi: usize, width: usize) -> NodeDoc {
        let members = names[lo..hi].to_vec();
        if hi - lo == 1 {
            return NodeDoc { members, children: Vec::new() };
        }
        let step = (hi - lo) / width;
        let children = (0..width)
            .map(|i| node(names, lo + i * step, lo + (i + 1) * step, width))
            .collect();
        NodeDoc { members, children }
    }
    let names: Vec<String> = (0..width.pow(depth as u32)).map(|i| format!("e{i}")).collect();
    let doc = TreeDoc { universe: names.clone(), root: node(&names, 0, names.len(), width) };
    RefinementTree::from_doc(&doc).unwrap()
}

fn bench_midpoint_metric(c: &mut Criterion) {
    let tree = balanced_tree(3, 3);
    let base = RationalInterval::new(rat(0, 1), rat(1, 1));
    c.bench_function("midpoint_metric_27_leaves", |b| {
        b.iter(|| tree.midpoint_metric(black_box(&base), SplitStrategy::Contiguous).unwrap())
    });
}

fn bench_total_points(c: &mut Criterion) {
    c.bench_function("total_points_1e6", |b| {
        b.iter(|| total_points(black_box(1_000_000)))
    });
}

/// Three points under the partition topology {a} | {b, c}: the smallest
/// space with a disjoint nonempty closed pair.
fn partition_space() -> FiniteSpace {
    let doc = SpaceDoc {
        points: vec!["a".into(), "b".into(), "c".into()],
        opens: vec![
            vec![],
            vec!["a".into()],
            vec!["b".into(), "c".into()],
            vec!["a".into(), "b".into(), "c".into()],
        ],
    };
    doc.into_space().unwrap().0
}

fn bench_dyadic_family(c: &mut Criterion) {
    let space = partition_space();
    let a = space.subset_from_names(["a"]).unwrap();
    let b_side = space.subset_from_names(["b", "c"]).unwrap();
    c.bench_function("dyadic_family_depth_8", |b| {
        b.iter(|| build_dyadic_family(black_box(&space), a, b_side, 8).unwrap())
    });
}

criterion_group!(
    benches,
    bench_enumerate,
    bench_cantor,
    bench_midpoint_metric,
    bench_total_points,
    bench_dyadic_family,
);
criterion_main!(benches);
