//! Fixed inputs shared by the benchmarks.

use rootwork::gen;
use rootwork::{HandleGraph, ReductionSystem};

/// Seeded random DAGs of the given size.
pub fn dag_corpus(count: usize, vertices: usize, p: f64) -> Vec<ReductionSystem> {
    (0..count as u64)
        .map(|seed| gen::random_dag(vertices, p, seed))
        .collect()
}

/// A green vertex linked once to each of `reds` reds, plus a second green
/// joining the first two reds.
pub fn star_with_bridge(reds: usize) -> HandleGraph {
    assert!(reds >= 2);
    HandleGraph::new(reds, vec![(0..reds).collect(), vec![0, 1]]).expect("valid graph")
}
