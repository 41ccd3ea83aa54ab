//! Demo and random systems.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::handle::HandleGraph;
use crate::system::{ReductionSystem, SystemBuilder, VertexId};

/// `a -> b, a -> c, b -> d, c -> d`: two moves with a common root.
pub fn diamond() -> ReductionSystem {
    ReductionSystem::build(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
    )
    .expect("valid demo")
}

/// `a -> b, a -> c` with `b` and `c` irreducible: two roots.
pub fn fork() -> ReductionSystem {
    ReductionSystem::build(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).expect("valid demo")
}

/// An object `k` whose two simplifications lead to different irreducible
/// results, reached from a larger object `p`. Both `p` and `k` have two
/// roots; `k` is the least offender.
pub fn ee_failure() -> ReductionSystem {
    ReductionSystem::build(
        &["p", "k", "x", "y", "r1", "r2"],
        &[("p", "k"), ("k", "x"), ("k", "y"), ("x", "r1"), ("y", "r2")],
    )
    .expect("valid demo")
}

/// A green vertex whose links fall into three classes: it touches four reds,
/// two of which are also joined by a second green.
pub fn handle_demo() -> HandleGraph {
    HandleGraph::new(4, vec![vec![0, 1, 2, 3], vec![2, 3]]).expect("valid demo")
}

/// Multiplicative decompositions of `n`: vertices are multisets of integers
/// `>= 2`, and a move replaces one element `a * b` by the pair `a, b`.
#[derive(Debug, Clone)]
pub struct FactorSystem {
    pub system: ReductionSystem,
    pub start: VertexId,
    /// Sorted multiset at each vertex, indexed by `VertexId::index`.
    pub multisets: Vec<Vec<u64>>,
}

pub fn multiset_name(m: &[u64]) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    m.iter().map(u64::to_string).collect::<Vec<_>>().join("*")
}

/// Builds the full decomposition system reachable from `{n}` (the empty
/// multiset when `n == 1`).
pub fn factor_system(n: u64) -> FactorSystem {
    assert!(n >= 1, "factor systems start from n >= 1");
    let start_set = if n == 1 { Vec::new() } else { vec![n] };
    let mut builder = SystemBuilder::new();
    let mut ids: BTreeMap<Vec<u64>, VertexId> = BTreeMap::new();
    let mut multisets = Vec::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();

    let start = builder
        .add_vertex(multiset_name(&start_set))
        .expect("fresh");
    ids.insert(start_set.clone(), start);
    multisets.push(start_set);
    queue.push_back(start);

    while let Some(v) = queue.pop_front() {
        let here = multisets[v.index()].clone();
        let mut distinct = here.clone();
        distinct.dedup();
        for m in distinct {
            let mut a = 2;
            while a * a <= m {
                if m % a == 0 {
                    let mut next = here.clone();
                    let at = next.iter().position(|&x| x == m).expect("element present");
                    next.remove(at);
                    next.push(a);
                    next.push(m / a);
                    next.sort_unstable();
                    let w = match ids.get(&next) {
                        Some(&w) => w,
                        None => {
                            let w = builder.add_vertex(multiset_name(&next)).expect("fresh");
                            ids.insert(next.clone(), w);
                            multisets.push(next);
                            queue.push_back(w);
                            w
                        }
                    };
                    edges.push((v, w));
                }
                a += 1;
            }
        }
    }
    for (v, w) in edges {
        builder.add_edge(v, w).expect("moves change the multiset");
    }
    FactorSystem {
        system: builder.build(),
        start,
        multisets,
    }
}

/// Random DAG on `vertices` vertices: each pair `i < j` gets the edge
/// `i -> j` independently with probability `p`. Deterministic per seed.
pub fn random_dag(vertices: usize, p: f64, seed: u64) -> ReductionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dag_with(&mut rng, vertices, p)
}

pub fn random_dag_with<R: Rng + ?Sized>(rng: &mut R, vertices: usize, p: f64) -> ReductionSystem {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability must lie in [0, 1]"
    );
    let width = vertices.saturating_sub(1).to_string().len();
    let mut builder = SystemBuilder::new();
    let ids: Vec<VertexId> = (0..vertices)
        .map(|i| builder.add_vertex(format!("v{i:0width$}")).expect("fresh"))
        .collect();
    for i in 0..vertices {
        for j in (i + 1)..vertices {
            if rng.random_bool(p) {
                builder.add_edge(ids[i], ids[j]).expect("i < j");
            }
        }
    }
    builder.build()
}
