//! Complexity functions: maps into lexicographically ordered tuples of
//! non-negative integers that strictly decrease along every edge.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::system::{EdgeId, ReductionSystem, VertexId};

/// An element of `N^k` under lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complexity(Vec<u64>);

impl Complexity {
    pub fn scalar(value: u64) -> Self {
        Complexity(vec![value])
    }

    pub fn tuple(values: impl Into<Vec<u64>>) -> Self {
        Complexity(values.into())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [single] = self.0.as_slice() {
            return write!(f, "{single}");
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComplexityMap {
    values: BTreeMap<VertexId, Complexity>,
}

impl ComplexityMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: VertexId, c: Complexity) -> Option<Complexity> {
        self.values.insert(v, c)
    }

    pub fn get(&self, v: VertexId) -> Option<&Complexity> {
        self.values.get(&v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Complexity)> {
        self.values.iter().map(|(&v, c)| (v, c))
    }
}

impl FromIterator<(VertexId, Complexity)> for ComplexityMap {
    fn from_iter<I: IntoIterator<Item = (VertexId, Complexity)>>(iter: I) -> Self {
        ComplexityMap {
            values: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexityError {
    /// Closed walk `[v0, v1, ..., v0]` along edges of the system.
    #[error("directed cycle through {} vertices", .0.len().saturating_sub(1))]
    CycleDetected(Vec<VertexId>),
    #[error("complexity map has no value for vertex {0}")]
    MissingVertex(VertexId),
    #[error("vertex {vertex} has a {found}-tuple, expected a {expected}-tuple")]
    ArityMismatch {
        vertex: VertexId,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexityCheck {
    Valid,
    /// Every edge along which the map fails to strictly decrease.
    Violations(Vec<EdgeId>),
}

impl ComplexityCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ComplexityCheck::Valid)
    }
}

/// Depth-first post-order of every vertex reachable from `starts`.
///
/// Each vertex appears after all of its successors, so sinks come first.
/// Fails with a closed cycle witness when a directed cycle is reachable.
pub(crate) fn postorder_from(
    sys: &ReductionSystem,
    starts: impl IntoIterator<Item = VertexId>,
) -> Result<Vec<VertexId>, Vec<VertexId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }

    let mut mark = vec![Mark::New; sys.vertex_count()];
    let mut order = Vec::new();
    // (vertex, index of the next out-edge to explore)
    let mut stack: Vec<(VertexId, usize)> = Vec::new();

    for start in starts {
        if mark[start.index()] != Mark::New {
            continue;
        }
        mark[start.index()] = Mark::Open;
        stack.push((start, 0));
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let out = sys.out_edges(v);
            if next == out.len() {
                mark[v.index()] = Mark::Done;
                order.push(v);
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = sys.target(out[next]);
            match mark[w.index()] {
                Mark::New => {
                    mark[w.index()] = Mark::Open;
                    stack.push((w, 0));
                }
                Mark::Open => {
                    let from = stack
                        .iter()
                        .position(|&(u, _)| u == w)
                        .expect("open vertex");
                    let mut cycle: Vec<VertexId> = stack[from..].iter().map(|&(u, _)| u).collect();
                    cycle.push(w);
                    return Err(cycle);
                }
                Mark::Done => {}
            }
        }
    }
    Ok(order)
}

/// Sinks-first ordering of the whole system, or a cycle witness.
pub fn topological_postorder(sys: &ReductionSystem) -> Result<Vec<VertexId>, ComplexityError> {
    postorder_from(sys, sys.vertices()).map_err(ComplexityError::CycleDetected)
}

/// Longest-path complexity: each vertex maps to the length of the longest
/// directed path starting at it. Sinks get 0.
pub fn synthesize_complexity(sys: &ReductionSystem) -> Result<ComplexityMap, ComplexityError> {
    let order = topological_postorder(sys)?;
    let mut depth = vec![0u64; sys.vertex_count()];
    for v in order {
        depth[v.index()] = sys
            .out_edges(v)
            .iter()
            .map(|&e| depth[sys.target(e).index()] + 1)
            .max()
            .unwrap_or(0);
    }
    Ok(sys
        .vertices()
        .map(|v| (v, Complexity::scalar(depth[v.index()])))
        .collect())
}

/// Scans every edge and reports those along which `map` does not strictly
/// decrease.
pub fn check_complexity(
    sys: &ReductionSystem,
    map: &ComplexityMap,
) -> Result<ComplexityCheck, ComplexityError> {
    let mut arity = None;
    for v in sys.vertices() {
        let c = map.get(v).ok_or(ComplexityError::MissingVertex(v))?;
        match arity {
            None => arity = Some(c.arity()),
            Some(expected) if expected != c.arity() => {
                return Err(ComplexityError::ArityMismatch {
                    vertex: v,
                    expected,
                    found: c.arity(),
                })
            }
            Some(_) => {}
        }
    }
    let violations: Vec<EdgeId> = sys
        .edges()
        .iter()
        .filter(|e| map.get(e.src) <= map.get(e.dst))
        .map(|e| e.id)
        .collect();
    if violations.is_empty() {
        Ok(ComplexityCheck::Valid)
    } else {
        Ok(ComplexityCheck::Violations(violations))
    }
}
