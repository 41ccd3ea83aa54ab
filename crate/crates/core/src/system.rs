//! Finite oriented reduction graphs.
//!
//! A [`ReductionSystem`] is a finite directed multigraph whose vertices are
//! objects and whose edges are simplifying moves. Vertices carry a name, which
//! doubles as the label used by the text formats and reports. Identifiers are
//! dense indices assigned in declaration order and never reused; a built
//! system is immutable.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Identifier of a vertex, unique within one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn from_index(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Identifier of an edge (a single move), unique within one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(u32);

impl EdgeId {
    pub fn from_index(index: usize) -> Self {
        EdgeId(u32::try_from(index).expect("edge index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub src: VertexId,
    pub dst: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("edge `{src}` -> `{dst}` references an undeclared vertex")]
    DanglingEndpoint { src: String, dst: String },
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown vertex `{0}`")]
    UnknownName(String),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

/// Incremental construction of a [`ReductionSystem`].
#[derive(Debug, Default, Clone)]
pub struct SystemBuilder {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, SystemError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(SystemError::DuplicateVertex(name));
        }
        let id = VertexId::from_index(self.names.len());
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    /// Returns the existing id for `name`, declaring it first if needed.
    pub fn intern(&mut self, name: &str) -> VertexId {
        match self.index.get(name) {
            Some(&id) => id,
            None => self.add_vertex(name).expect("name is fresh"),
        }
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId) -> Result<EdgeId, SystemError> {
        for v in [src, dst] {
            if v.index() >= self.names.len() {
                return Err(SystemError::UnknownVertex(v));
            }
        }
        if src == dst {
            return Err(SystemError::SelfLoop(self.names[src.index()].clone()));
        }
        let id = EdgeId::from_index(self.edges.len());
        self.edges.push(Edge { id, src, dst });
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, src: &str, dst: &str) -> Result<EdgeId, SystemError> {
        match (self.vertex(src), self.vertex(dst)) {
            (Some(s), Some(d)) => self.add_edge(s, d),
            _ => Err(SystemError::DanglingEndpoint {
                src: src.to_string(),
                dst: dst.to_string(),
            }),
        }
    }

    pub fn build(self) -> ReductionSystem {
        let mut out = vec![Vec::new(); self.names.len()];
        for e in &self.edges {
            out[e.src.index()].push(e.id);
        }
        ReductionSystem {
            names: self.names,
            index: self.index,
            edges: self.edges,
            out,
        }
    }
}

/// A finite oriented multigraph of objects and moves.
#[derive(Debug, Clone)]
pub struct ReductionSystem {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
}

impl PartialEq for ReductionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for ReductionSystem {}

impl ReductionSystem {
    /// Builds a system from vertex names and `(src, dst)` name pairs.
    ///
    /// Parallel pairs become distinct edges, numbered in input order.
    pub fn build<V, E>(vertices: &[V], edges: &[(E, E)]) -> Result<Self, SystemError>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut builder = SystemBuilder::new();
        for v in vertices {
            builder.add_vertex(v.as_ref())?;
        }
        for (src, dst) in edges {
            let (src, dst) = (src.as_ref(), dst.as_ref());
            // Reported as a self-loop even when the vertex is undeclared.
            if src == dst && builder.vertex(src).is_some() {
                return Err(SystemError::SelfLoop(src.to_string()));
            }
            builder.add_edge_by_name(src, dst)?;
        }
        Ok(builder.build())
    }

    pub fn builder() -> SystemBuilder {
        SystemBuilder::new()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId::from_index)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.names.len()
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge, SystemError> {
        self.edges.get(e.index()).ok_or(SystemError::UnknownEdge(e))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId, SystemError> {
        self.vertex(name)
            .ok_or_else(|| SystemError::UnknownName(name.to_string()))
    }

    /// Out-edges of `v` in increasing `EdgeId` order.
    ///
    /// Panics if `v` is not a vertex of this system.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.index()]
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].dst
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.index()].is_empty()
    }

    /// All moves out of `v` paired with their targets, ordered by edge id.
    pub fn successors(&self, v: VertexId) -> Result<Vec<(EdgeId, VertexId)>, SystemError> {
        if !self.contains(v) {
            return Err(SystemError::UnknownVertex(v));
        }
        Ok(self.out[v.index()]
            .iter()
            .map(|&e| (e, self.target(e)))
            .collect())
    }

    /// Copy of this system with one more edge appended.
    pub fn with_edge(&self, src: VertexId, dst: VertexId) -> Result<Self, SystemError> {
        let mut builder = SystemBuilder {
            names: self.names.clone(),
            index: self.index.clone(),
            edges: self.edges.clone(),
        };
        builder.add_edge(src, dst)?;
        Ok(builder.build())
    }
}
