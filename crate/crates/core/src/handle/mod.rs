//! Red/green handle graphs and the cutting calculus.
//!
//! Red vertices stand for irreducible pieces, green vertices for the cores of
//! handles joining them; every link joins one green and one red vertex. A
//! cut splits one green vertex into two so that the number of connected
//! components goes up by one. Which cuts are possible at a green vertex `x`
//! is governed by the components of `G - {x}`: links at `x` whose red ends
//! lie in the same component cannot be separated.
//!
//! [`HandleGraph`] values are always stored in canonical form, so `==` is
//! isomorphism of coloured multigraphs. Green vertices of degree zero are
//! dropped on construction; isolated red vertices are kept.

mod canon;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::system::{ReductionSystem, SystemBuilder, VertexId};

pub use canon::CanonicalCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandleError {
    #[error("vertex {0} is not a green vertex of the graph")]
    NotGreen(usize),
    #[error("link at green {green} references red {red}, but there are only {reds} reds")]
    UnknownRed {
        green: usize,
        red: usize,
        reds: usize,
    },
    #[error("invalid cut: {0}")]
    InvalidCut(&'static str),
    #[error("more than {0} graphs reachable by cutting")]
    BoundExceeded(usize),
}

/// Index of a green vertex in a canonical [`HandleGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Green(pub usize);

/// A red/green bipartite multigraph, up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HandleGraph {
    reds: usize,
    /// Red endpoints of each green vertex, sorted; greens in canonical order.
    greens: Vec<Vec<usize>>,
}

/// Where the vertices of a raw graph ended up after canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    /// Raw red index -> canonical red index.
    pub reds: Vec<usize>,
    /// Raw green index -> canonical green, `None` for dropped trivial greens.
    pub greens: Vec<Option<Green>>,
}

impl HandleGraph {
    /// Builds the canonical graph with `reds` red vertices and one green
    /// vertex per entry of `greens`, listing its red endpoints with
    /// multiplicity.
    pub fn new(reds: usize, greens: Vec<Vec<usize>>) -> Result<Self, HandleError> {
        Self::with_relabeling(reds, greens).map(|(g, _)| g)
    }

    pub fn with_relabeling(
        reds: usize,
        greens: Vec<Vec<usize>>,
    ) -> Result<(Self, Relabeling), HandleError> {
        for (green, links) in greens.iter().enumerate() {
            if let Some(&red) = links.iter().find(|&&r| r >= reds) {
                return Err(HandleError::UnknownRed { green, red, reds });
            }
        }
        let mut kept = Vec::new();
        let mut raw_of_kept = Vec::new();
        for (i, links) in greens.into_iter().enumerate() {
            if !links.is_empty() {
                raw_of_kept.push(i);
                kept.push(links);
            }
        }
        let labeling = canon::canonicalize(reds, &kept);
        let mut green_map = vec![None; raw_of_kept.last().map_or(0, |&i| i + 1)];
        for (k, &raw) in raw_of_kept.iter().enumerate() {
            green_map[raw] = Some(Green(labeling.green_map[k]));
        }
        let graph = HandleGraph {
            reds,
            greens: labeling.greens,
        };
        Ok((
            graph,
            Relabeling {
                reds: labeling.red_map,
                greens: green_map,
            },
        ))
    }

    pub fn red_count(&self) -> usize {
        self.reds
    }

    pub fn green_count(&self) -> usize {
        self.greens.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.reds + self.greens.len()
    }

    pub fn link_count(&self) -> usize {
        self.greens.iter().map(Vec::len).sum()
    }

    pub fn greens(&self) -> impl ExactSizeIterator<Item = Green> {
        (0..self.greens.len()).map(Green)
    }

    /// Red endpoints of the links at `x`, sorted. Positions in this slice
    /// identify the links in [`CutMove`]s.
    pub fn links(&self, x: Green) -> Result<&[usize], HandleError> {
        self.greens
            .get(x.0)
            .map(Vec::as_slice)
            .ok_or(HandleError::NotGreen(x.0))
    }

    /// Number of links at each red vertex.
    pub fn red_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.reds];
        for &r in self.greens.iter().flatten() {
            deg[r] += 1;
        }
        deg
    }

    /// Connected components, counting every vertex.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.reds);
        for g in &self.greens {
            for w in g.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.roots()
    }
}

impl fmt::Display for HandleGraph {
    /// `reds|g0|g1|...` where each green lists its red endpoints.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reds)?;
        for g in &self.greens {
            write!(f, "|")?;
            for (i, r) in g.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    fn roots(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

pub fn canonical_form(g: &HandleGraph) -> CanonicalCode {
    canon::encode(g.reds, &g.greens)
}

/// Links at `x` grouped by the component of `G - {x}` holding their red end.
///
/// Each class lists link positions in ascending order; classes are ordered by
/// their first position.
pub fn edge_classes_at(g: &HandleGraph, x: Green) -> Result<Vec<Vec<usize>>, HandleError> {
    let links = g.links(x)?;
    let mut uf = UnionFind::new(g.reds);
    for (i, other) in g.greens.iter().enumerate() {
        if i != x.0 {
            for w in other.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for (pos, &r) in links.iter().enumerate() {
        let comp = uf.find(r);
        match classes.iter_mut().find(|(c, _)| *c == comp) {
            Some((_, members)) => members.push(pos),
            None => classes.push((comp, vec![pos])),
        }
    }
    Ok(classes.into_iter().map(|(_, m)| m).collect())
}

pub fn admits_cutting(g: &HandleGraph, x: Green) -> Result<bool, HandleError> {
    Ok(edge_classes_at(g, x)?.len() >= 2)
}

/// Splits green `at` into two greens: one carrying the links at positions
/// `part`, the other carrying the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutMove {
    pub at: Green,
    pub part: Vec<usize>,
}

pub fn cut(g: &HandleGraph, m: &CutMove) -> Result<HandleGraph, HandleError> {
    let links = g.links(m.at)?;
    let mut in_part = vec![false; links.len()];
    for &p in &m.part {
        if p >= links.len() {
            return Err(HandleError::InvalidCut("link position out of range"));
        }
        if in_part[p] {
            return Err(HandleError::InvalidCut("link position repeated"));
        }
        in_part[p] = true;
    }
    if m.part.is_empty() || m.part.len() == links.len() {
        return Err(HandleError::InvalidCut(
            "both sides of a cut must be non-empty",
        ));
    }
    for class in edge_classes_at(g, m.at)? {
        let inside = class.iter().filter(|&&p| in_part[p]).count();
        if inside != 0 && inside != class.len() {
            return Err(HandleError::InvalidCut(
                "split separates links in one component; component count would not increase",
            ));
        }
    }
    let (left, right): (Vec<_>, Vec<_>) =
        links.iter().enumerate().partition(|&(pos, _)| in_part[pos]);
    let mut greens: Vec<Vec<usize>> = g
        .greens
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != m.at.0)
        .map(|(_, l)| l.clone())
        .collect();
    greens.push(left.into_iter().map(|(_, &r)| r).collect());
    greens.push(right.into_iter().map(|(_, &r)| r).collect());
    HandleGraph::new(g.reds, greens)
}

/// Every valid cut of `g`. At a green with `k` classes there are
/// `2^(k-1) - 1` unordered splits into unions of classes.
pub fn cut_moves(g: &HandleGraph) -> Vec<CutMove> {
    let mut moves = Vec::new();
    for x in g.greens() {
        let classes = edge_classes_at(g, x).expect("green in range");
        let k = classes.len();
        if k < 2 {
            continue;
        }
        // Class 0 always goes into `part`; the mask picks from the others.
        for mask in 0u64..(1u64 << (k - 1)) - 1 {
            let mut part = classes[0].clone();
            for (bit, class) in classes[1..].iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    part.extend_from_slice(class);
                }
            }
            part.sort_unstable();
            moves.push(CutMove { at: x, part });
        }
    }
    moves
}

/// The outcome of cutting until no green vertex admits a cut: every green
/// is split into one green per edge class, repeated to a fixpoint.
pub fn full_cut(g: &HandleGraph) -> HandleGraph {
    let mut current = g.clone();
    loop {
        let mut greens = Vec::new();
        let mut changed = false;
        for x in current.greens() {
            let links = &current.greens[x.0];
            let classes = edge_classes_at(&current, x).expect("green in range");
            changed |= classes.len() > 1;
            for class in classes {
                greens.push(class.into_iter().map(|p| links[p]).collect());
            }
        }
        if !changed {
            return current;
        }
        current = HandleGraph::new(current.reds, greens).expect("reds unchanged");
    }
}

/// The cutting graph of `g` as an explicit reduction system.
#[derive(Debug, Clone)]
pub struct CuttingSystem {
    pub system: ReductionSystem,
    /// Graph at each vertex, indexed by `VertexId::index`.
    pub graphs: Vec<HandleGraph>,
    pub start: VertexId,
}

impl CuttingSystem {
    pub fn graph(&self, v: VertexId) -> &HandleGraph {
        &self.graphs[v.index()]
    }
}

/// Explores every graph reachable from `g` by single cuts. Vertices are
/// named by the graph's [`Display`](fmt::Display) form, and each valid cut
/// move becomes one edge.
pub fn to_reduction_system(g: &HandleGraph, bound: usize) -> Result<CuttingSystem, HandleError> {
    let mut builder = SystemBuilder::new();
    let mut ids: HashMap<HandleGraph, VertexId> = HashMap::new();
    let mut graphs = Vec::new();
    let mut queue = VecDeque::new();
    let mut pending_edges = Vec::new();

    let start = builder.add_vertex(g.to_string()).expect("fresh name");
    ids.insert(g.clone(), start);
    graphs.push(g.clone());
    queue.push_back(start);

    while let Some(v) = queue.pop_front() {
        let here = graphs[v.index()].clone();
        for m in cut_moves(&here) {
            let next = cut(&here, &m).expect("enumerated moves are valid");
            let w = match ids.get(&next) {
                Some(&w) => w,
                None => {
                    if graphs.len() == bound {
                        return Err(HandleError::BoundExceeded(bound));
                    }
                    let w = builder.add_vertex(next.to_string()).expect("fresh name");
                    ids.insert(next.clone(), w);
                    graphs.push(next);
                    queue.push_back(w);
                    w
                }
            };
            pending_edges.push((v, w));
        }
    }
    for (v, w) in pending_edges {
        builder.add_edge(v, w).expect("cuts change the graph");
    }
    Ok(CuttingSystem {
        system: builder.build(),
        graphs,
        start,
    })
}

/// Random graph with at most `max_vertices` vertices (at least one red) and
/// at most `max_links` links. Every green gets at least one link.
pub fn random_handle_graph<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_links: usize,
) -> HandleGraph {
    let (reds, greens) = random_raw(rng, max_vertices, max_links);
    HandleGraph::new(reds, greens).expect("red indices in range")
}

/// Uncanonicalized variant of [`random_handle_graph`]: red count and
/// per-green link lists in generation order.
pub fn random_raw<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_links: usize,
) -> (usize, Vec<Vec<usize>>) {
    assert!(max_vertices >= 1);
    let n = rng.random_range(1..=max_vertices);
    let reds = rng.random_range(1..=n);
    let green_count = (n - reds).min(max_links);
    let links = if green_count == 0 {
        0
    } else {
        rng.random_range(green_count..=max_links)
    };
    let mut greens: Vec<Vec<usize>> = (0..green_count)
        .map(|_| vec![rng.random_range(0..reds)])
        .collect();
    for _ in green_count..links {
        let g = rng.random_range(0..green_count);
        greens[g].push(rng.random_range(0..reds));
    }
    (reds, greens)
}

/// Graph description with user-facing vertex names, as read from a file.
#[derive(Debug, Clone)]
pub struct NamedHandleGraph {
    pub graph: HandleGraph,
    pub reds: BTreeMap<String, usize>,
    /// Named greens; trivial greens (no links) map to `None`.
    pub greens: BTreeMap<String, Option<Green>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(reds: usize, greens: &[&[usize]]) -> HandleGraph {
        HandleGraph::new(reds, greens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn dumbbell() -> HandleGraph {
        graph(2, &[&[0, 1]])
    }

    /// x links r0, r1, r2, r3; y links r2, r3. Classes at x: {r0}, {r1}, {r2, r3}.
    fn three_class() -> HandleGraph {
        graph(4, &[&[0, 1, 2, 3], &[2, 3]])
    }

    fn green_with_degree(g: &HandleGraph, deg: usize) -> Green {
        g.greens()
            .find(|&x| g.links(x).unwrap().len() == deg)
            .unwrap()
    }

    #[test]
    fn single_red_ignores_naming() {
        assert_eq!(
            canonical_form(&graph(1, &[])),
            canonical_form(&graph(1, &[]))
        );
        assert_eq!(graph(1, &[]).to_string(), "1");
    }

    #[test]
    fn relabeled_graphs_share_a_code() {
        let a = graph(3, &[&[0, 1], &[1, 2, 2]]);
        let b = graph(3, &[&[0, 0, 2], &[1, 2]]);
        assert_eq!(a, b);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn path_and_double_link_differ() {
        let path = graph(2, &[&[0, 1]]);
        let double = graph(1, &[&[0, 0]]);
        assert_ne!(canonical_form(&path), canonical_form(&double));
    }

    #[test]
    fn trivial_greens_dropped() {
        let g = graph(2, &[&[], &[0, 1]]);
        assert_eq!(g.green_count(), 1);
        let (_, relabel) = HandleGraph::with_relabeling(2, vec![vec![], vec![0, 1]]).unwrap();
        assert_eq!(relabel.greens, vec![None, Some(Green(0))]);
    }

    #[test]
    fn unknown_red_rejected() {
        assert!(matches!(
            HandleGraph::new(1, vec![vec![1]]),
            Err(HandleError::UnknownRed { .. })
        ));
    }

    #[test]
    fn classes_two_components() {
        let g = dumbbell();
        assert_eq!(
            edge_classes_at(&g, Green(0)).unwrap(),
            vec![vec![0], vec![1]]
        );
        assert!(admits_cutting(&g, Green(0)).unwrap());
    }

    #[test]
    fn classes_parallel_links() {
        let g = graph(1, &[&[0, 0]]);
        assert_eq!(edge_classes_at(&g, Green(0)).unwrap(), vec![vec![0, 1]]);
        assert!(!admits_cutting(&g, Green(0)).unwrap());
    }

    #[test]
    fn classes_joined_through_other_green() {
        // x - r0, x - r1, y - r0, y - r1: G - {x} is r0 - y - r1.
        let g = graph(2, &[&[0, 1], &[0, 1]]);
        for x in g.greens() {
            assert_eq!(edge_classes_at(&g, x).unwrap().len(), 1);
        }
    }

    #[test]
    fn degree_one_green_is_uncuttable() {
        let g = graph(2, &[&[0], &[1]]);
        assert!(!admits_cutting(&g, Green(0)).unwrap());
    }

    #[test]
    fn not_green() {
        assert_eq!(
            edge_classes_at(&dumbbell(), Green(3)).unwrap_err(),
            HandleError::NotGreen(3)
        );
    }

    #[test]
    fn cut_dumbbell() {
        let g = dumbbell();
        let out = cut(
            &g,
            &CutMove {
                at: Green(0),
                part: vec![0],
            },
        )
        .unwrap();
        assert_eq!(out, graph(2, &[&[0], &[1]]));
        assert_eq!(out.component_count(), g.component_count() + 1);
    }

    #[test]
    fn cut_inside_a_class_rejected() {
        let g = graph(1, &[&[0, 0]]);
        assert!(matches!(
            cut(
                &g,
                &CutMove {
                    at: Green(0),
                    part: vec![0]
                }
            ),
            Err(HandleError::InvalidCut(_))
        ));
        let g = three_class();
        let x = green_with_degree(&g, 4);
        let classes = edge_classes_at(&g, x).unwrap();
        let big = classes.iter().find(|c| c.len() == 2).unwrap();
        assert!(cut(
            &g,
            &CutMove {
                at: x,
                part: vec![big[0]]
            }
        )
        .is_err());
        assert!(cut(
            &g,
            &CutMove {
                at: x,
                part: vec![]
            }
        )
        .is_err());
        assert!(cut(
            &g,
            &CutMove {
                at: x,
                part: vec![0, 1, 2, 3]
            }
        )
        .is_err());
    }

    #[test]
    fn cutting_one_class_leaves_two() {
        let g = three_class();
        let x = green_with_degree(&g, 4);
        let classes = edge_classes_at(&g, x).unwrap();
        // Components before: 1. Components of G - {x}: {r0}, {r1}, {r2, y, r3}.
        assert_eq!(classes.len(), 3);
        assert_eq!(g.component_count(), 1);
        let single = classes.iter().find(|c| c.len() == 1).unwrap().clone();
        let out = cut(
            &g,
            &CutMove {
                at: x,
                part: single,
            },
        )
        .unwrap();
        assert_eq!(out.component_count(), 2);
        let x2 = green_with_degree(&out, 3);
        assert_eq!(edge_classes_at(&out, x2).unwrap().len(), 2);
        assert!(admits_cutting(&out, x2).unwrap());
    }

    #[test]
    fn full_cut_cases() {
        assert_eq!(full_cut(&dumbbell()), graph(2, &[&[0], &[1]]));
        let stuck = graph(2, &[&[0, 1], &[0, 1]]);
        assert_eq!(full_cut(&stuck), stuck);
        assert_eq!(
            full_cut(&three_class()),
            graph(4, &[&[0], &[1], &[2, 3], &[2, 3]])
        );
    }

    #[test]
    fn cut_moves_count() {
        let g = three_class();
        // 2^(3-1) - 1 = 3 at x, none at y.
        assert_eq!(cut_moves(&g).len(), 3);
    }

    #[test]
    fn reduction_system_of_dumbbell() {
        let s = to_reduction_system(&dumbbell(), 10).unwrap();
        assert_eq!(s.system.vertex_count(), 2);
        assert_eq!(s.system.edge_count(), 1);
    }

    #[test]
    fn reduction_system_of_stuck_graph() {
        let s = to_reduction_system(&graph(2, &[&[0, 1], &[0, 1]]), 10).unwrap();
        assert_eq!(s.system.vertex_count(), 1);
        assert_eq!(s.system.edge_count(), 0);
    }

    #[test]
    fn reduction_system_bound() {
        assert_eq!(
            to_reduction_system(&three_class(), 2).unwrap_err(),
            HandleError::BoundExceeded(2)
        );
    }

    #[test]
    fn display_form() {
        assert_eq!(three_class().to_string(), "4|2,3|0,1,2,3");
    }

    #[test]
    fn symmetric_graphs_canonicalize_quickly() {
        // 30 disjoint dumbbells, then a star whose reds each own a private green.
        let bells: Vec<Vec<usize>> = (0..30).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let mut shuffled = bells.clone();
        shuffled.reverse();
        for g in &mut shuffled {
            g.reverse();
        }
        let a = HandleGraph::new(60, bells).unwrap();
        let b = HandleGraph::new(60, shuffled).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.component_count(), 30);

        let mut star = vec![(0..20).collect::<Vec<_>>()];
        star.extend((0..20).map(|r| vec![r]));
        let g = HandleGraph::new(20, star).unwrap();
        assert_eq!(full_cut(&g).green_count(), 40);
    }
}
