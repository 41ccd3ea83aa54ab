//! Roots, edge equivalence and the unique-root check.
//!
//! A root of `v` is a vertex reachable from `v` that admits no further move.
//! Two moves out of the same vertex are elementary equivalent when their
//! targets share a root; edge equivalence is the transitive closure. If the
//! system has a complexity function (is acyclic, for finite systems) and all
//! moves out of each vertex are equivalent, every vertex has exactly one
//! root. [`verify_theorem`] checks that implication on a concrete system.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::complexity::{postorder_from, synthesize_complexity, ComplexityError, ComplexityMap};
use crate::system::{EdgeId, ReductionSystem, SystemError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("a directed cycle is reachable; roots require a complexity function")]
    CyclicSystem(Vec<VertexId>),
    #[error("edges {first} and {second} leave different vertices")]
    SourceMismatch { first: EdgeId, second: EdgeId },
    #[error("vertex {} has {} roots", .0.source(), .0.len())]
    MultipleRoots(RootSet),
    #[error("complexity map has no value for vertex {0}")]
    MissingComplexity(VertexId),
}

impl From<ComplexityError> for RootError {
    fn from(err: ComplexityError) -> Self {
        match err {
            ComplexityError::CycleDetected(cycle) => RootError::CyclicSystem(cycle),
            ComplexityError::MissingVertex(v) => RootError::MissingComplexity(v),
            ComplexityError::ArityMismatch { vertex, .. } => RootError::MissingComplexity(vertex),
        }
    }
}

/// The roots of one source vertex, sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    source: VertexId,
    roots: Vec<VertexId>,
}

impl RootSet {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.roots.binary_search(&v).is_ok()
    }

    /// The root, if there is exactly one.
    pub fn single(&self) -> Option<VertexId> {
        match self.roots.as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }
}

fn ensure_vertex(sys: &ReductionSystem, v: VertexId) -> Result<(), RootError> {
    if sys.contains(v) {
        Ok(())
    } else {
        Err(SystemError::UnknownVertex(v).into())
    }
}

/// Every sink reachable from `v` by forward search.
pub fn roots(sys: &ReductionSystem, v: VertexId) -> Result<RootSet, RootError> {
    ensure_vertex(sys, v)?;
    let reachable = postorder_from(sys, [v]).map_err(RootError::CyclicSystem)?;
    let mut roots: Vec<VertexId> = reachable.into_iter().filter(|&u| sys.is_sink(u)).collect();
    roots.sort_unstable();
    Ok(RootSet { source: v, roots })
}

pub fn unique_root(sys: &ReductionSystem, v: VertexId) -> Result<VertexId, RootError> {
    let set = roots(sys, v)?;
    set.single().ok_or(RootError::MultipleRoots(set))
}

fn reachable_bfs(sys: &ReductionSystem, v: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; sys.vertex_count()];
    let mut queue = VecDeque::from([v]);
    let mut out = Vec::new();
    seen[v.index()] = true;
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for &e in sys.out_edges(u) {
            let w = sys.target(e);
            if !seen[w.index()] {
                seen[w.index()] = true;
                queue.push_back(w);
            }
        }
    }
    out
}

/// Least-complexity vertex among those reachable from `v`; ties go to the
/// smaller id. Under a valid complexity map the result admits no move, so it
/// is a root of `v`.
pub fn descend(
    sys: &ReductionSystem,
    c: &ComplexityMap,
    v: VertexId,
) -> Result<VertexId, RootError> {
    ensure_vertex(sys, v)?;
    let mut best: Option<(&_, VertexId)> = None;
    for u in reachable_bfs(sys, v) {
        let cu = c.get(u).ok_or(RootError::MissingComplexity(u))?;
        if best.is_none_or(|(cb, b)| (cu, u) < (cb, b)) {
            best = Some((cu, u));
        }
    }
    Ok(best.expect("v reaches itself").1)
}

/// Roots of `v` selected by the descent criterion: a reachable `u` is a root
/// exactly when `u` is itself the least-complexity vertex reachable from `u`.
pub fn roots_by_descent(
    sys: &ReductionSystem,
    c: &ComplexityMap,
    v: VertexId,
) -> Result<RootSet, RootError> {
    ensure_vertex(sys, v)?;
    let mut roots = Vec::new();
    for u in reachable_bfs(sys, v) {
        if descend(sys, c, u)? == u {
            roots.push(u);
        }
    }
    roots.sort_unstable();
    Ok(RootSet { source: v, roots })
}

/// Root sets of every vertex of an acyclic system, computed bottom-up.
#[derive(Debug, Clone)]
pub struct RootTable {
    sets: Vec<Vec<VertexId>>,
}

impl RootTable {
    pub fn compute(sys: &ReductionSystem) -> Result<Self, RootError> {
        let order = postorder_from(sys, sys.vertices()).map_err(RootError::CyclicSystem)?;
        let mut sets: Vec<Vec<VertexId>> = vec![Vec::new(); sys.vertex_count()];
        for v in order {
            let set = if sys.is_sink(v) {
                vec![v]
            } else {
                let mut acc: Vec<VertexId> = sys
                    .out_edges(v)
                    .iter()
                    .flat_map(|&e| sets[sys.target(e).index()].iter().copied())
                    .collect();
                acc.sort_unstable();
                acc.dedup();
                acc
            };
            sets[v.index()] = set;
        }
        Ok(RootTable { sets })
    }

    pub fn get(&self, v: VertexId) -> &[VertexId] {
        &self.sets[v.index()]
    }

    pub fn root_set(&self, v: VertexId) -> RootSet {
        RootSet {
            source: v,
            roots: self.sets[v.index()].clone(),
        }
    }
}

fn sorted_intersect(a: &[VertexId], b: &[VertexId]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Whether the targets of `first` and `second` have a common root.
pub fn elementary_equivalent(
    sys: &ReductionSystem,
    first: EdgeId,
    second: EdgeId,
) -> Result<bool, RootError> {
    let (e, d) = (*sys.edge(first)?, *sys.edge(second)?);
    if e.src != d.src {
        return Err(RootError::SourceMismatch { first, second });
    }
    let re = roots(sys, e.dst)?;
    let rd = roots(sys, d.dst)?;
    Ok(sorted_intersect(re.roots(), rd.roots()))
}

/// Partition of the moves out of one vertex into equivalence classes.
///
/// Classes are ordered by their smallest edge; edges within a class ascend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeEquivalence {
    vertex: VertexId,
    classes: Vec<Vec<EdgeId>>,
}

impl EdgeEquivalence {
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, e: EdgeId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&e))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn classes_at(sys: &ReductionSystem, table: &RootTable, v: VertexId) -> EdgeEquivalence {
    let out = sys.out_edges(v);
    let mut parent: Vec<usize> = (0..out.len()).collect();
    for i in 0..out.len() {
        let ri = table.get(sys.target(out[i]));
        for (j, &f) in out.iter().enumerate().skip(i + 1) {
            if sorted_intersect(ri, table.get(sys.target(f))) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut by_rep: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for (i, &e) in out.iter().enumerate() {
        let rep = find(&mut parent, i);
        by_rep.entry(rep).or_default().push(e);
    }
    // Representatives are class minima, so map order is class order.
    EdgeEquivalence {
        vertex: v,
        classes: by_rep.into_values().collect(),
    }
}

/// Moves out of `v` grouped into classes of the transitive closure of
/// elementary equivalence.
pub fn edge_equivalence(sys: &ReductionSystem, v: VertexId) -> Result<EdgeEquivalence, RootError> {
    ensure_vertex(sys, v)?;
    let table = RootTable::compute(sys)?;
    Ok(classes_at(sys, &table, v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EeVerdict {
    Holds,
    /// The least vertex with two inequivalent moves, and the least such pair.
    Fails {
        vertex: VertexId,
        first: EdgeId,
        second: EdgeId,
    },
}

impl EeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EeVerdict::Holds)
    }
}

fn ee_from_table(sys: &ReductionSystem, table: &RootTable) -> EeVerdict {
    for v in sys.vertices() {
        let eq = classes_at(sys, table, v);
        if eq.class_count() > 1 {
            // The smallest edge sits first in class 0; pair it with the
            // smallest edge outside that class.
            let first = eq.classes[0][0];
            let second = eq.classes[1..]
                .iter()
                .map(|c| c[0])
                .min()
                .expect("at least two classes");
            return EeVerdict::Fails {
                vertex: v,
                first,
                second,
            };
        }
    }
    EeVerdict::Holds
}

/// Checks that at every vertex all outgoing moves are equivalent.
pub fn check_ee(sys: &ReductionSystem) -> Result<EeVerdict, RootError> {
    let table = RootTable::compute(sys)?;
    Ok(ee_from_table(sys, &table))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfVerdict {
    Holds(ComplexityMap),
    /// Closed cycle witness.
    Fails(Vec<VertexId>),
}

impl CfVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CfVerdict::Holds(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootOutcome {
    Unique(VertexId),
    Multiple(Vec<VertexId>),
    /// A directed cycle is reachable from the vertex.
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexReport {
    pub outcome: RootOutcome,
    /// Number of edge-equivalence classes; `None` when the system is cyclic.
    pub classes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub cf: CfVerdict,
    /// `None` when CF fails, since equivalence is only defined with roots.
    pub ee: Option<EeVerdict>,
    pub vertices: BTreeMap<VertexId, VertexReport>,
    /// A vertex with several roots although CF and EE both hold. Always
    /// `None` for a correct implementation.
    pub violation: Option<VertexId>,
}

impl RootReport {
    pub fn all_unique(&self) -> bool {
        self.vertices
            .values()
            .all(|r| matches!(r.outcome, RootOutcome::Unique(_)))
    }

    pub fn multi_root_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .filter(|(_, r)| matches!(r.outcome, RootOutcome::Multiple(_)))
            .map(|(&v, _)| v)
    }
}

fn outcome_of(set: &[VertexId]) -> RootOutcome {
    match set {
        [r] => RootOutcome::Unique(*r),
        _ => RootOutcome::Multiple(set.to_vec()),
    }
}

/// Computes CF, EE and the root set of every vertex, and checks that CF and
/// EE together force every root set to be a singleton.
pub fn verify_theorem(sys: &ReductionSystem) -> RootReport {
    match synthesize_complexity(sys) {
        Ok(map) => {
            let table = RootTable::compute(sys).expect("acyclic system");
            let ee = ee_from_table(sys, &table);
            let vertices: BTreeMap<_, _> = sys
                .vertices()
                .map(|v| {
                    let report = VertexReport {
                        outcome: outcome_of(table.get(v)),
                        classes: Some(classes_at(sys, &table, v).class_count()),
                    };
                    (v, report)
                })
                .collect();
            let violation = if ee.holds() {
                vertices
                    .iter()
                    .find(|(_, r)| !matches!(r.outcome, RootOutcome::Unique(_)))
                    .map(|(&v, _)| v)
            } else {
                None
            };
            RootReport {
                cf: CfVerdict::Holds(map),
                ee: Some(ee),
                vertices,
                violation,
            }
        }
        Err(ComplexityError::CycleDetected(cycle)) => {
            let vertices = sys
                .vertices()
                .map(|v| {
                    let outcome = match roots(sys, v) {
                        Ok(set) => outcome_of(set.roots()),
                        Err(_) => RootOutcome::Undefined,
                    };
                    (
                        v,
                        VertexReport {
                            outcome,
                            classes: None,
                        },
                    )
                })
                .collect();
            RootReport {
                cf: CfVerdict::Fails(cycle),
                ee: None,
                vertices,
                violation: None,
            }
        }
        Err(other) => unreachable!("synthesis only fails on cycles: {other}"),
    }
}

/// The multi-root vertex of least synthesized complexity, ties broken by id.
pub fn find_counterexample(
    sys: &ReductionSystem,
) -> Result<Option<(VertexId, RootSet)>, RootError> {
    let map = synthesize_complexity(sys)?;
    let table = RootTable::compute(sys)?;
    let least = sys
        .vertices()
        .filter(|&v| table.get(v).len() > 1)
        .min_by_key(|&v| (map.get(v).expect("total map").clone(), v));
    Ok(least.map(|v| (v, table.root_set(v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(vs: &[&str], es: &[(&str, &str)]) -> ReductionSystem {
        ReductionSystem::build(vs, es).unwrap()
    }

    fn diamond() -> ReductionSystem {
        sys(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
    }

    fn fork() -> ReductionSystem {
        sys(&["a", "b", "c"], &[("a", "b"), ("a", "c")])
    }

    fn names(s: &ReductionSystem, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| s.name(v).to_string()).collect()
    }

    fn id(s: &ReductionSystem, name: &str) -> VertexId {
        s.lookup(name).unwrap()
    }

    #[test]
    fn roots_of_diamond_and_fork() {
        let d = diamond();
        assert_eq!(names(&d, roots(&d, id(&d, "a")).unwrap().roots()), ["d"]);
        let f = fork();
        assert_eq!(
            names(&f, roots(&f, id(&f, "a")).unwrap().roots()),
            ["b", "c"]
        );
    }

    #[test]
    fn sink_is_its_own_root() {
        let d = diamond();
        let r = roots(&d, id(&d, "d")).unwrap();
        assert_eq!(r.single(), Some(id(&d, "d")));
    }

    #[test]
    fn roots_reject_reachable_cycle() {
        let s = sys(&["p", "a", "b"], &[("p", "a"), ("a", "b"), ("b", "a")]);
        assert!(matches!(
            roots(&s, id(&s, "p")),
            Err(RootError::CyclicSystem(_))
        ));
    }

    #[test]
    fn roots_ignore_unreachable_cycle() {
        let s = sys(&["p", "q", "a", "b"], &[("p", "q"), ("a", "b"), ("b", "a")]);
        assert_eq!(unique_root(&s, id(&s, "p")).unwrap(), id(&s, "q"));
    }

    #[test]
    fn unique_root_cases() {
        let d = diamond();
        assert_eq!(unique_root(&d, id(&d, "a")).unwrap(), id(&d, "d"));
        let f = fork();
        let err = unique_root(&f, id(&f, "a")).unwrap_err();
        let RootError::MultipleRoots(set) = err else {
            panic!("expected MultipleRoots");
        };
        assert_eq!(names(&f, set.roots()), ["b", "c"]);
        let chain = sys(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(
            unique_root(&chain, id(&chain, "a")).unwrap(),
            id(&chain, "c")
        );
    }

    #[test]
    fn unknown_vertex() {
        let d = diamond();
        assert!(matches!(
            roots(&d, VertexId::from_index(99)),
            Err(RootError::System(SystemError::UnknownVertex(_)))
        ));
    }

    #[test]
    fn elementary_equivalence_cases() {
        let d = diamond();
        let (e0, e1) = (EdgeId::from_index(0), EdgeId::from_index(1));
        assert!(elementary_equivalent(&d, e0, e1).unwrap());
        assert!(elementary_equivalent(&d, e0, e0).unwrap());
        let f = fork();
        assert!(!elementary_equivalent(&f, e0, e1).unwrap());
        assert!(matches!(
            elementary_equivalent(&d, e0, EdgeId::from_index(2)),
            Err(RootError::SourceMismatch { .. })
        ));
    }

    #[test]
    fn equivalence_classes() {
        let d = diamond();
        assert_eq!(edge_equivalence(&d, id(&d, "a")).unwrap().class_count(), 1);
        let f = fork();
        let eq = edge_equivalence(&f, id(&f, "a")).unwrap();
        assert_eq!(eq.class_count(), 2);
        assert_eq!(eq.class_of(EdgeId::from_index(1)), Some(1));
    }

    /// v has moves to x1, x2, x3 with roots {r1, s}, {s, t}, {t, r3}:
    /// e1 ~ e2 and e2 ~ e3 directly, e1 and e3 only through e2.
    fn chained() -> ReductionSystem {
        sys(
            &["v", "x1", "x2", "x3", "r1", "s", "t", "r3"],
            &[
                ("v", "x1"),
                ("v", "x2"),
                ("v", "x3"),
                ("x1", "r1"),
                ("x1", "s"),
                ("x2", "s"),
                ("x2", "t"),
                ("x3", "t"),
                ("x3", "r3"),
            ],
        )
    }

    #[test]
    fn equivalence_closes_through_middle_edge() {
        let s = chained();
        let v = id(&s, "v");
        let out = s.out_edges(v).to_vec();
        // Root sets enumerated by hand: {r1,s}, {s,t}, {t,r3}.
        assert_eq!(
            names(&s, roots(&s, id(&s, "x1")).unwrap().roots()),
            ["r1", "s"]
        );
        assert_eq!(
            names(&s, roots(&s, id(&s, "x3")).unwrap().roots()),
            ["t", "r3"]
        );
        assert!(elementary_equivalent(&s, out[0], out[1]).unwrap());
        assert!(elementary_equivalent(&s, out[1], out[2]).unwrap());
        assert!(!elementary_equivalent(&s, out[0], out[2]).unwrap());
        let eq = edge_equivalence(&s, v).unwrap();
        assert_eq!(eq.classes(), &[out]);
    }

    #[test]
    fn ee_verdicts() {
        assert_eq!(check_ee(&diamond()).unwrap(), EeVerdict::Holds);
        let f = fork();
        assert_eq!(
            check_ee(&f).unwrap(),
            EeVerdict::Fails {
                vertex: id(&f, "a"),
                first: EdgeId::from_index(0),
                second: EdgeId::from_index(1),
            }
        );
        let union = sys(
            &["a", "b", "c", "d", "p", "q", "r"],
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "d"),
                ("c", "d"),
                ("p", "q"),
                ("p", "r"),
            ],
        );
        assert!(matches!(
            check_ee(&union).unwrap(),
            EeVerdict::Fails { vertex, .. } if union.name(vertex) == "p"
        ));
    }

    #[test]
    fn ee_requires_acyclic() {
        let s = sys(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(check_ee(&s), Err(RootError::CyclicSystem(_))));
    }

    #[test]
    fn verify_diamond() {
        let d = diamond();
        let report = verify_theorem(&d);
        assert!(report.cf.holds());
        assert_eq!(report.ee, Some(EeVerdict::Holds));
        let dd = id(&d, "d");
        assert!(report
            .vertices
            .values()
            .all(|r| r.outcome == RootOutcome::Unique(dd)));
        assert_eq!(report.violation, None);
    }

    #[test]
    fn verify_fork() {
        let f = fork();
        let report = verify_theorem(&f);
        assert!(report.cf.holds());
        assert!(!report.ee.as_ref().unwrap().holds());
        assert_eq!(
            report.vertices[&id(&f, "a")].outcome,
            RootOutcome::Multiple(vec![id(&f, "b"), id(&f, "c")])
        );
        assert_eq!(report.multi_root_vertices().count(), 1);
    }

    #[test]
    fn verify_cyclic() {
        let s = sys(&["p", "a", "b", "z"], &[("a", "b"), ("b", "a"), ("p", "z")]);
        let report = verify_theorem(&s);
        assert!(!report.cf.holds());
        assert_eq!(report.ee, None);
        assert_eq!(
            report.vertices[&id(&s, "a")].outcome,
            RootOutcome::Undefined
        );
        assert_eq!(
            report.vertices[&id(&s, "p")].outcome,
            RootOutcome::Unique(id(&s, "z"))
        );
    }

    #[test]
    fn counterexamples() {
        assert_eq!(find_counterexample(&diamond()).unwrap(), None);
        let f = fork();
        let (v, set) = find_counterexample(&f).unwrap().unwrap();
        assert_eq!(f.name(v), "a");
        assert_eq!(names(&f, set.roots()), ["b", "c"]);

        let deeper = sys(&["p", "a", "b", "c"], &[("p", "a"), ("a", "b"), ("a", "c")]);
        let (v, _) = find_counterexample(&deeper).unwrap().unwrap();
        assert_eq!(deeper.name(v), "a");
    }

    #[test]
    fn descent_lands_on_a_root() {
        let s = chained();
        let c = synthesize_complexity(&s).unwrap();
        for v in s.vertices() {
            let r = descend(&s, &c, v).unwrap();
            assert!(s.is_sink(r));
            assert!(roots(&s, v).unwrap().contains(r));
            assert_eq!(roots_by_descent(&s, &c, v).unwrap(), roots(&s, v).unwrap());
        }
    }
}
