//! Canonical labeling of red/green bipartite multigraphs.
//!
//! Each connected component is labeled on its own and the components are
//! laid out in order of their codes. Within a component: colour refinement
//! followed by individualization of red vertices, taking the least leaf
//! encoding. Greens are never individualized: once every red has its own
//! colour, a green is determined by its multiset of red neighbours, and
//! greens are simply sorted. Greens whose links all meet a single red are
//! folded into that red's initial colour, so reds that differ only by such
//! private greens count as twins.

use std::fmt;

/// Isomorphism-invariant encoding of a handle graph. Byte order is the
/// total order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Encoding of an already relabeled graph whose greens are sorted.
pub(crate) fn encode(reds: usize, greens: &[Vec<usize>]) -> CanonicalCode {
    let mut bytes = Vec::with_capacity(8 + greens.iter().map(|g| 4 + 4 * g.len()).sum::<usize>());
    let mut push = |x: usize| bytes.extend_from_slice(&(x as u32).to_be_bytes());
    push(reds);
    push(greens.len());
    for g in greens {
        push(g.len());
        for &r in g {
            push(r);
        }
    }
    CanonicalCode(bytes)
}

/// Result of canonicalizing a raw graph.
pub(crate) struct Labeling {
    /// Canonical greens, each sorted, in sorted order.
    pub greens: Vec<Vec<usize>>,
    /// Raw red index -> canonical red index.
    pub red_map: Vec<usize>,
    /// Raw green index -> canonical green index.
    pub green_map: Vec<usize>,
}

struct Search<'a> {
    reds: usize,
    greens: &'a [Vec<usize>],
    /// Adjacency over all vertices: reds are `0..reds`, green `i` is
    /// `reds + i`. Parallel links appear with multiplicity.
    adj: Vec<Vec<usize>>,
    /// Reds with identical neighbourhoods share a twin class.
    twin: Vec<usize>,
    best: Option<(CanonicalCode, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(reds: usize, greens: &'a [Vec<usize>], private: &[bool], label: &[u32]) -> Self {
        let mut adj = vec![Vec::new(); reds + greens.len()];
        for (i, g) in greens.iter().enumerate() {
            if private[i] {
                continue;
            }
            for &r in g {
                adj[r].push(reds + i);
                adj[reds + i].push(r);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let mut twin = vec![0; reds];
        for r in 0..reds {
            twin[r] = (0..=r)
                .find(|&s| label[s] == label[r] && adj[s] == adj[r])
                .expect("r matches itself");
        }
        Search {
            reds,
            greens,
            adj,
            twin,
            best: None,
        }
    }

    /// Refines `colors` to the coarsest equitable partition below it.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = self
                .adj
                .iter()
                .enumerate()
                .map(|(v, nbrs)| {
                    let mut around: Vec<u32> = nbrs.iter().map(|&w| colors[w]).collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut ranked: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            ranked.sort();
            ranked.dedup();
            for (v, sig) in sigs.iter().enumerate() {
                colors[v] = ranked.binary_search(&sig).expect("signature present") as u32;
            }
            if ranked.len() == classes {
                return;
            }
            classes = ranked.len();
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let target = (0..self.reds)
            .filter(|&r| (0..self.reds).any(|s| s != r && colors[s] == colors[r]))
            .map(|r| colors[r])
            .min();
        let Some(cell) = target else {
            self.leaf(&colors);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for r in 0..self.reds {
            if colors[r] != cell || tried.contains(&self.twin[r]) {
                continue;
            }
            tried.push(self.twin[r]);
            let next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(v, &c)| 2 * c + u32::from(v != r))
                .collect();
            self.run(next);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let mut order: Vec<usize> = (0..self.reds).collect();
        order.sort_by_key(|&r| colors[r]);
        let mut red_map = vec![0; self.reds];
        for (new, &old) in order.iter().enumerate() {
            red_map[old] = new;
        }
        let greens = relabel(self.greens, &red_map);
        let code = encode(self.reds, &greens);
        if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
            self.best = Some((code, red_map));
        }
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn relabel(greens: &[Vec<usize>], red_map: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = greens
        .iter()
        .map(|g| {
            let mut h: Vec<usize> = g.iter().map(|&r| red_map[r]).collect();
            h.sort_unstable();
            h
        })
        .collect();
    out.sort_by(green_order);
    out
}

fn green_order(a: &Vec<usize>, b: &Vec<usize>) -> std::cmp::Ordering {
    (a.len(), a).cmp(&(b.len(), b))
}

/// Canonical red labeling of one connected graph, with its code.
fn canonical_component(reds: usize, greens: &[Vec<usize>]) -> (CanonicalCode, Vec<usize>) {
    let private: Vec<bool> = greens
        .iter()
        .map(|g| g.iter().all(|&r| r == g[0]))
        .collect();
    // A red's label is the sorted list of its private greens' sizes.
    let mut owned: Vec<Vec<usize>> = vec![Vec::new(); reds];
    for (g, _) in greens.iter().zip(&private).filter(|(_, &p)| p) {
        owned[g[0]].push(g.len());
    }
    for o in &mut owned {
        o.sort_unstable();
    }
    let mut kinds: Vec<&Vec<usize>> = owned.iter().collect();
    kinds.sort();
    kinds.dedup();
    let label: Vec<u32> = owned
        .iter()
        .map(|o| kinds.binary_search(&o).expect("label present") as u32)
        .collect();
    let greens_color = kinds.len() as u32;
    let initial: Vec<u32> = label
        .iter()
        .copied()
        .chain(std::iter::repeat_n(greens_color, greens.len()))
        .collect();

    let mut search = Search::new(reds, greens, &private, &label);
    search.run(initial);
    search.best.expect("search reaches a leaf")
}

/// Canonical labeling of the graph with `reds` red vertices and the given
/// greens (each a list of red endpoints). Greens must be non-empty.
pub(crate) fn canonicalize(reds: usize, greens: &[Vec<usize>]) -> Labeling {
    // Components, keyed by their least red.
    let mut parent: Vec<usize> = (0..reds).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in greens {
        for &r in &g[1..] {
            let (a, b) = (find(&mut parent, g[0]), find(&mut parent, r));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); reds];
    for r in 0..reds {
        let root = find(&mut parent, r);
        members[root].push(r);
    }
    let mut component_greens: Vec<Vec<usize>> = vec![Vec::new(); reds];
    for (i, g) in greens.iter().enumerate() {
        let root = find(&mut parent, g[0]);
        component_greens[root].push(i);
    }

    let mut local = vec![0; reds];
    let mut parts: Vec<(CanonicalCode, &[usize], Vec<usize>)> = Vec::new();
    for (root, rs) in members.iter().enumerate().filter(|(_, rs)| !rs.is_empty()) {
        for (i, &r) in rs.iter().enumerate() {
            local[r] = i;
        }
        let gs: Vec<Vec<usize>> = component_greens[root]
            .iter()
            .map(|&i| greens[i].iter().map(|&r| local[r]).collect())
            .collect();
        let (code, map) = canonical_component(rs.len(), &gs);
        parts.push((code, rs, map));
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));

    let mut red_map = vec![0; reds];
    let mut offset = 0;
    for (_, rs, map) in &parts {
        for (i, &r) in rs.iter().enumerate() {
            red_map[r] = offset + map[i];
        }
        offset += rs.len();
    }

    let mut tagged: Vec<(Vec<usize>, usize)> = greens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut h: Vec<usize> = g.iter().map(|&r| red_map[r]).collect();
            h.sort_unstable();
            (h, i)
        })
        .collect();
    tagged.sort_by(|a, b| green_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut green_map = vec![0; greens.len()];
    for (pos, (_, raw)) in tagged.iter().enumerate() {
        green_map[*raw] = pos;
    }
    Labeling {
        greens: tagged.into_iter().map(|(g, _)| g).collect(),
        red_map,
        green_map,
    }
}
