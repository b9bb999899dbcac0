//! Simple undirected graphs with dense vertex ids, plus the structural
//! decompositions every kernel pipeline consumes: 2-core, blocks, cyclomatic
//! number and maximal degree-two paths.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plan::{LiftPlan, Reduction};

/// Vertex id, dense in `[0, n)`.
pub type Vertex = usize;

/// Undirected edge, always stored with `0 < 1`.
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered vertex pair so the smaller id comes first.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} references a vertex outside [0, {2})")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("vertex {0} has degree one; run two_core first")]
    DegreeOneVertex(Vertex),
}

/// A simple undirected graph. Edges are kept sorted, so two graphs with the
/// same vertex count and edge set compare equal regardless of input order.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "RawGraph", try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        Graph::new(raw.n, raw.edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Like [`Graph::new`] but silently drops duplicate edges.
    pub fn new_dedup(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(n, list))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order; the position of an edge is its edge id.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edge id of `{u, v}`, if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components (isolated vertices included), each sorted, listed
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`; local id `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| edge(local[u], local[v]))
            .collect::<Vec<_>>();
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Graph with one edge removed.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let e = edge(e.0, e.1);
        Self::from_sorted(self.n, self.edges.iter().copied().filter(|&f| f != e).collect())
    }

    /// Graph with one edge added (no-op if present).
    pub fn with_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let e = edge(e.0, e.1);
        Graph::new_dedup(self.n, self.edges.iter().copied().chain(std::iter::once(e)))
    }

    /// Vertex-disjoint union; the second graph's ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_sorted(self.n + other.n, edges)
    }
}

/// Iteratively deletes vertices of degree at most one.
///
/// Removal is queue driven and runs in linear time. Each deletion appends a
/// `LeafRemoval` record; a final `Compact` record maps the surviving vertices
/// to dense ids in the returned graph.
pub fn two_core(g: &Graph) -> (Graph, LiftPlan) {
    let mut plan = LiftPlan::new(g.n());
    let (survivors, records) = peel_low_degree(g, |_| true);
    for r in records {
        plan.push(r);
    }
    let core = g.induced(&survivors);
    plan.push(Reduction::Compact {
        instance: 0,
        vertices: survivors,
    });
    (core, plan)
}

/// Peels vertices of degree <= 1 for which `eligible` holds. Returns the
/// survivors (sorted) and the removal records in order.
pub(crate) fn peel_low_degree(
    g: &Graph,
    eligible: impl Fn(Vertex) -> bool,
) -> (Vec<Vertex>, Vec<Reduction>) {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut queue: VecDeque<Vertex> = (0..g.n()).filter(|&v| deg[v] <= 1 && eligible(v)).collect();
    let mut queued = vec![false; g.n()];
    for &v in &queue {
        queued[v] = true;
    }
    let mut records = Vec::new();
    while let Some(v) = queue.pop_front() {
        let neighbor = g.neighbors(v).iter().copied().find(|&w| !removed[w]);
        removed[v] = true;
        records.push(Reduction::LeafRemoval { vertex: v, neighbor });
        if let Some(w) = neighbor {
            deg[w] -= 1;
            if deg[w] <= 1 && !queued[w] && eligible(w) {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }
    let survivors = (0..g.n()).filter(|&v| !removed[v]).collect();
    (survivors, records)
}

/// A biconnected component (or bridge) with its vertex map into the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub graph: Graph,
    /// `vertices[i]` is the host id of local vertex `i`; sorted.
    pub vertices: Vec<Vertex>,
}

impl Block {
    /// Host-graph edges of this block.
    pub fn host_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| edge(self.vertices[u], self.vertices[v]))
    }
}

/// Biconnected components. Blocks partition the edge set; isolated vertices
/// belong to no block. Blocks are ordered by their smallest host edge.
pub fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut groups: Vec<Vec<Edge>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(edge(v, w));
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(edge(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let target = edge(parent, v);
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == target {
                                break;
                            }
                        }
                        groups.push(comp);
                    }
                }
            }
        }
    }

    let mut out: Vec<Block> = groups
        .into_iter()
        .map(|mut comp| {
            comp.sort_unstable();
            let mut vertices: Vec<Vertex> = comp.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let local = |x: Vertex| vertices.binary_search(&x).unwrap();
            let edges: Vec<Edge> = comp.iter().map(|&(u, v)| edge(local(u), local(v))).collect();
            let graph = Graph::new(vertices.len(), edges).expect("block edges are simple");
            Block { graph, vertices }
        })
        .collect();
    out.sort_by_key(|b| b.host_edges().min());
    out
}

/// `m - n + c`.
pub fn cyclomatic_number(g: &Graph) -> usize {
    g.m() + g.components().len() - g.n()
}

/// A maximal path whose interior vertices all have degree two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTwoPath {
    /// Endpoints of degree > 2; equal when the path returns to its start.
    pub endpoints: (Vertex, Vertex),
    /// Interior vertices in order from `endpoints.0` to `endpoints.1`.
    pub interior: Vec<Vertex>,
}

impl DegreeTwoPath {
    /// Vertex sequence including both endpoints.
    pub fn walk(&self) -> Vec<Vertex> {
        let mut w = Vec::with_capacity(self.interior.len() + 2);
        w.push(self.endpoints.0);
        w.extend_from_slice(&self.interior);
        w.push(self.endpoints.1);
        w
    }

    pub fn edge_count(&self) -> usize {
        self.interior.len() + 1
    }
}

/// Result of [`maximal_degree_two_paths`]: the paths proper plus components
/// that are plain cycles (every vertex of degree two).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeTwoDecomposition {
    pub paths: Vec<DegreeTwoPath>,
    /// Each pure cycle as a closed vertex walk (first vertex not repeated).
    pub cycles: Vec<Vec<Vertex>>,
}

/// Splits the edges of a graph of minimum degree >= 2 into maximal
/// degree-two paths and pure-cycle components.
pub fn maximal_degree_two_paths(g: &Graph) -> Result<DegreeTwoDecomposition, GraphError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Err(GraphError::DegreeOneVertex(v));
    }
    let mut used = vec![false; g.m()];
    let mut out = DegreeTwoDecomposition::default();
    let eid = |a: Vertex, b: Vertex| g.edge_id(a, b).expect("walk follows edges");

    for h in 0..g.n() {
        if g.degree(h) <= 2 {
            continue;
        }
        for &first in g.neighbors(h) {
            if used[eid(h, first)] {
                continue;
            }
            used[eid(h, first)] = true;
            let mut interior = Vec::new();
            let (mut prev, mut cur) = (h, first);
            while g.degree(cur) == 2 {
                interior.push(cur);
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| !used[eid(cur, x)])
                    .unwrap_or_else(|| {
                        // both edges used: only possible when the walk closes on itself
                        if g.neighbors(cur)[0] == prev {
                            g.neighbors(cur)[1]
                        } else {
                            g.neighbors(cur)[0]
                        }
                    });
                used[eid(cur, next)] = true;
                prev = cur;
                cur = next;
            }
            out.paths.push(DegreeTwoPath {
                endpoints: (h, cur),
                interior,
            });
        }
    }

    for s in 0..g.n() {
        if g.degree(s) != 2 || used[eid(s, g.neighbors(s)[0])] {
            continue;
        }
        let mut cycle = vec![s];
        let (mut prev, mut cur) = (s, g.neighbors(s)[0]);
        used[eid(s, cur)] = true;
        while cur != s {
            cycle.push(cur);
            let next = if g.neighbors(cur)[0] == prev {
                g.neighbors(cur)[1]
            } else {
                g.neighbors(cur)[0]
            };
            used[eid(cur, next)] = true;
            prev = cur;
            cur = next;
        }
        out.cycles.push(cycle);
    }
    Ok(out)
}

/// Closed-form 1-planarity of `K_{a,b}`: 1-planar exactly for `K_{1,n}`,
/// `K_{2,n}`, `K_{3,3..=6}` and `K_{4,4}` (and trivially when a side is empty).
pub fn complete_bipartite_one_planar(a: usize, b: usize) -> bool {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match a {
        0..=2 => true,
        3 => b <= 6,
        4 => b == 4,
        _ => false,
    }
}
