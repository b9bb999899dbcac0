//! Planarity, rotation systems and crossing witnesses.
//!
//! A crossing witness is checked by planarizing it: each crossing pair
//! `{uv, xy}` becomes a dummy vertex `c` with spokes to `u, v, x, y`, wrapped
//! in the kite cycle `u-x-v-y-u`. The kite forces the rotation at `c` to
//! alternate between the two edges, so the planarization is planar exactly
//! when the graph has a 1-planar drawing whose crossings are the witness.

mod kuratowski;
mod lr;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constraints::ConstraintSet;
use crate::graph::{edge, Edge, Graph, Vertex};

pub use kuratowski::{kuratowski_subgraph, Obstruction};

/// Undirected multigraph with stable edge ids (the index into `edges`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Multigraph {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> usize {
        assert!(u != v && u < self.n && v < self.n, "bad multigraph edge {u}-{v}");
        self.edges.push(edge(u, v));
        self.edges.len() - 1
    }

    /// Distinct edges plus, for every edge id, the index of its distinct class.
    fn simple_classes(&self) -> (Vec<Edge>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&i| (self.edges[i], i));
        let mut simple = Vec::new();
        let mut class = vec![0; self.edges.len()];
        for i in order {
            if simple.last() != Some(&self.edges[i]) {
                simple.push(self.edges[i]);
            }
            class[i] = simple.len() - 1;
        }
        (simple, class)
    }

    pub fn is_planar(&self) -> bool {
        let mut simple = self.edges.clone();
        simple.sort_unstable();
        simple.dedup();
        lr::is_planar(self.n, &simple)
    }
}

/// Cyclic orders of edge ends around each vertex. Edge `e` owns darts `2e`
/// (leaving `ends[e].0`) and `2e + 1` (leaving `ends[e].1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    ends: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("vertex {0} does not lie on face {1}")]
    NotOnFace(Vertex, usize),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("the two attachment vertices coincide")]
    SameVertex,
}

impl RotationSystem {
    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_ends(&self) -> &[Edge] {
        &self.ends
    }

    pub fn tail(&self, dart: usize) -> Vertex {
        let (a, b) = self.ends[dart / 2];
        if dart.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, dart: usize) -> Vertex {
        self.tail(dart ^ 1)
    }

    /// Darts leaving `v`, in cyclic order.
    pub fn rotation(&self, v: Vertex) -> &[usize] {
        &self.rotation[v]
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.ends.len()];
        for rot in &self.rotation {
            for (i, &d) in rot.iter().enumerate() {
                pos[d] = i;
            }
        }
        pos
    }

    /// Faces as dart cycles; `next(d)` is the successor of `twin(d)` around
    /// the head of `d`. Order is deterministic (by smallest starting dart).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let pos = self.positions();
        let mut seen = vec![false; 2 * self.ends.len()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                let t = d ^ 1;
                let rot = &self.rotation[self.tail(t)];
                d = rot[(pos[t] + 1) % rot.len()];
            }
            faces.push(face);
        }
        faces
    }

    /// Boundary vertices of a face walk, in walk order.
    pub fn face_vertices(&self, face: &[usize]) -> Vec<Vertex> {
        face.iter().map(|&d| self.tail(d)).collect()
    }

    /// Euler's formula per connected component, counting an isolated vertex
    /// as a component with one face.
    pub fn satisfies_euler(&self) -> bool {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = ncomp;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        let mut chi = vec![0i64; ncomp];
        for v in 0..n {
            chi[comp[v]] += if self.rotation[v].is_empty() { 2 } else { 1 };
        }
        for &(a, _) in &self.ends {
            chi[comp[a]] -= 1;
        }
        for f in self.faces() {
            chi[comp[self.tail(f[0])]] += 1;
        }
        chi.iter().all(|&c| c == 2)
    }

    /// Embeds a new degree-two vertex inside `face`, joined to `a` and `b`.
    /// Returns the new system and the new vertex id.
    pub fn insert_two_path(
        &self,
        a: Vertex,
        b: Vertex,
        face: usize,
    ) -> Result<(RotationSystem, Vertex), EmbeddingError> {
        if a == b {
            return Err(EmbeddingError::SameVertex);
        }
        let faces = self.faces();
        let walk = faces.get(face).ok_or(EmbeddingError::NoSuchFace(face))?;
        // corner at x: the dart of the walk leaving x, preceded by the twin of
        // the dart entering x
        let corner = |x: Vertex| -> Result<(usize, usize), EmbeddingError> {
            let i = walk
                .iter()
                .position(|&d| self.tail(d) == x)
                .ok_or(EmbeddingError::NotOnFace(x, face))?;
            let prev = walk[(i + walk.len() - 1) % walk.len()];
            Ok((prev ^ 1, walk[i]))
        };
        let (after_a, _) = corner(a)?;
        let (after_b, _) = corner(b)?;

        let mut out = self.clone();
        let x = out.rotation.len();
        out.rotation.push(Vec::new());
        let ea = out.ends.len();
        out.ends.push((a, x));
        out.ends.push((x, b));
        let (da, dxa, dxb, db) = (2 * ea, 2 * ea + 1, 2 * ea + 2, 2 * ea + 3);
        for (v, after, d) in [(a, after_a, da), (b, after_b, db)] {
            let rot = &mut out.rotation[v];
            if rot.is_empty() {
                rot.push(d);
            } else {
                let p = rot.iter().position(|&y| y == after).expect("corner dart");
                rot.insert(p + 1, d);
            }
        }
        out.rotation[x] = vec![dxa, dxb];
        Ok((out, x))
    }
}

/// Planar embedding of `g`, or `None` when `g` is not planar. Parallel edges
/// are embedded next to their twin so that each pair bounds a digon face.
pub fn planarity_test(g: &Multigraph) -> Option<RotationSystem> {
    let (simple, class) = g.simple_classes();
    let rot = lr::embed(g.n, &simple)?;
    let mut rep = vec![usize::MAX; simple.len()];
    for (i, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    let dart_at = |e: usize, v: Vertex| if g.edges[e].0 == v { 2 * e } else { 2 * e + 1 };
    let mut rotation: Vec<Vec<usize>> = (0..g.n)
        .map(|v| rot[v].iter().map(|&s| dart_at(rep[s], v)).collect())
        .collect();
    for (i, &c) in class.iter().enumerate() {
        let r = rep[c];
        if r == i {
            continue;
        }
        let (u, v) = g.edges[r];
        let ru = rotation[u].iter().position(|&d| d == dart_at(r, u)).unwrap();
        rotation[u].insert(ru + 1, dart_at(i, u));
        let rv = rotation[v].iter().position(|&d| d == dart_at(r, v)).unwrap();
        rotation[v].insert(rv, dart_at(i, v));
    }
    Some(RotationSystem {
        ends: g.edges.clone(),
        rotation,
    })
}

pub fn is_planar(g: &Graph) -> bool {
    lr::is_planar(g.n(), g.edges())
}

pub(crate) fn is_planar_edges(n: usize, edges: &[Edge]) -> bool {
    lr::is_planar(n, edges)
}

/// A set of crossing edge pairs, kept normalized: each pair ordered, pairs sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingWitness {
    pairs: Vec<(Edge, Edge)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("edge {0:?} is not in the graph")]
    UnknownEdge(Edge),
    #[error("edges {0:?} and {1:?} share a vertex")]
    AdjacentPair(Edge, Edge),
    #[error("edge {0:?} appears in more than one crossing")]
    NotMatching(Edge),
}

impl CrossingWitness {
    pub fn new(pairs: impl IntoIterator<Item = (Edge, Edge)>) -> Self {
        let mut pairs: Vec<(Edge, Edge)> = pairs
            .into_iter()
            .map(|(e, f)| {
                let (e, f) = (edge(e.0, e.1), edge(f.0, f.1));
                if e <= f {
                    (e, f)
                } else {
                    (f, e)
                }
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        CrossingWitness { pairs }
    }

    pub fn empty() -> Self {
        CrossingWitness::default()
    }

    pub fn pairs(&self) -> &[(Edge, Edge)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn crossed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pairs.iter().flat_map(|&(e, f)| [e, f])
    }

    /// Structural validity: known edges, vertex-disjoint pairs, a matching.
    pub fn validate(&self, g: &Graph) -> Result<(), WitnessError> {
        let mut used = BTreeSet::new();
        for &(e, f) in &self.pairs {
            for x in [e, f] {
                if !g.has_edge(x.0, x.1) {
                    return Err(WitnessError::UnknownEdge(x));
                }
                if !used.insert(x) {
                    return Err(WitnessError::NotMatching(x));
                }
            }
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                return Err(WitnessError::AdjacentPair(e, f));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CrossingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &((a, b), (c, d)) in &self.pairs {
            writeln!(f, "cross {a} {b} {c} {d}")?;
        }
        Ok(())
    }
}

/// Where an edge of a planarization came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Uncrossed edge of the host graph (host edge id).
    Original(usize),
    /// Half of crossed host edge `edge` between its endpoint and the dummy of `pair`.
    Spoke { pair: usize, edge: usize },
    /// Kite edge around the dummy of `pair`.
    Kite { pair: usize },
}

#[derive(Debug, Clone)]
pub struct Planarization {
    pub graph: Multigraph,
    pub origin: Vec<EdgeOrigin>,
}

/// Kite-augmented planarization. Dummy vertex of pair `i` is `g.n() + i`.
pub fn planarize_with_kites(g: &Graph, w: &CrossingWitness) -> Result<Planarization, WitnessError> {
    w.validate(g)?;
    let mut crossed = vec![false; g.m()];
    for &(e, f) in w.pairs() {
        crossed[g.edge_id(e.0, e.1).unwrap()] = true;
        crossed[g.edge_id(f.0, f.1).unwrap()] = true;
    }
    let mut graph = Multigraph::new(g.n());
    let mut origin = Vec::with_capacity(g.m() + 6 * w.len());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if !crossed[i] {
            graph.add_edge(u, v);
            origin.push(EdgeOrigin::Original(i));
        }
    }
    for (p, &((u, v), (x, y))) in w.pairs().iter().enumerate() {
        let c = graph.add_vertex();
        let (ei, fi) = (g.edge_id(u, v).unwrap(), g.edge_id(x, y).unwrap());
        for (end, id) in [(u, ei), (v, ei), (x, fi), (y, fi)] {
            graph.add_edge(end, c);
            origin.push(EdgeOrigin::Spoke { pair: p, edge: id });
        }
        for (a, b) in [(u, x), (x, v), (v, y), (y, u)] {
            graph.add_edge(a, b);
            origin.push(EdgeOrigin::Kite { pair: p });
        }
    }
    Ok(Planarization { graph, origin })
}

/// True iff `w` is structurally valid, respects `cs`, and its kite
/// planarization is planar.
pub fn verify_witness(g: &Graph, w: &CrossingWitness, cs: &ConstraintSet) -> bool {
    if w.pairs().iter().any(|&(e, f)| !cs.allows_pair(e, f)) {
        return false;
    }
    match planarize_with_kites(g, w) {
        Ok(p) => p.graph.is_planar(),
        Err(_) => false,
    }
}

/// One sub-instance of an uncrossable split: a graph in local ids, its
/// witness, and the host id of each local vertex.
#[derive(Debug, Clone)]
pub struct Piece {
    pub graph: Graph,
    pub witness: CrossingWitness,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("piece {0} does not contain the shared edge")]
    MissingShared(usize),
    #[error("piece {0} crosses the shared edge")]
    SharedCrossed(usize),
}

/// Glues pieces along the shared host vertex pair. Every piece contains the
/// shared edge uncrossed, so the planarizations glue along an uncrossed edge
/// and the union of the witnesses is a witness of the glued graph (with or
/// without the shared edge).
pub fn merge_at_shared_edge(pieces: &[Piece], shared: Edge) -> Result<CrossingWitness, MergeError> {
    let shared = edge(shared.0, shared.1);
    let mut pairs = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let local = |h: Vertex| p.vertices.iter().position(|&x| x == h);
        let (Some(a), Some(b)) = (local(shared.0), local(shared.1)) else {
            return Err(MergeError::MissingShared(i));
        };
        if !p.graph.has_edge(a, b) {
            return Err(MergeError::MissingShared(i));
        }
        let s = edge(a, b);
        if p.witness.crossed_edges().any(|e| e == s) {
            return Err(MergeError::SharedCrossed(i));
        }
        let map = |(u, v): Edge| edge(p.vertices[u], p.vertices[v]);
        pairs.extend(p.witness.pairs().iter().map(|&(e, f)| (map(e), map(f))));
    }
    Ok(CrossingWitness::new(pairs))
}
