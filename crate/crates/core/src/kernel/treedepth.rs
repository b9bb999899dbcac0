//! Tree-depth kernel.
//!
//! An elimination forest of depth `d` is normalized so that every child
//! subtree is connected and touches its parent. For each node, the child
//! subtrees are grouped by their attachment set `S` (the vertices outside
//! the subtree, all ancestors, that it is adjacent to). Too many groups on
//! three or more attachments force a crossing-heavy drawing and reject; a
//! group on exactly two attachments that is larger than `2^d` is split off:
//! every member becomes its own instance glued to the rest along an
//! uncrossable edge between the two attachments.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constraints::ConstraintSet;
use crate::graph::{blocks, edge, Edge, Graph, Vertex};
use crate::plan::{LiftPlan, Reduction};
use crate::solver::{exceeds_density, NotOnePlanarReason, SolveOptions};

use super::{solve_reduced, Instance, KernelOutcome, KernelReport, PipelineResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdError {
    #[error("parent array does not describe a forest")]
    NotAForest,
    #[error("forest does not fit the graph: {0:?} joins two unrelated vertices")]
    InvalidForest(Edge),
    #[error("graph is not 2-connected")]
    NotBiconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationForest {
    parent: Vec<Option<Vertex>>,
}

impl EliminationForest {
    pub fn new(parent: Vec<Option<Vertex>>) -> Result<Self, TdError> {
        let n = parent.len();
        // every upward walk must reach a root within n steps
        for start in 0..n {
            let mut v = start;
            let mut steps = 0;
            while let Some(p) = parent[v] {
                if p >= n || steps > n {
                    return Err(TdError::NotAForest);
                }
                v = p;
                steps += 1;
            }
        }
        Ok(EliminationForest { parent })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    /// Vertices on the path from `v` to its root, inclusive.
    pub fn depth_of(&self, v: Vertex) -> usize {
        let mut d = 1;
        let mut x = v;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    pub fn depth(&self) -> usize {
        (0..self.n()).map(|v| self.depth_of(v)).max().unwrap_or(0)
    }

    pub fn roots(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn children(&self) -> Vec<Vec<Vertex>> {
        let mut ch = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        ch
    }

    /// True when `a` is `d` or one of its ancestors.
    pub fn is_ancestor(&self, a: Vertex, d: Vertex) -> bool {
        let mut x = Some(d);
        while let Some(y) = x {
            if y == a {
                return true;
            }
            x = self.parent[y];
        }
        false
    }

    /// Every edge of `g` joins an ancestor-descendant pair.
    pub fn check(&self, g: &Graph) -> Result<(), TdError> {
        if g.n() != self.n() {
            return Err(TdError::NotAForest);
        }
        match g
            .edges()
            .iter()
            .find(|&&(u, v)| !self.is_ancestor(u, v) && !self.is_ancestor(v, u))
        {
            Some(&e) => Err(TdError::InvalidForest(e)),
            None => Ok(()),
        }
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.check(g).is_ok()
    }

    /// Forest on `vertices` (sorted; local id = position) where each vertex
    /// hangs below its nearest kept ancestor. Ancestry among kept vertices is
    /// unchanged, so validity carries over to induced subgraphs.
    pub fn restrict(&self, vertices: &[Vertex]) -> EliminationForest {
        let local: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let parent = vertices
            .iter()
            .map(|&v| {
                let mut x = self.parent[v];
                while let Some(y) = x {
                    if let Some(&l) = local.get(&y) {
                        return Some(l);
                    }
                    x = self.parent[y];
                }
                None
            })
            .collect();
        EliminationForest { parent }
    }

    fn subtree(&self, children: &[Vec<Vertex>], v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&children[out[i]]);
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// Depth-first search forest, rooted at a maximum-degree vertex of each
/// component. DFS trees have no cross edges, so this is always valid.
pub fn dfs_forest(g: &Graph) -> EliminationForest {
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for root in order {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*i) {
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    EliminationForest { parent }
}

struct TdSearch<'a> {
    g: &'a Graph,
    /// Largest `k` for which `td(set) > k` has been shown.
    failed: HashMap<Vec<Vertex>, usize>,
    calls: u64,
    limit: u64,
}

type Assignment = Vec<(Vertex, Option<Vertex>)>;

impl TdSearch<'_> {
    fn components(&self, set: &[Vertex]) -> Vec<Vec<Vertex>> {
        let inside: BTreeSet<Vertex> = set.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in set {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in self.g.neighbors(comp[i]) {
                    if inside.contains(&w) && seen.insert(w) {
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn local_graph(&self, set: &[Vertex]) -> Graph {
        self.g.induced(set)
    }

    /// Lower bound from degeneracy and from the longest DFS root path, plus
    /// the DFS forest as an upper-bound witness.
    fn bounds(&self, set: &[Vertex]) -> (usize, usize, EliminationForest) {
        let h = self.local_graph(set);
        let mut deg: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
        let mut queue: BTreeSet<(usize, Vertex)> = (0..h.n()).map(|v| (deg[v], v)).collect();
        let mut gone = vec![false; h.n()];
        let mut degeneracy = 0;
        while let Some((d, v)) = queue.pop_first() {
            degeneracy = degeneracy.max(d);
            gone[v] = true;
            for &w in h.neighbors(v) {
                if !gone[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        let f = dfs_forest(&h);
        let depth = f.depth();
        // a DFS root path is a path of `depth` vertices
        let path_bound = usize::BITS as usize - depth.leading_zeros() as usize;
        ((degeneracy + 1).max(path_bound), depth, f)
    }

    /// Forest of depth at most `k` for the connected vertex set.
    fn component(&mut self, set: &[Vertex], k: usize) -> Option<Assignment> {
        if set.len() == 1 {
            return (k >= 1).then(|| vec![(set[0], None)]);
        }
        if k <= 1 || self.failed.get(set).is_some_and(|&f| f >= k) {
            return None;
        }
        self.calls += 1;
        if self.calls > self.limit {
            return None;
        }
        let (lower, upper, f) = self.bounds(set);
        if upper <= k {
            return Some(
                (0..set.len())
                    .map(|i| (set[i], f.parent(i).map(|p| set[p])))
                    .collect(),
            );
        }
        if lower <= k {
            let mut order: Vec<Vertex> = set.to_vec();
            let inside: BTreeSet<Vertex> = set.iter().copied().collect();
            let local_degree = |v: Vertex| self.g.neighbors(v).iter().filter(|w| inside.contains(w)).count();
            order.sort_by_key(|&v| (std::cmp::Reverse(local_degree(v)), v));
            for v in order {
                let rest: Vec<Vertex> = set.iter().copied().filter(|&x| x != v).collect();
                if let Some(mut a) = self.forest(&rest, k - 1) {
                    for entry in &mut a {
                        if entry.1.is_none() {
                            entry.1 = Some(v);
                        }
                    }
                    a.push((v, None));
                    return Some(a);
                }
                if self.calls > self.limit {
                    return None;
                }
            }
        }
        if self.calls <= self.limit {
            let slot = self.failed.entry(set.to_vec()).or_insert(0);
            *slot = (*slot).max(k);
        }
        None
    }

    fn forest(&mut self, set: &[Vertex], k: usize) -> Option<Assignment> {
        let mut all = Vec::with_capacity(set.len());
        for comp in self.components(set) {
            all.extend(self.component(&comp, k)?);
        }
        Some(all)
    }
}

fn tree_depth_limited(g: &Graph, max_d: usize, limit: u64) -> Option<(usize, EliminationForest)> {
    if g.n() == 0 {
        return Some((0, EliminationForest { parent: Vec::new() }));
    }
    let mut s = TdSearch {
        g,
        failed: HashMap::new(),
        calls: 0,
        limit,
    };
    let all: Vec<Vertex> = (0..g.n()).collect();
    let comps = s.components(&all);
    let mut parent = vec![None; g.n()];
    let mut depth = 0;
    for comp in comps {
        let start = s.bounds(&comp).0.min(max_d + 1);
        let found = (start..=max_d).find_map(|k| s.component(&comp, k).map(|a| (k, a)));
        let (k, a) = found?;
        depth = depth.max(k);
        for (v, p) in a {
            parent[v] = p;
        }
    }
    let f = EliminationForest { parent };
    debug_assert!(f.is_valid_for(g) && f.depth() == depth);
    Some((depth, f))
}

/// Exact tree-depth with a witnessing forest, if it is at most `max_d`.
///
/// Branch and bound over "delete a vertex, recurse per component", with
/// failures memoized per vertex set; degeneracy and the DFS path length give
/// lower bounds and the DFS forest an upper bound.
pub fn tree_depth(g: &Graph, max_d: usize) -> Option<(usize, EliminationForest)> {
    tree_depth_limited(g, max_d, u64::MAX)
}

/// Rebuilds `f` top-down: the topmost vertex of each connected part becomes
/// its root and the components of the rest become its child subtrees. Every
/// child subtree is then connected and adjacent to its parent, and no
/// vertex moves deeper.
pub fn normalize_forest(g: &Graph, f: &EliminationForest) -> Result<EliminationForest, TdError> {
    f.check(g)?;
    let depth: Vec<usize> = (0..g.n()).map(|v| f.depth_of(v)).collect();
    let mut parent = vec![None; g.n()];
    let all: Vec<Vertex> = (0..g.n()).collect();
    let search = TdSearch {
        g,
        failed: HashMap::new(),
        calls: 0,
        limit: 0,
    };
    let mut stack: Vec<(Vec<Vertex>, Option<Vertex>)> =
        search.components(&all).into_iter().map(|c| (c, None)).collect();
    while let Some((set, above)) = stack.pop() {
        let top = *set.iter().min_by_key(|&&v| (depth[v], v)).unwrap();
        parent[top] = above;
        let rest: Vec<Vertex> = set.into_iter().filter(|&v| v != top).collect();
        for comp in search.components(&rest) {
            stack.push((comp, Some(top)));
        }
    }
    let out = EliminationForest { parent };
    debug_assert!(out.is_valid_for(g) && out.depth() <= f.depth());
    Ok(out)
}

/// Child subtrees of one node sharing an attachment set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildGroup {
    /// Vertices outside the subtrees that they are adjacent to; sorted.
    pub attachment: Vec<Vertex>,
    /// Roots of the child subtrees in this group.
    pub children: Vec<Vertex>,
}

/// Groups the children of `v` by attachment set, ordered by attachment.
pub fn classify_children(g: &Graph, f: &EliminationForest, v: Vertex) -> Vec<ChildGroup> {
    classify_with(g, f, &f.children(), v)
}

fn classify_with(g: &Graph, f: &EliminationForest, children: &[Vec<Vertex>], v: Vertex) -> Vec<ChildGroup> {
    let mut groups: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for &c in &children[v] {
        let tree = f.subtree(children, c);
        let mut s: Vec<Vertex> = tree
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().copied())
            .filter(|w| tree.binary_search(w).is_err())
            .collect();
        s.sort_unstable();
        s.dedup();
        groups.entry(s).or_default().push(c);
    }
    groups
        .into_iter()
        .map(|(attachment, children)| ChildGroup { attachment, children })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TdConfig {
    /// Groups on three or more attachments reject beyond `c1 * 2^d` members.
    pub c1: usize,
    /// Never reject; oversized groups are left to the solver instead.
    pub paranoid: bool,
    /// Largest depth tried by the exact tree-depth search before falling
    /// back to a DFS forest.
    pub max_d: usize,
}

impl Default for TdConfig {
    fn default() -> Self {
        TdConfig {
            c1: 20,
            paranoid: false,
            max_d: 6,
        }
    }
}

/// Work limit for the exact search inside pipelines.
const PIPELINE_TD_CALLS: u64 = 200_000;

struct Piece {
    /// Working ids, sorted.
    vertices: Vec<Vertex>,
    edges: BTreeSet<Edge>,
    uncrossable: BTreeSet<Edge>,
    forest: EliminationForest,
}

impl Piece {
    fn local(&self) -> Graph {
        let at = |x: Vertex| self.vertices.binary_search(&x).unwrap();
        Graph::new(self.vertices.len(), self.edges.iter().map(|&(u, v)| edge(at(u), at(v))))
            .expect("piece edges lie inside the piece")
    }

    fn sub(&self, keep: Vec<Vertex>, forest: &EliminationForest, extra: Edge) -> Piece {
        let inside = |e: &&Edge| keep.binary_search(&e.0).is_ok() && keep.binary_search(&e.1).is_ok();
        let mut edges: BTreeSet<Edge> = self.edges.iter().filter(inside).copied().collect();
        edges.insert(extra);
        let mut uncrossable: BTreeSet<Edge> = self.uncrossable.iter().filter(inside).copied().collect();
        uncrossable.insert(extra);
        let local: Vec<Vertex> = keep
            .iter()
            .map(|x| self.vertices.binary_search(x).unwrap())
            .collect();
        Piece {
            forest: forest.restrict(&local),
            vertices: keep,
            edges,
            uncrossable,
        }
    }
}

fn threshold(c: usize, d: usize) -> usize {
    1usize.checked_shl(d as u32).map_or(usize::MAX, |p| c.saturating_mul(p))
}

/// Splits pieces until no oversized two-attachment group is left. Returns
/// the final pieces and the split records, or a rejection.
fn split_pieces(
    start: Vec<Piece>,
    cfg: &TdConfig,
    records: &mut Vec<Reduction>,
) -> Result<Vec<Piece>, NotOnePlanarReason> {
    let mut stack = start;
    stack.reverse();
    let mut done = Vec::new();
    while let Some(piece) = stack.pop() {
        let g = piece.local();
        let f = normalize_forest(&g, &piece.forest).expect("restricted forests stay valid");
        let d = f.depth();
        let children = f.children();
        let mut split = None;
        for v in 0..g.n() {
            for grp in classify_with(&g, &f, &children, v) {
                let s = grp.attachment.len();
                if s >= 3 && !cfg.paranoid && grp.children.len() > threshold(cfg.c1, d) {
                    return Err(NotOnePlanarReason::KernelRejection("attachmentGroup".to_string()));
                }
                if s == 2 && split.is_none() && grp.children.len() > threshold(1, d) {
                    split = Some(grp);
                }
            }
        }
        let Some(grp) = split else {
            done.push(Piece { forest: f, ..piece });
            continue;
        };
        let host = |x: Vertex| piece.vertices[x];
        let (a, b) = (grp.attachment[0], grp.attachment[1]);
        let shared = edge(host(a), host(b));
        records.push(Reduction::UncrossableSplit {
            shared,
            subinstances: Vec::new(),
            added_edge: !g.has_edge(a, b),
        });
        let mut taken = BTreeSet::new();
        let mut parts = Vec::new();
        for &c in &grp.children {
            let tree = f.subtree(&children, c);
            taken.extend(tree.iter().copied());
            let mut keep: Vec<Vertex> = tree.iter().map(|&x| host(x)).chain([host(a), host(b)]).collect();
            keep.sort_unstable();
            parts.push(piece.sub(keep, &f, shared));
        }
        let keep: Vec<Vertex> = (0..g.n()).filter(|x| !taken.contains(x)).map(host).collect();
        parts.push(piece.sub(keep, &f, shared));
        // keep the output order equal to the split order
        stack.extend(parts.into_iter().rev());
    }
    Ok(done)
}

fn assemble(pieces: Vec<Piece>, mut plan: LiftPlan, records: Vec<Reduction>) -> KernelOutcome {
    let mut instances = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let graph = piece.local();
        let at = |x: Vertex| piece.vertices.binary_search(&x).unwrap();
        let constraints =
            ConstraintSet::default().with_uncrossable(piece.uncrossable.iter().map(|&(u, v)| edge(at(u), at(v))));
        instances.push(Instance {
            graph,
            constraints,
            vertices: piece.vertices.clone(),
        });
    }
    for mut r in records {
        if let Reduction::UncrossableSplit { shared, subinstances, .. } = &mut r {
            *subinstances = (0..pieces.len())
                .filter(|&i| pieces[i].edges.contains(shared))
                .collect();
        }
        plan.push(r);
    }
    for (i, piece) in pieces.iter().enumerate() {
        plan.push(Reduction::Compact {
            instance: i,
            vertices: piece.vertices.clone(),
        });
    }
    KernelOutcome::Reduced { instances, plan }
}

fn whole_piece(g: &Graph, f: EliminationForest) -> Piece {
    Piece {
        vertices: (0..g.n()).collect(),
        edges: g.edges().iter().copied().collect(),
        uncrossable: BTreeSet::new(),
        forest: f,
    }
}

/// Kernel for one 2-connected graph with a valid forest.
pub fn td_kernelize(g: &Graph, f: &EliminationForest, cfg: &TdConfig) -> Result<KernelOutcome, TdError> {
    f.check(g)?;
    if g.n() > 2 && (blocks(g).len() != 1 || !g.is_connected()) {
        return Err(TdError::NotBiconnected);
    }
    let mut records = Vec::new();
    Ok(match split_pieces(vec![whole_piece(g, f.clone())], cfg, &mut records) {
        Err(reason) => KernelOutcome::Rejected(reason),
        Ok(pieces) => assemble(pieces, LiftPlan::new(g.n()), records),
    })
}

/// Kernel for an arbitrary graph: bridges are set aside, each block gets
/// its own forest (`forest` restricted to it, or an exact one when none is
/// given, falling back to DFS), then blocks are split.
pub fn td_kernel(g: &Graph, forest: Option<&EliminationForest>, cfg: &TdConfig) -> (KernelOutcome, KernelReport) {
    let mut report = KernelReport::default();
    let mut plan = LiftPlan::new(g.n());
    let mut dropped = Vec::new();
    let mut start = Vec::new();
    for b in blocks(g) {
        if b.graph.m() == 1 {
            dropped.extend(b.host_edges());
            continue;
        }
        let f = match forest {
            Some(f) => f.restrict(&b.vertices),
            None => tree_depth_limited(&b.graph, cfg.max_d, PIPELINE_TD_CALLS)
                .map(|(_, f)| f)
                .unwrap_or_else(|| dfs_forest(&b.graph)),
        };
        report.parameters.push(("d".to_string(), f.depth()));
        start.push(Piece {
            vertices: b.vertices.clone(),
            edges: b.host_edges().collect(),
            uncrossable: BTreeSet::new(),
            forest: f,
        });
    }
    plan.push(Reduction::BlockSplit {
        instances: (0..start.len()).collect(),
        dropped_edges: dropped,
    });
    let mut records = Vec::new();
    let outcome = match split_pieces(start, cfg, &mut records) {
        Err(reason) => KernelOutcome::Rejected(reason),
        Ok(pieces) => assemble(pieces, plan, records),
    };
    (outcome, report)
}

/// Density guard, per-block forests, kernel, solve every piece, merge the
/// witnesses along the uncrossable edges and lift.
pub fn pipeline_td(g: &Graph, opts: &SolveOptions, cfg: &TdConfig) -> PipelineResult {
    pipeline_td_with(g, None, opts, cfg)
}

pub fn pipeline_td_with(
    g: &Graph,
    forest: Option<&EliminationForest>,
    opts: &SolveOptions,
    cfg: &TdConfig,
) -> PipelineResult {
    if blocks(g).iter().any(|b| exceeds_density(b.graph.n(), b.graph.m())) {
        return PipelineResult::rejected(NotOnePlanarReason::EdgeDensity, KernelReport::default());
    }
    let (outcome, report) = td_kernel(g, forest, cfg);
    solve_reduced(g, outcome, opts, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::solver::SolveOutcome;
    use crate::verify_witness;

    fn td(g: &Graph) -> usize {
        tree_depth(g, g.n()).unwrap().0
    }

    #[test]
    fn closed_forms() {
        assert_eq!(td(&generate::path(7)), 3);
        assert_eq!(td(&generate::complete(5)), 5);
        assert_eq!(td(&generate::complete_bipartite(2, 8)), 3);
        assert_eq!(td(&generate::complete_bipartite(1, 6)), 2);
        assert_eq!(td(&Graph::empty(4)), 1);
        assert_eq!(tree_depth(&generate::complete(5), 4), None);
    }

    #[test]
    fn rejects_bad_forests() {
        assert_eq!(EliminationForest::new(vec![Some(1), Some(0)]), Err(TdError::NotAForest));
        let f = EliminationForest::new(vec![None, Some(0), Some(0)]).unwrap();
        let g = Graph::new(3, [(1, 2)]).unwrap();
        assert_eq!(f.check(&g), Err(TdError::InvalidForest((1, 2))));
    }

    #[test]
    fn normalization_examples() {
        // star rooted at a leaf: 1 above centre 0 above the other leaves
        let star = generate::complete_bipartite(1, 4);
        let f = EliminationForest::new(vec![Some(1), None, Some(0), Some(0), Some(0)]).unwrap();
        let nf = normalize_forest(&star, &f).unwrap();
        assert_eq!(nf.depth(), 3);
        assert!(nf.roots() == vec![1]);

        // a child subtree that falls apart is split into two children
        let g = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let f = EliminationForest::new(vec![None, Some(0), Some(1)]).unwrap();
        let nf = normalize_forest(&g, &f).unwrap();
        assert_eq!(nf.parents(), &[None, Some(0), Some(0)]);
        assert_eq!(normalize_forest(&g, &nf).unwrap(), nf);
    }

    #[test]
    fn k2n_groups_split() {
        let g = generate::complete_bipartite(2, 12);
        let (d, f) = tree_depth(&g, 6).unwrap();
        assert_eq!(d, 3);
        let nf = normalize_forest(&g, &f).unwrap();
        let big = (0..g.n())
            .flat_map(|v| classify_children(&g, &nf, v))
            .find(|grp| grp.attachment == vec![0, 1])
            .unwrap();
        assert_eq!(big.children.len(), 12);
        match td_kernelize(&g, &nf, &TdConfig::default()).unwrap() {
            KernelOutcome::Reduced { instances, plan } => {
                assert_eq!(instances.len(), 13);
                assert!(instances[..12].iter().all(|i| i.graph.n() == 3 && i.graph.m() == 3));
                let graphs: Vec<Graph> = instances.iter().map(|i| i.graph.clone()).collect();
                assert_eq!(plan.replay(&graphs).unwrap(), g);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_is_left_alone() {
        let g = generate::complete(4);
        let (_, f) = tree_depth(&g, 4).unwrap();
        match td_kernelize(&g, &f, &TdConfig::default()).unwrap() {
            KernelOutcome::Reduced { instances, .. } => assert_eq!(instances[0].graph, g),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_attachment_groups_reject_unless_paranoid() {
        let g = generate::complete_bipartite(3, 30);
        let (d, f) = tree_depth(&g, 6).unwrap();
        assert_eq!(d, 4);
        let cfg = TdConfig { c1: 1, ..TdConfig::default() };
        let nf = normalize_forest(&g, &f).unwrap();
        assert!(matches!(td_kernelize(&g, &nf, &cfg).unwrap(), KernelOutcome::Rejected(_)));
        let paranoid = TdConfig { paranoid: true, ..cfg };
        assert!(matches!(td_kernelize(&g, &nf, &paranoid).unwrap(), KernelOutcome::Reduced { .. }));
    }

    #[test]
    fn pipeline_examples() {
        let opts = SolveOptions::default();
        let cfg = TdConfig::default();
        let g = generate::complete_bipartite(2, 500);
        let res = pipeline_td(&g, &opts, &cfg);
        let w = res.outcome.witness().unwrap();
        assert!(verify_witness(&g, w, &ConstraintSet::default()));

        let k7 = generate::with_pendants(&generate::complete(7), 20);
        assert_eq!(
            pipeline_td(&k7, &opts, &cfg).outcome,
            SolveOutcome::NotOnePlanar(NotOnePlanarReason::EdgeDensity)
        );

        let tree = generate::path(31);
        assert!(pipeline_td(&tree, &opts, &cfg).outcome.witness().unwrap().is_empty());
    }
}
