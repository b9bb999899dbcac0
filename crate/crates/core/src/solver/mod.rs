//! Exact constrained 1-planarity.
//!
//! The search walks partial crossing matchings. At each node the current
//! planarization splits into a fixed part (kites and spokes of chosen pairs,
//! plus edges that can no longer cross) and free edges. If the fixed part is
//! nonplanar the node is dead; if everything is planar the chosen pairs are
//! a witness. Otherwise a minimal nonplanar set of free edges is extracted,
//! and one of those edges must cross something: branch on which one (the
//! earlier ones in the set become uncrossable) and on its partner.
//!
//! Swapping two twin vertices (same neighbours apart from each other) is an
//! automorphism; when such a swap fixes the node and the branching edge, two
//! partners it exchanges lead to mirror-image subtrees and only the first is
//! searched.
//!
//! The number of crossings is capped, starting from the Euler lower bound
//! and doubling while some node was cut only by the cap. With `minimize`
//! set, the search is then repeated below the size of the best
//! witness so far until it fails, which yields a minimum witness.

mod oracle;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::constraints::ConstraintSet;
use crate::embedding::{is_planar_edges, verify_witness, CrossingWitness};
use crate::graph::{blocks, edge, Edge, Graph, Vertex};
use crate::par;

pub use oracle::exhaustive_oracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotOnePlanarReason {
    EdgeDensity,
    ExhaustedSearch,
    BipartiteTable,
    KernelRejection(String),
}

impl fmt::Display for NotOnePlanarReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotOnePlanarReason::EdgeDensity => write!(f, "edgeDensity"),
            NotOnePlanarReason::ExhaustedSearch => write!(f, "exhaustedSearch"),
            NotOnePlanarReason::BipartiteTable => write!(f, "bipartiteTable"),
            NotOnePlanarReason::KernelRejection(rule) => write!(f, "kernelRejection({rule})"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub planarity_tests: u64,
}

impl SearchStats {
    pub fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
        self.planarity_tests += o.planarity_tests;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    OnePlanar(CrossingWitness),
    NotOnePlanar(NotOnePlanarReason),
    BudgetExceeded(SearchStats),
}

impl SolveOutcome {
    pub fn is_one_planar(&self) -> bool {
        matches!(self, SolveOutcome::OnePlanar(_))
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, SolveOutcome::BudgetExceeded(_))
    }

    /// `Some(true)` / `Some(false)` for a decided outcome.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SolveOutcome::OnePlanar(_) => Some(true),
            SolveOutcome::NotOnePlanar(_) => Some(false),
            SolveOutcome::BudgetExceeded(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&CrossingWitness> {
        match self {
            SolveOutcome::OnePlanar(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Search-node limit over the whole call.
    pub budget: u64,
    /// 1 = sequential and deterministic.
    pub workers: usize,
    /// Keep searching until the witness has the fewest possible crossings.
    pub minimize: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: 100_000_000,
            workers: 1,
            minimize: false,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: u64) -> Self {
        SolveOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub outcome: SolveOutcome,
    pub stats: SearchStats,
}

fn disjoint(e: Edge, f: Edge) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

/// Vertex-disjoint edge pairs that the constraints allow to cross, as edge
/// id pairs `(i, j)` with `i < j`, in lexicographic order.
pub fn candidate_pairs(g: &Graph, cs: &ConstraintSet) -> Vec<(usize, usize)> {
    let es = g.edges();
    let mut out = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if disjoint(es[i], es[j]) && cs.allows_pair(es[i], es[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Too many edges to be 1-planar: n >= 3 and m > 4n - 8.
pub fn exceeds_density(n: usize, m: usize) -> bool {
    n >= 3 && m + 8 > 4 * n
}

pub fn decide(g: &Graph, cs: &ConstraintSet, budget: u64) -> SolveOutcome {
    decide_with(g, cs, &SolveOptions::with_budget(budget)).outcome
}

pub fn decide_with(g: &Graph, cs: &ConstraintSet, opts: &SolveOptions) -> Solved {
    let cs = cs.compiled();
    let blocks = blocks(g);
    if blocks.iter().any(|b| exceeds_density(b.graph.n(), b.graph.m())) {
        return Solved {
            outcome: SolveOutcome::NotOnePlanar(NotOnePlanarReason::EdgeDensity),
            stats: SearchStats::default(),
        };
    }
    let ctx = Ctx::new(opts.budget);
    let mut pairs = Vec::new();
    for b in &blocks {
        if b.graph.m() < 6 || is_planar_edges(b.graph.n(), b.graph.edges()) {
            continue;
        }
        let local = cs.restrict(&b.vertices);
        let refuted = par::install(opts.workers, || core_refutes(&b.graph, &local, &ctx, opts));
        let problem = Problem::new(&b.graph, &local);
        let result = match refuted {
            Ok(true) => Ok(None),
            Ok(false) => par::install(opts.workers, || problem.solve(&ctx, opts)),
            Err(Stop) => Err(Stop),
        };
        match result {
            Ok(Some(w)) => {
                let map = |(u, v): Edge| edge(b.vertices[u], b.vertices[v]);
                pairs.extend(w.into_iter().map(|(e, f)| (map(e), map(f))));
            }
            Ok(None) => {
                return Solved {
                    outcome: SolveOutcome::NotOnePlanar(NotOnePlanarReason::ExhaustedSearch),
                    stats: ctx.stats(),
                }
            }
            Err(Stop) => {
                return Solved {
                    outcome: SolveOutcome::BudgetExceeded(ctx.stats()),
                    stats: ctx.stats(),
                }
            }
        }
    }
    let w = CrossingWitness::new(pairs);
    assert!(verify_witness(g, &w, &cs), "solver produced an unverifiable witness");
    Solved {
        outcome: SolveOutcome::OnePlanar(w),
        stats: ctx.stats(),
    }
}

/// Vertices left after repeatedly deleting vertices of degree at most two.
fn three_core(g: &Graph) -> Vec<Vertex> {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<Vertex> = (0..g.n()).filter(|&v| deg[v] <= 2).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 2 {
                    stack.push(w);
                }
            }
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

/// Searches the 3-core of a block first. Its blocks are subgraphs, so one
/// that is not 1-planar refutes the block, and without the degree-two paths
/// twin symmetry often reappears and the search is far smaller.
fn core_refutes(g: &Graph, cs: &ConstraintSet, ctx: &Ctx, opts: &SolveOptions) -> Result<bool, Stop> {
    let core = three_core(g);
    if core.len() == g.n() || core.len() < 5 {
        return Ok(false);
    }
    let h = g.induced(&core);
    let hcs = cs.restrict(&core);
    let sub = SolveOptions { minimize: false, ..*opts };
    for b in blocks(&h) {
        if exceeds_density(b.graph.n(), b.graph.m()) {
            return Ok(true);
        }
        if b.graph.m() < 6 || is_planar_edges(b.graph.n(), b.graph.edges()) {
            continue;
        }
        if Problem::new(&b.graph, &hcs.restrict(&b.vertices)).solve(ctx, &sub)?.is_none() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug)]
struct Stop;

struct Ctx {
    budget: u64,
    nodes: AtomicU64,
    prunes: AtomicU64,
    tests: AtomicU64,
    stopped: AtomicBool,
    /// Set when a node was cut only because of the crossing limit.
    limited: AtomicBool,
}

impl Ctx {
    fn new(budget: u64) -> Self {
        Ctx {
            budget,
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            tests: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
            limited: AtomicBool::new(false),
        }
    }

    fn tick(&self) -> Result<(), Stop> {
        if self.stopped.load(Ordering::Relaxed) || self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.stopped.store(true, Ordering::Relaxed);
            return Err(Stop);
        }
        Ok(())
    }

    fn planar(&self, n: usize, edges: &[Edge]) -> bool {
        self.tests.fetch_add(1, Ordering::Relaxed);
        let mut simple = edges.to_vec();
        simple.sort_unstable();
        simple.dedup();
        is_planar_edges(n, &simple)
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed).min(self.budget),
            prunes: self.prunes.load(Ordering::Relaxed),
            planarity_tests: self.tests.load(Ordering::Relaxed),
        }
    }
}

const NONE: usize = usize::MAX;

#[derive(Clone)]
struct Node {
    mate: Vec<usize>,
    /// Uncrossed for the rest of this subtree.
    excluded: Vec<bool>,
    pairs: Vec<(usize, usize)>,
}

struct Problem<'a> {
    n: usize,
    edges: &'a [Edge],
    partners: Vec<Vec<usize>>,
    uncrossable: Vec<bool>,
    /// Edge permutations induced by twin swaps that preserve the candidate pairs.
    swaps: Vec<Vec<usize>>,
}

/// Edge permutations of the transpositions of twin vertices that map the
/// candidate pairs onto themselves.
fn twin_swaps(g: &Graph, partners: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut swaps = Vec::new();
    let pairs: std::collections::BTreeSet<(usize, usize)> =
        (0..partners.len()).flat_map(|i| partners[i].iter().map(move |&j| (i, j))).collect();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let strip = |a: Vertex, b: Vertex| g.neighbors(a).iter().copied().filter(move |&x| x != b);
            if g.degree(u) != g.degree(v) || !strip(u, v).eq(strip(v, u)) {
                continue;
            }
            let sigma = |x: Vertex| if x == u { v } else if x == v { u } else { x };
            let perm: Vec<usize> = g
                .edges()
                .iter()
                .map(|&(a, b)| g.edge_id(sigma(a), sigma(b)).expect("twin swap is an automorphism"))
                .collect();
            if pairs.iter().all(|&(i, j)| pairs.contains(&(perm[i], perm[j]))) {
                swaps.push(perm);
            }
        }
    }
    swaps
}

impl<'a> Problem<'a> {
    fn new(g: &'a Graph, cs: &ConstraintSet) -> Self {
        let m = g.m();
        let mut partners = vec![Vec::new(); m];
        for (i, j) in candidate_pairs(g, cs) {
            partners[i].push(j);
            partners[j].push(i);
        }
        let uncrossable = partners.iter().map(Vec::is_empty).collect();
        let swaps = twin_swaps(g, &partners);
        Problem {
            n: g.n(),
            edges: g.edges(),
            partners,
            uncrossable,
            swaps,
        }
    }

    fn root(&self) -> Node {
        Node {
            mate: vec![NONE; self.edges.len()],
            excluded: self.uncrossable.clone(),
            pairs: Vec::new(),
        }
    }

    fn open(&self, node: &Node, e: usize) -> bool {
        node.mate[e] == NONE && !node.excluded[e]
    }

    fn available<'b>(&'b self, node: &'b Node, e: usize) -> impl Iterator<Item = usize> + 'b {
        self.partners[e].iter().copied().filter(move |&f| self.open(node, f))
    }

    /// Fixed planarization edges, its vertex count, and the free edge ids.
    fn split(&self, node: &Node) -> (Vec<Edge>, usize, Vec<usize>) {
        let mut fixed = Vec::with_capacity(self.edges.len() + 6 * node.pairs.len());
        let mut free = Vec::new();
        for (i, &e) in self.edges.iter().enumerate() {
            if node.mate[i] != NONE {
                continue;
            }
            if !node.excluded[i] && self.available(node, i).next().is_some() {
                free.push(i);
            } else {
                fixed.push(e);
            }
        }
        for (k, &(a, b)) in node.pairs.iter().enumerate() {
            let c = self.n + k;
            let ((u, v), (x, y)) = (self.edges[a], self.edges[b]);
            fixed.extend([(u, c), (v, c), (x, c), (y, c)]);
            fixed.extend([edge(u, x), edge(x, v), edge(v, y), edge(y, u)]);
        }
        (fixed, self.n + node.pairs.len(), free)
    }

    /// Expands a node: `Ok(Err(witness))` when it is already solved,
    /// `Ok(Ok(children))` otherwise (empty when dead).
    #[allow(clippy::type_complexity)]
    fn expand(&self, node: &Node, limit: usize, ctx: &Ctx) -> Result<Result<Vec<Node>, Vec<(usize, usize)>>, Stop> {
        ctx.tick()?;
        let (fixed, np, free) = self.split(node);
        if !ctx.planar(np, &fixed) {
            ctx.prunes.fetch_add(1, Ordering::Relaxed);
            return Ok(Ok(Vec::new()));
        }
        let mut all = fixed.clone();
        all.extend(free.iter().map(|&i| self.edges[i]));
        if ctx.planar(np, &all) {
            return Ok(Err(node.pairs.clone()));
        }
        // Euler: the finished planarization keeps the fixed edges, gains four
        // spokes and one vertex per further crossing, and loses at most two
        // free edges per crossing
        let mut fixed_set = fixed.clone();
        fixed_set.sort_unstable();
        fixed_set.dedup();
        let fresh = free
            .iter()
            .filter(|&&i| fixed_set.binary_search(&self.edges[i]).is_err())
            .count();
        let needed = (fixed_set.len() + fresh + 6).saturating_sub(3 * np);
        if 2 * needed > free.len() {
            ctx.prunes.fetch_add(1, Ordering::Relaxed);
            return Ok(Ok(Vec::new()));
        }
        if node.pairs.len() + needed.max(1) > limit {
            ctx.limited.store(true, Ordering::Relaxed);
            ctx.prunes.fetch_add(1, Ordering::Relaxed);
            return Ok(Ok(Vec::new()));
        }
        let mut order = free;
        order.sort_by_key(|&i| (self.available(node, i).count(), i));
        // a second conflict, steered away from the first, is often much cheaper
        let mut conflict = quickxplain(np, &fixed, &order, self.edges, ctx);
        let alt: Vec<usize> = order
            .iter()
            .copied()
            .filter(|i| !conflict.contains(i))
            .chain(conflict.iter().copied())
            .collect();
        let other = quickxplain(np, &fixed, &alt, self.edges, ctx);
        if self.branching(node, &other) < self.branching(node, &conflict) {
            conflict = other;
        }
        let mut children = Vec::new();
        let mut base = node.clone();
        for &e in &conflict {
            let partners = self.distinct_partners(&base, e);
            for f in partners {
                let mut child = base.clone();
                child.mate[e] = f;
                child.mate[f] = e;
                child.pairs.push((e.min(f), e.max(f)));
                children.push(child);
            }
            base.excluded[e] = true;
        }
        Ok(Ok(children))
    }

    /// Available partners of `e`, one per class of partners exchanged by
    /// twin swaps that fix `node` and `e`.
    fn distinct_partners(&self, node: &Node, e: usize) -> Vec<usize> {
        let partners: Vec<usize> = self.available(node, e).collect();
        let fixing: Vec<&Vec<usize>> = self
            .swaps
            .iter()
            .filter(|p| {
                p[e] == e
                    && (0..p.len()).all(|i| node.excluded[p[i]] == node.excluded[i])
                    && node.pairs.iter().all(|&(a, b)| node.mate[p[a]] == p[b])
            })
            .collect();
        if fixing.is_empty() {
            return partners;
        }
        // orbits under the group the fixing swaps generate
        let mut class: Vec<usize> = (0..partners.len()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in &fixing {
                for (i, &f) in partners.iter().enumerate() {
                    if let Ok(j) = partners.binary_search(&p[f]) {
                        let c = class[i].min(class[j]);
                        if class[i] != c || class[j] != c {
                            class[i] = c;
                            class[j] = c;
                            changed = true;
                        }
                    }
                }
            }
        }
        partners.iter().enumerate().filter(|&(i, _)| class[i] == i).map(|(_, &f)| f).collect()
    }

    /// Number of children branching on `conflict` would create.
    fn branching(&self, node: &Node, conflict: &[usize]) -> usize {
        let mut base = node.clone();
        let mut total = 0;
        for &e in conflict {
            total += self.distinct_partners(&base, e).len();
            base.excluded[e] = true;
        }
        total
    }

    fn search(&self, node: &Node, limit: usize, ctx: &Ctx) -> Result<Option<Vec<(usize, usize)>>, Stop> {
        match self.expand(node, limit, ctx)? {
            Err(w) => Ok(Some(w)),
            Ok(children) => {
                for c in &children {
                    if let Some(w) = self.search(c, limit, ctx)? {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Searches for any witness, then (when minimizing) for witnesses with
    /// fewer crossings until none exists. The top level fans out over
    /// `workers`.
    fn solve(&self, ctx: &Ctx, opts: &SolveOptions) -> Result<Option<Vec<(Edge, Edge)>>, Stop> {
        let m = self.edges.len();
        let lower = (m + 6).saturating_sub(3 * self.n);
        // doubling crossing limits: sparse graphs tend to need few crossings
        // but have deep trees; a level that never hit its limit is final
        let mut limit = lower.max(1).min(m / 2);
        let mut best = loop {
            ctx.limited.store(false, Ordering::Relaxed);
            let found = self.search_root(limit, ctx, opts.workers)?;
            if found.is_some() || limit >= m / 2 || !ctx.limited.load(Ordering::Relaxed) {
                break found;
            }
            limit = (2 * limit).min(m / 2);
        };
        if opts.minimize {
            while let Some(w) = best.as_ref().filter(|w| w.len() > lower) {
                match self.search_root(w.len() - 1, ctx, opts.workers)? {
                    Some(better) => best = Some(better),
                    None => break,
                }
            }
        }
        Ok(best.map(|w| w.into_iter().map(|(a, b)| (self.edges[a], self.edges[b])).collect()))
    }

    fn search_root(&self, limit: usize, ctx: &Ctx, workers: usize) -> Result<Option<Vec<(usize, usize)>>, Stop> {
        match self.expand(&self.root(), limit, ctx)? {
            Err(w) => Ok(Some(w)),
            Ok(children) => {
                let hit = par::find_map_first(&children, workers, |c| match self.search(c, limit, ctx) {
                    Ok(Some(w)) => Some(Ok(w)),
                    Ok(None) => None,
                    Err(Stop) => Some(Err(Stop)),
                });
                hit.transpose()
            }
        }
    }
}

/// Minimal subset of `order` (returned in `order` order) whose edges make
/// `base` nonplanar. Requires `base` planar and `base + order` nonplanar.
fn quickxplain(n: usize, base: &[Edge], order: &[usize], edges: &[Edge], ctx: &Ctx) -> Vec<usize> {
    fn rec(n: usize, base: &mut Vec<Edge>, delta: bool, c: &[usize], edges: &[Edge], ctx: &Ctx) -> Vec<usize> {
        if delta && !ctx.planar(n, base) {
            return Vec::new();
        }
        if c.len() == 1 {
            return c.to_vec();
        }
        let (c1, c2) = c.split_at(c.len() / 2);
        let mark = base.len();
        base.extend(c1.iter().map(|&i| edges[i]));
        let x2 = rec(n, base, true, c2, edges, ctx);
        base.truncate(mark);
        base.extend(x2.iter().map(|&i| edges[i]));
        let mut x1 = rec(n, base, !x2.is_empty(), c1, edges, ctx);
        base.truncate(mark);
        x1.extend(x2);
        x1
    }
    let mut base = base.to_vec();
    rec(n, &mut base, false, order, edges, ctx)
}
