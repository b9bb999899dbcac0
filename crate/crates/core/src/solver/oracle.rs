//! Reference solver sharing nothing with the main search except the
//! witness checker. Edges are visited so that every prefix is an induced
//! subgraph on the highest-degree vertices (densest prefixes first, so
//! invalid partial assignments surface early); each is either left
//! uncrossed or paired with a later allowed edge. A branch is cut only when
//! the part of the planarization it has already committed to is nonplanar
//! (such a branch cannot contain a valid witness) or when it cannot beat the
//! best witness found so far. Every complete assignment is checked with
//! `verify_witness`.

use crate::constraints::ConstraintSet;
use crate::embedding::{is_planar_edges, verify_witness, CrossingWitness};
use crate::graph::{edge, Edge, Graph};

use super::{candidate_pairs, NotOnePlanarReason, SolveOutcome};

/// Exact verdict and, when 1-planar, a minimum-size witness. Exponential;
/// meant for graphs with about nine vertices or fewer.
pub fn exhaustive_oracle(g: &Graph, cs: &ConstraintSet) -> SolveOutcome {
    let cs = cs.compiled();
    let m = g.m();
    let mut rank = vec![0; g.n()];
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for (r, &v) in by_degree.iter().enumerate() {
        rank[v] = r;
    }
    let key = |(u, v): Edge| (rank[u].max(rank[v]), rank[u].min(rank[v]));
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| key(g.edges()[i]));
    let mut position = vec![0; m];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut later = vec![Vec::new(); m];
    for (i, j) in candidate_pairs(g, &cs) {
        let (a, b) = (position[i].min(position[j]), position[i].max(position[j]));
        later[a].push(b);
    }
    for l in &mut later {
        l.sort_unstable();
    }
    let mut o = Oracle {
        g,
        edges: order.iter().map(|&i| g.edges()[i]).collect(),
        cs: &cs,
        later,
        mate: vec![None; m],
        pairs: Vec::new(),
        best: None,
    };
    o.visit(0);
    match o.best {
        Some(w) => SolveOutcome::OnePlanar(w),
        None => SolveOutcome::NotOnePlanar(NotOnePlanarReason::ExhaustedSearch),
    }
}

struct Oracle<'a> {
    g: &'a Graph,
    /// Edges in visiting order; all indices below refer to this order.
    edges: Vec<Edge>,
    cs: &'a ConstraintSet,
    later: Vec<Vec<usize>>,
    mate: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
    best: Option<CrossingWitness>,
}

impl Oracle<'_> {
    fn can_improve(&self) -> bool {
        self.best.as_ref().is_none_or(|b| self.pairs.len() < b.len())
    }

    /// Planarity of the planarization restricted to edges `0..=upto` and
    /// their partners.
    fn committed_planar(&self, upto: usize) -> bool {
        let n = self.g.n();
        let es = &self.edges;
        let mut edges: Vec<Edge> = (0..=upto).filter(|&i| self.mate[i].is_none()).map(|i| es[i]).collect();
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            let c = n + k;
            let ((u, v), (x, y)) = (es[a], es[b]);
            edges.extend([(u, c), (v, c), (x, c), (y, c)]);
            edges.extend([edge(u, x), edge(x, v), edge(v, y), edge(y, u)]);
        }
        edges.sort_unstable();
        edges.dedup();
        is_planar_edges(n + self.pairs.len(), &edges)
    }

    fn visit(&mut self, i: usize) {
        if !self.can_improve() {
            return;
        }
        let m = self.g.m();
        if i == m {
            let es = &self.edges;
            let w = CrossingWitness::new(self.pairs.iter().map(|&(a, b)| (es[a], es[b])));
            if verify_witness(self.g, &w, self.cs) {
                self.best = Some(w);
            }
            return;
        }
        if self.mate[i].is_some() {
            self.visit(i + 1);
            return;
        }
        if self.committed_planar(i) {
            self.visit(i + 1);
        }
        for k in 0..self.later[i].len() {
            let j = self.later[i][k];
            if self.mate[j].is_some() || !self.can_improve() {
                continue;
            }
            // a new pair must leave room to improve on the incumbent
            if self.best.as_ref().is_some_and(|b| self.pairs.len() + 1 >= b.len()) {
                continue;
            }
            self.mate[i] = Some(j);
            self.mate[j] = Some(i);
            self.pairs.push((i, j));
            if self.committed_planar(i) {
                self.visit(i + 1);
            }
            self.pairs.pop();
            self.mate[i] = None;
            self.mate[j] = None;
        }
    }
}
