//! Cographs: cotree recognition, clique and biclique exclusion, and a
//! low-depth elimination forest read off the cotree.
//!
//! A cograph without `K_a` and without a `K_{b,b}` subgraph has tree-depth
//! at most `1 + (a - 1)(b - 1)`. Every 1-node `x` contributes a path made of
//! its leaves outside its heaviest child; these paths are chained along the
//! cotree and the remaining vertices hang below the path of their lowest
//! 1-labelled ancestor.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::solver::{NotOnePlanarReason, SolveOptions};

use super::treedepth::{td_kernel, EliminationForest, TdConfig};
use super::{solve_reduced, KernelOutcome, KernelReport, PipelineResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CographError {
    #[error("graph is not a cograph")]
    NotCograph,
    #[error("cograph contains K_{0} or K_{{{1},{1}}}")]
    Excluded(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoNode {
    Leaf(Vertex),
    /// Disjoint union of the children.
    Zero(Vec<usize>),
    /// Complete join of the children.
    One(Vec<usize>),
}

/// Canonical cotree: labels alternate along every root path and every
/// internal node has at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    pub nodes: Vec<CoNode>,
    pub root: Option<usize>,
    pub n: usize,
}

impl Cotree {
    fn children(&self, x: usize) -> &[usize] {
        match &self.nodes[x] {
            CoNode::Leaf(_) => &[],
            CoNode::Zero(c) | CoNode::One(c) => c,
        }
    }

    /// Parent of every node (`None` for the root).
    fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.nodes.len()];
        for x in 0..self.nodes.len() {
            for &c in self.children(x) {
                p[c] = Some(x);
            }
        }
        p
    }

    fn leaves_below(&self, x: usize, out: &mut Vec<Vertex>) {
        match &self.nodes[x] {
            CoNode::Leaf(v) => out.push(*v),
            CoNode::Zero(c) | CoNode::One(c) => c.iter().for_each(|&y| self.leaves_below(y, out)),
        }
    }

    /// Nodes in an order where children precede parents.
    fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<(usize, bool)> = self.root.map(|r| (r, false)).into_iter().collect();
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                stack.extend(self.children(x).iter().rev().map(|&c| (c, false)));
            }
        }
        out
    }

    /// The graph this cotree represents.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for node in &self.nodes {
            if let CoNode::One(ch) = node {
                let sides: Vec<Vec<Vertex>> = ch
                    .iter()
                    .map(|&c| {
                        let mut l = Vec::new();
                        self.leaves_below(c, &mut l);
                        l
                    })
                    .collect();
                for (i, a) in sides.iter().enumerate() {
                    for b in &sides[i + 1..] {
                        edges.extend(a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))));
                    }
                }
            }
        }
        Graph::new_dedup(self.n, edges).expect("cotree leaves are graph vertices")
    }
}

fn components_of(set: &[Vertex], adjacent: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut left: BTreeSet<Vertex> = set.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(s) = left.pop_first() {
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            let next: Vec<Vertex> = left.iter().copied().filter(|&y| adjacent(x, y)).collect();
            for y in next {
                left.remove(&y);
                comp.push(y);
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Cotree by recursive decomposition into components of the graph and of
/// its complement; `None` when some part is connected both ways.
pub fn cotree_build(g: &Graph) -> Option<Cotree> {
    let mut t = Cotree {
        nodes: Vec::new(),
        root: None,
        n: g.n(),
    };
    if g.n() == 0 {
        return Some(t);
    }
    fn build(g: &Graph, set: Vec<Vertex>, t: &mut Cotree) -> Option<usize> {
        if set.len() == 1 {
            t.nodes.push(CoNode::Leaf(set[0]));
            return Some(t.nodes.len() - 1);
        }
        let comps = components_of(&set, |u, v| g.has_edge(u, v));
        let (one, parts) = if comps.len() > 1 {
            (false, comps)
        } else {
            let co = components_of(&set, |u, v| !g.has_edge(u, v));
            if co.len() == 1 {
                return None;
            }
            (true, co)
        };
        let mut children = Vec::with_capacity(parts.len());
        for p in parts {
            children.push(build(g, p, t)?);
        }
        t.nodes.push(if one { CoNode::One(children) } else { CoNode::Zero(children) });
        Some(t.nodes.len() - 1)
    }
    t.root = Some(build(g, (0..g.n()).collect(), &mut t)?);
    assert_eq!(&t.graph(), g, "cotree does not reproduce the graph");
    Some(t)
}

/// Whether the cograph contains `K_a`, and whether it contains `K_{b,b}` as
/// a (not necessarily induced) subgraph.
pub fn cotree_exclusions(t: &Cotree, a: usize, b: usize) -> (bool, bool) {
    let k = b + 1;
    // table[x][y]: K_{x,y} is a subgraph, for x, y <= b
    let mut omega = vec![0usize; t.nodes.len()];
    let mut size = vec![0usize; t.nodes.len()];
    let mut table: Vec<Vec<bool>> = vec![Vec::new(); t.nodes.len()];
    for x in t.postorder() {
        let ch = t.children(x).to_vec();
        size[x] = if ch.is_empty() { 1 } else { ch.iter().map(|&c| size[c]).sum() };
        let mut tab = vec![false; k * k];
        match &t.nodes[x] {
            CoNode::Leaf(_) => {
                omega[x] = 1;
                tab[0] = true;
                tab[k] = true;
                tab[1] = true;
            }
            CoNode::Zero(_) => {
                omega[x] = ch.iter().map(|&c| omega[c]).max().unwrap();
                for i in 0..k {
                    for j in 0..k {
                        tab[i * k + j] = if i == 0 || j == 0 {
                            i + j <= size[x]
                        } else {
                            ch.iter().any(|&c| table[c][i * k + j])
                        };
                    }
                }
            }
            CoNode::One(_) => {
                omega[x] = ch.iter().map(|&c| omega[c]).sum();
                let mut acc = table[ch[0]].clone();
                for &c in &ch[1..] {
                    let mut next = vec![false; k * k];
                    for i in 0..k {
                        for j in 0..k {
                            next[i * k + j] = (0..=i).any(|i1| {
                                (0..=j).any(|j1| acc[i1 * k + j1] && table[c][(i - i1) * k + (j - j1)])
                            });
                        }
                    }
                    acc = next;
                }
                tab = acc;
            }
        }
        table[x] = tab;
    }
    match t.root {
        None => (a == 0, b == 0),
        Some(r) => (omega[r] >= a, table[r][b * k + b]),
    }
}

/// Elimination forest of depth at most `1 + (a - 1)(b - 1)`.
pub fn cograph_forest(t: &Cotree, a: usize, b: usize) -> Result<EliminationForest, CographError> {
    let (has_a, has_bb) = cotree_exclusions(t, a, b);
    if has_a || has_bb {
        return Err(CographError::Excluded(a, b));
    }
    let parent_node = t.parents();
    let mut leaf_count = vec![0usize; t.nodes.len()];
    for x in t.postorder() {
        leaf_count[x] = match &t.nodes[x] {
            CoNode::Leaf(_) => 1,
            CoNode::Zero(c) | CoNode::One(c) => c.iter().map(|&y| leaf_count[y]).sum(),
        };
    }
    // heaviest child of each 1-node, first on ties
    let heavy: Vec<Option<usize>> = (0..t.nodes.len())
        .map(|x| match &t.nodes[x] {
            CoNode::One(c) => c.iter().copied().rev().max_by_key(|&y| leaf_count[y]),
            _ => None,
        })
        .collect();
    // a 1-node owns a path when every 1-ancestor has it inside its heavy child
    let mut owns = vec![false; t.nodes.len()];
    let mut lowest_one: Vec<Option<usize>> = vec![None; t.nodes.len()];
    let mut light = vec![false; t.nodes.len()];
    let mut order = t.postorder();
    order.reverse();
    for &x in &order {
        let (inherited_one, inherited_light) = match parent_node[x] {
            None => (None, false),
            Some(p) => {
                let via = if matches!(t.nodes[p], CoNode::One(_)) { Some(p) } else { lowest_one[p] };
                let off_heavy = matches!(t.nodes[p], CoNode::One(_)) && heavy[p] != Some(x);
                (via, light[p] || off_heavy)
            }
        };
        lowest_one[x] = inherited_one;
        light[x] = inherited_light;
        owns[x] = matches!(t.nodes[x], CoNode::One(_)) && !light[x];
    }

    let mut parent: Vec<Option<Vertex>> = vec![None; t.n];
    // top-down, so the path of the closest owning ancestor already exists
    let mut bottom: Vec<Option<Vertex>> = vec![None; t.nodes.len()];
    for &x in &order {
        if !owns[x] {
            continue;
        }
        let CoNode::One(ch) = &t.nodes[x] else { unreachable!() };
        let mut path = Vec::new();
        for &c in ch {
            if Some(c) != heavy[x] {
                t.leaves_below(c, &mut path);
            }
        }
        path.sort_unstable();
        let mut above = lowest_one[x].and_then(|y| bottom[y]);
        for &v in &path {
            parent[v] = above;
            above = Some(v);
        }
        bottom[x] = above;
    }
    for &x in &order {
        if let CoNode::Leaf(v) = t.nodes[x] {
            if !light[x] {
                parent[v] = lowest_one[x].and_then(|y| bottom[y]);
            }
        }
    }
    let f = EliminationForest::new(parent).expect("paths are chained downward");
    assert!(f.is_valid_for(&t.graph()), "cotree forest misses an edge");
    Ok(f)
}

/// Cograph recognition and `K_7` / `K_{5,5}` exclusion, then the
/// tree-depth kernel seeded with the cotree forest.
pub fn cograph_kernel(g: &Graph, cfg: &TdConfig) -> Result<(KernelOutcome, KernelReport), CographError> {
    let t = cotree_build(g).ok_or(CographError::NotCograph)?;
    let reject = |rule: &str| {
        let reason = NotOnePlanarReason::KernelRejection(rule.to_string());
        Ok((KernelOutcome::Rejected(reason), KernelReport::default()))
    };
    match cotree_exclusions(&t, 7, 5) {
        (true, _) => reject("clique7"),
        (_, true) => reject("biclique55"),
        _ => {
            let f = cograph_forest(&t, 7, 5)?;
            Ok(td_kernel(g, Some(&f), cfg))
        }
    }
}

pub fn pipeline_cograph(g: &Graph, opts: &SolveOptions, cfg: &TdConfig) -> Result<PipelineResult, CographError> {
    let (outcome, report) = cograph_kernel(g, cfg)?;
    Ok(solve_reduced(g, outcome, opts, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn build_examples() {
        assert_eq!(cotree_build(&generate::path(4)), None);
        let k3 = cotree_build(&generate::complete(3)).unwrap();
        assert_eq!(k3.nodes.len(), 4);
        assert!(matches!(&k3.nodes[k3.root.unwrap()], CoNode::One(c) if c.len() == 3));
        let c4 = cotree_build(&generate::cycle(4)).unwrap();
        match &c4.nodes[c4.root.unwrap()] {
            CoNode::One(c) => {
                assert_eq!(c.len(), 2);
                assert!(c.iter().all(|&x| matches!(&c4.nodes[x], CoNode::Zero(l) if l.len() == 2)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exclusion_examples() {
        let t = |g: Graph| cotree_build(&g).unwrap();
        assert!(cotree_exclusions(&t(generate::complete(7)), 7, 5).0);
        assert_eq!(cotree_exclusions(&t(generate::complete_bipartite(5, 5)), 7, 5), (false, true));
        assert_eq!(cotree_exclusions(&t(generate::cycle(4)), 3, 2), (false, true));
        assert_eq!(cotree_exclusions(&t(generate::complete_bipartite(4, 6)), 7, 5), (false, false));
        // K_{5,5} inside K_10 is found through the join split
        assert!(cotree_exclusions(&t(generate::complete(10)), 11, 5).1);
    }

    #[test]
    fn forest_examples() {
        let k2 = cotree_build(&generate::complete(2)).unwrap();
        assert_eq!(cograph_forest(&k2, 3, 2).unwrap().depth(), 2);
        let k33 = cotree_build(&generate::complete_bipartite(3, 3)).unwrap();
        assert!(cograph_forest(&k33, 3, 4).unwrap().depth() <= 7);
        assert_eq!(cograph_forest(&k33, 3, 3), Err(CographError::Excluded(3, 3)));
    }

    #[test]
    fn pipeline_examples() {
        let opts = SolveOptions::default();
        let cfg = TdConfig::default();
        let k7 = generate::complete(7);
        assert_eq!(pipeline_cograph(&k7, &opts, &cfg).unwrap().outcome.verdict(), Some(false));
        let k6 = generate::complete(6);
        assert!(pipeline_cograph(&k6, &opts, &cfg).unwrap().outcome.is_one_planar());
        let mut many = Graph::empty(0);
        for _ in 0..50 {
            many = many.disjoint_union(&generate::complete(4));
        }
        assert!(pipeline_cograph(&many, &opts, &cfg).unwrap().outcome.is_one_planar());
        assert_eq!(pipeline_cograph(&generate::path(4), &opts, &cfg), Err(CographError::NotCograph));
    }
}
