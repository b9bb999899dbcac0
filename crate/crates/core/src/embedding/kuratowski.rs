//! Kuratowski subgraph extraction by edge deletion. Quadratic in the number
//! of planarity tests, which is fine for certificate checking.

use crate::graph::{Edge, Graph, Vertex};

use super::lr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    K5,
    K33,
}

/// An edge-minimal nonplanar subgraph of `g` together with its type, or
/// `None` when `g` is planar. The returned edges always form a subdivision
/// of K5 or K3,3; this is checked before returning.
pub fn kuratowski_subgraph(g: &Graph) -> Option<(Obstruction, Vec<Edge>)> {
    if lr::is_planar(g.n(), g.edges()) {
        return None;
    }
    let mut kept: Vec<Edge> = g.edges().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let e = kept.remove(i);
        if lr::is_planar(g.n(), &kept) {
            kept.insert(i, e);
            i += 1;
        }
    }
    let kind = classify(g.n(), &kept).expect("edge-minimal nonplanar graph is a Kuratowski subdivision");
    Some((kind, kept))
}

/// Recognizes a subdivision of K5 or K3,3 (ignoring isolated vertices).
pub fn classify(n: usize, edges: &[Edge]) -> Option<Obstruction> {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().any(|a| a.len() == 1) {
        return None;
    }
    let branch: Vec<Vertex> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    let deg = adj.iter().find(|a| a.len() > 2)?.len();
    if branch.iter().any(|&v| adj[v].len() != deg) {
        return None;
    }
    let kind = match (branch.len(), deg) {
        (5, 4) => Obstruction::K5,
        (6, 3) => Obstruction::K33,
        _ => return None,
    };
    // contract degree-two threads into branch-to-branch links
    let idx = |v: Vertex| branch.iter().position(|&b| b == v);
    let k = branch.len();
    let mut link = vec![vec![0usize; k]; k];
    for (bi, &b) in branch.iter().enumerate() {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            while idx(cur).is_none() {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            link[bi][idx(cur).unwrap()] += 1;
        }
    }
    let ok = match kind {
        Obstruction::K5 => (0..k).all(|i| (0..k).all(|j| link[i][j] == usize::from(i != j))),
        Obstruction::K33 => {
            let side: Vec<usize> = (0..k).filter(|&j| link[0][j] == 1).collect();
            side.len() == 3
                && (0..k).all(|i| {
                    (0..k).all(|j| {
                        let across = side.contains(&i) != side.contains(&j);
                        link[i][j] == usize::from(across)
                    })
                })
        }
    };
    (ok && no_stray_cycles(n, edges, &adj, &branch)).then_some(kind)
}

/// A degree-two cycle disjoint from the branch vertices would not be reached
/// by thread walking; reject graphs that have one.
fn no_stray_cycles(n: usize, edges: &[Edge], adj: &[Vec<Vertex>], branch: &[Vertex]) -> bool {
    let mut seen = vec![false; n];
    let mut stack: Vec<Vertex> = branch.to_vec();
    for &b in branch {
        seen[b] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    edges.iter().all(|&(u, _)| seen[u])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn finds_k5_and_k33() {
        let (kind, edges) = kuratowski_subgraph(&generate::complete(6)).unwrap();
        assert!(classify(6, &edges) == Some(kind));
        assert_eq!(
            kuratowski_subgraph(&generate::complete_bipartite(3, 3)).map(|x| x.0),
            Some(Obstruction::K33)
        );
        assert_eq!(kuratowski_subgraph(&generate::complete(5)).map(|x| x.0), Some(Obstruction::K5));
        assert!(kuratowski_subgraph(&generate::complete(4)).is_none());
    }

    #[test]
    fn subdivided_k5_is_recognized() {
        let k5 = generate::complete(5);
        let mut edges = Vec::new();
        let mut next = 5;
        for &(u, v) in k5.edges() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        }
        let g = Graph::new(next, edges).unwrap();
        assert_eq!(kuratowski_subgraph(&g).map(|x| x.1.len()), Some(20));
    }
}
