//! Test-side oracles that share no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use oneplanar::{ConstraintSet, Edge, Graph};
use rand::Rng;

/// Adjacency rows as bitmasks (n <= 16).
pub fn rows(g: &Graph) -> Vec<u16> {
    let mut r = vec![0u16; g.n()];
    for &(u, v) in g.edges() {
        r[u] |= 1 << v;
        r[v] |= 1 << u;
    }
    r
}

fn from_rows(r: &[u16]) -> Graph {
    let n = r.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| r[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

/// Largest upper-triangle bit string over relabelings that list vertices by
/// nonincreasing degree. Degree classes only permute internally, so this
/// is a canonical form.
fn canonical(r: &[u16]) -> u64 {
    let n = r.len();
    let deg: Vec<u32> = r.iter().map(|x| x.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let slot_deg: Vec<u32> = order.iter().map(|&v| deg[v]).collect();
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u16;
    fn rec(r: &[u16], slot_deg: &[u32], deg: &[u32], perm: &mut Vec<usize>, used: &mut u16, best: &mut u64) {
        let n = r.len();
        if perm.len() == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | u64::from(r[perm[i]] >> perm[j] & 1);
                }
            }
            *best = (*best).max(code);
            return;
        }
        let slot = perm.len();
        for v in 0..n {
            if *used >> v & 1 == 0 && deg[v] == slot_deg[slot] {
                *used |= 1 << v;
                perm.push(v);
                rec(r, slot_deg, deg, perm, used, best);
                perm.pop();
                *used &= !(1 << v);
            }
        }
    }
    rec(r, &slot_deg, &deg, &mut perm, &mut used, &mut best);
    best
}

/// One graph per isomorphism class on exactly `n` vertices, built by adding
/// a vertex with every neighbourhood to each class on `n - 1` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8);
    let mut level: Vec<Vec<u16>> = vec![vec![]];
    for k in 1..=n {
        let mut seen: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for r in &level {
            for nb in 0u16..1 << (k - 1) {
                let mut next = r.clone();
                for (u, row) in next.iter_mut().enumerate() {
                    if nb >> u & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                next.push(nb);
                seen.entry(canonical(&next)).or_insert(next);
            }
        }
        level = seen.into_values().collect();
    }
    level.iter().map(|r| from_rows(r)).collect()
}

/// Tree-depth straight from the definition: 1 + min over deleted vertices
/// for a connected set, max over components otherwise. Memoized per subset.
pub fn tree_depth_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16);
    let r = rows(g);
    let mut memo: Vec<u8> = vec![u8::MAX; 1 << n];
    memo[0] = 0;
    fn component(r: &[u16], set: u32) -> u32 {
        let start = set & set.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = u32::from(r[v]) & set & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        comp
    }
    fn td(r: &[u16], set: u32, memo: &mut Vec<u8>) -> u8 {
        if memo[set as usize] != u8::MAX {
            return memo[set as usize];
        }
        let comp = component(r, set);
        let value = if comp != set {
            td(r, comp, memo).max(td(r, set & !comp, memo))
        } else {
            let mut best = u8::MAX;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                best = best.min(1 + td(r, set & !(1 << v), memo));
            }
            best
        };
        memo[set as usize] = value;
        value
    }
    td(&r, (1u32 << n) - 1, &mut memo) as usize
}

/// Number of faces traced from a rotation given as, per vertex, the cyclic
/// list of neighbours (simple graphs only).
pub fn trace_faces(rotation: &[Vec<usize>]) -> usize {
    let mut next: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            // arriving at v along u->v, leave along the successor of u around v
            next.insert((u, v), (v, rot[(i + 1) % rot.len()]));
        }
    }
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = 0;
    for &start in next.keys() {
        if seen.contains(&start) {
            continue;
        }
        faces += 1;
        let mut d = start;
        while seen.insert(d) {
            d = next[&d];
        }
    }
    faces
}

/// Components counting isolated vertices.
pub fn component_count(g: &Graph) -> usize {
    let mut label: Vec<usize> = (0..g.n()).collect();
    fn find(l: &mut Vec<usize>, x: usize) -> usize {
        if l[x] != x {
            let r = find(l, l[x]);
            l[x] = r;
        }
        l[x]
    }
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut label, u), find(&mut label, v));
        label[a] = b;
    }
    (0..g.n()).filter(|&x| find(&mut label, x) == x).count()
}

/// Whether `edges` form a subdivision of K5 or K3,3: suppress degree-two
/// vertices and compare the resulting multigraph.
pub fn is_kuratowski_subdivision(n: usize, edges: &[Edge]) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().any(|a| a.len() == 1) {
        return false;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mut links: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut link_count = 0;
    let mut reached: BTreeSet<usize> = BTreeSet::new();
    for &b in &branch {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            while adj[cur].len() == 2 {
                let nxt = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                reached.insert(cur);
                prev = cur;
                cur = nxt;
            }
            if cur == b {
                return false;
            }
            links.insert((b.min(cur), b.max(cur)));
            link_count += 1;
        }
    }
    if link_count != 2 * links.len() {
        return false; // parallel threads
    }
    // no stray cycles of degree-two vertices
    if adj.iter().filter(|a| a.len() == 2).count() != reached.len() {
        return false;
    }
    let b = branch.len();
    let deg = |x: usize| links.iter().filter(|&&(p, q)| p == x || q == x).count();
    if b == 5 {
        links.len() == 10
    } else if b == 6 {
        if links.len() != 9 || branch.iter().any(|&x| deg(x) != 3) {
            return false;
        }
        // bipartite with parts of three
        let mut side: BTreeMap<usize, bool> = BTreeMap::new();
        side.insert(branch[0], false);
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, q) in &links {
                match (side.get(&p).copied(), side.get(&q).copied()) {
                    (Some(s), None) => {
                        side.insert(q, !s);
                        changed = true;
                    }
                    (None, Some(s)) => {
                        side.insert(p, !s);
                        changed = true;
                    }
                    (Some(s), Some(t)) if s == t => return false,
                    _ => {}
                }
            }
        }
        side.values().filter(|&&s| s).count() == 3 && side.len() == 6
    } else {
        false
    }
}

/// Closed form for which complete bipartite graphs are 1-planar.
pub fn bipartite_closed_form(a: usize, b: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    a <= 2 || (a == 3 && b <= 6) || (a == 4 && b <= 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    None,
    Uncrossable,
    TwoColoring,
}

pub const REGIMES: [Regime; 3] = [Regime::None, Regime::Uncrossable, Regime::TwoColoring];

pub fn random_constraints(g: &Graph, regime: Regime, rng: &mut impl Rng) -> ConstraintSet {
    let mut cs = ConstraintSet::default();
    match regime {
        Regime::None => {}
        Regime::Uncrossable => {
            for &e in g.edges() {
                if rng.gen_bool(0.2) {
                    cs.uncrossable.insert(e);
                }
            }
        }
        Regime::TwoColoring => {
            cs.colors = Some(g.edges().iter().map(|&e| (e, rng.gen_range(1..=2u32))).collect());
        }
    }
    cs
}
