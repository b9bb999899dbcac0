//! Graph families for fixtures and benchmarks. Random families are seeded
//! and deterministic.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{edge, Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

fn invalid(msg: impl Into<String>) -> GenerateError {
    GenerateError::InvalidParams(msg.into())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    Theta { paths: usize, path_length: usize },
    CubicHalin { k: usize },
    RandomWithCover { n: usize, k: usize, p: f64 },
    RandomWithCyclomatic { n: usize, k: usize },
    CographFromRandomCotree { n: usize },
}

pub fn generate(family: &Family, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        Family::Complete { n } => Ok(complete(n)),
        Family::CompleteBipartite { a, b } => Ok(complete_bipartite(a, b)),
        Family::Cycle { n } if n >= 3 => Ok(cycle(n)),
        Family::Cycle { .. } => Err(invalid("cycle needs n >= 3")),
        Family::Path { n } => Ok(path(n)),
        // several bare hub-to-hub paths would be parallel edges
        Family::Theta { paths, path_length } if paths >= 1 && (path_length >= 2 || paths == 1 && path_length == 1) => {
            Ok(theta(paths, path_length))
        }
        Family::Theta { .. } => Err(invalid("theta needs paths >= 1 and path_length >= 2")),
        Family::CubicHalin { k } if k >= 3 => Ok(cubic_halin(k)),
        Family::CubicHalin { .. } => Err(invalid("cubic Halin graph needs k >= 3 leaves")),
        Family::RandomWithCover { n, k, p } if k <= n && (0.0..=1.0).contains(&p) => {
            Ok(random_with_cover(n, k, p, &mut rng))
        }
        Family::RandomWithCover { .. } => Err(invalid("need k <= n and 0 <= p <= 1")),
        Family::RandomWithCyclomatic { n, k } if n >= 1 && k <= (n * (n - 1) / 2).saturating_sub(n - 1) => {
            Ok(random_with_cyclomatic(n, k, &mut rng))
        }
        Family::RandomWithCyclomatic { .. } => Err(invalid("cyclomatic number too large for n")),
        Family::CographFromRandomCotree { n } if n >= 1 => Ok(cograph_from_random_cotree(n, &mut rng)),
        Family::CographFromRandomCotree { .. } => Err(invalid("cograph needs n >= 1")),
    }
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

/// Sides are `0..a` and `a..a + b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::new(a + b, edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Hubs 0 and 1 joined by `paths` internally disjoint paths of
/// `path_length` edges each.
pub fn theta(paths: usize, path_length: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for _ in 0..paths {
        let mut prev = 0;
        for _ in 1..path_length {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges).unwrap()
}

/// Cubic Halin graph: a caterpillar whose inner vertices have degree 3,
/// with its `k` leaves joined in a cycle in planar order.
pub fn cubic_halin(k: usize) -> Graph {
    assert!(k >= 3);
    let inner = k - 2;
    let mut edges: Vec<Edge> = (1..inner).map(|i| (i - 1, i)).collect();
    // spine drawn left to right; middle leaves hang above it, the ends take two
    let mut owners = vec![0];
    owners.extend(1..inner.saturating_sub(1));
    owners.extend([inner - 1, inner - 1]);
    if inner > 1 {
        owners.push(0);
    }
    let leaves: Vec<Vertex> = (inner..inner + owners.len()).collect();
    for (&leaf, &owner) in leaves.iter().zip(&owners) {
        edges.push((owner, leaf));
    }
    for w in 0..leaves.len() {
        edges.push((leaves[w], leaves[(w + 1) % leaves.len()]));
    }
    Graph::new(inner + leaves.len(), edges).unwrap()
}

/// Random graph whose vertices `0..k` cover every edge. Each pair with at
/// least one cover endpoint is an edge with probability `p`.
pub fn random_with_cover(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random connected graph with cyclomatic number `k`: a random tree plus
/// `k` extra edges.
pub fn random_with_cyclomatic(n: usize, k: usize, rng: &mut impl Rng) -> Graph {
    let mut edges: Vec<Edge> = (1..n).map(|v| edge(rng.gen_range(0..v), v)).collect();
    let mut set: std::collections::BTreeSet<Edge> = edges.iter().copied().collect();
    while set.len() < n - 1 + k {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && set.insert(edge(u, v)) {
            edges.push(edge(u, v));
        }
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    Graph::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Cograph from a random cotree on `n` leaves: leaves are split recursively
/// into random parts, alternating union and join by depth (the root label is
/// random).
pub fn cograph_from_random_cotree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    let vertices: Vec<Vertex> = (0..n).collect();
    let join = rng.gen_bool(0.5);
    let mut stack = vec![(vertices, join)];
    while let Some((vs, join)) = stack.pop() {
        if vs.len() == 1 {
            continue;
        }
        let parts = rng.gen_range(2..=vs.len().min(4));
        let mut cuts: Vec<usize> = (1..vs.len()).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
        cuts.sort_unstable();
        let mut groups = Vec::new();
        let mut start = 0;
        for c in cuts.into_iter().chain([vs.len()]) {
            groups.push(vs[start..c].to_vec());
            start = c;
        }
        if join {
            for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    for &u in &groups[i] {
                        for &v in &groups[j] {
                            edges.push(edge(u, v));
                        }
                    }
                }
            }
        }
        for gr in groups {
            stack.push((gr, !join));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Uniform random graph with exactly `m` edges.
pub fn random_gnm(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut all: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= all.len());
    all.shuffle(rng);
    all.truncate(m);
    Graph::new(n, all).unwrap()
}

/// Replaces edge `i` of `g` by a path with `extra[i]` new interior vertices.
pub fn subdivide(g: &Graph, extra: &[usize]) -> Graph {
    let mut next = g.n();
    let mut edges = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let mut prev = u;
        for _ in 0..extra[i] {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges).unwrap()
}

/// Adds `count` pendant vertices attached round-robin to the vertices of `g`.
pub fn with_pendants(g: &Graph, count: usize) -> Graph {
    let mut edges = g.edges().to_vec();
    for i in 0..count {
        edges.push((i % g.n(), g.n() + i));
    }
    Graph::new(g.n() + count, edges).unwrap()
}
