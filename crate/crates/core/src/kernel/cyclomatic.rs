//! Cyclomatic-number kernel.
//!
//! After the 2-core is taken, each block with cyclomatic number `k >= 2` is
//! made of `p <= 3k - 3` maximal degree-two paths between at most `2k - 2`
//! branch vertices. Some 1-planar drawing crosses each path at most
//! `2·p! - 1` times, so interiors longer than `2·p! + 1` carry no
//! information and are cut down to that length. Plain cycles and bridges are
//! planar and set aside.

use crate::embedding::{verify_witness, CrossingWitness};
use crate::graph::{blocks, cyclomatic_number, edge, maximal_degree_two_paths, peel_low_degree, Edge, Graph, Vertex};
use crate::plan::{LiftError, LiftPlan, Reduction};
use crate::solver::{exceeds_density, NotOnePlanarReason, SolveOptions};

use super::words::factorial;
use super::{solve_reduced, Instance, KernelOutcome, KernelReport, PipelineResult};

/// Longest interior a degree-two path keeps in a block with `p` paths.
pub fn interior_cap(p: usize) -> usize {
    factorial(p).saturating_mul(2).saturating_add(1)
}

/// Vertex bound for a kernel block of cyclomatic number `k >= 2`.
pub fn block_size_bound(k: usize) -> usize {
    let p = 3 * k - 3;
    (2 * k - 2).saturating_add(p.saturating_mul(interior_cap(p)))
}

/// Per-block figures of a cyclomatic kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSummary {
    /// Cyclomatic number of the block.
    pub k: usize,
    /// Number of maximal degree-two paths.
    pub p: usize,
    pub cap: usize,
    /// Interior lengths before and after truncation, per path.
    pub interiors: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloKernel {
    /// One instance per kept block, in input ids via `vertices`.
    pub instances: Vec<Instance>,
    pub blocks: Vec<BlockSummary>,
    pub plan: LiftPlan,
}

impl CycloKernel {
    pub fn outcome(&self) -> KernelOutcome {
        KernelOutcome::Reduced {
            instances: self.instances.clone(),
            plan: self.plan.clone(),
        }
    }

    pub fn report(&self) -> KernelReport {
        KernelReport {
            parameters: self.blocks.iter().map(|b| ("k_cyclo".to_string(), b.k)).collect(),
            ..Default::default()
        }
    }
}

/// 2-core, blocks, and path truncation.
pub fn cyclo_kernelize(g: &Graph) -> CycloKernel {
    let mut plan = LiftPlan::new(g.n());
    let (survivors, records) = peel_low_degree(g, |_| true);
    for r in records {
        plan.push(r);
    }
    let core = g.induced(&survivors);
    let mut dropped: Vec<Edge> = Vec::new();
    let mut truncations = Vec::new();
    let mut pieces: Vec<(Vec<Vertex>, Vec<Edge>)> = Vec::new();
    let mut summaries = Vec::new();
    for b in blocks(&core) {
        let host = |x: Vertex| survivors[b.vertices[x]];
        if b.graph.m() == b.graph.n() || b.graph.m() == 1 {
            // a plain cycle or a bridge
            dropped.extend(b.graph.edges().iter().map(|&(u, v)| edge(host(u), host(v))));
            continue;
        }
        let k = cyclomatic_number(&b.graph);
        let paths = maximal_degree_two_paths(&b.graph)
            .expect("blocks of a 2-core have minimum degree two")
            .paths;
        let p = paths.len();
        let cap = interior_cap(p);
        let mut removed = vec![false; b.graph.n()];
        let mut edges: Vec<Edge> = Vec::new();
        let mut interiors = Vec::with_capacity(p);
        for (i, path) in paths.iter().enumerate() {
            let walk = path.walk();
            let keep = path.interior.len().min(cap);
            interiors.push((path.interior.len(), keep));
            if path.interior.len() > cap {
                for &x in &path.interior[cap..] {
                    removed[x] = true;
                }
                for w in walk[..=cap].windows(2) {
                    edges.push(edge(host(w[0]), host(w[1])));
                }
                edges.push(edge(host(path.interior[cap - 1]), host(path.endpoints.1)));
                truncations.push(Reduction::PathTruncation {
                    path: i,
                    endpoints: (host(path.endpoints.0), host(path.endpoints.1)),
                    interior: path.interior.iter().map(|&x| host(x)).collect(),
                    kept: cap,
                });
            } else {
                edges.extend(walk.windows(2).map(|w| edge(host(w[0]), host(w[1]))));
            }
        }
        let vertices: Vec<Vertex> = (0..b.graph.n()).filter(|&x| !removed[x]).map(host).collect();
        assert!(vertices.len() <= block_size_bound(k), "block kernel exceeds its size bound");
        summaries.push(BlockSummary { k, p, cap, interiors });
        pieces.push((vertices, edges));
    }
    plan.push(Reduction::BlockSplit {
        instances: (0..pieces.len()).collect(),
        dropped_edges: dropped,
    });
    for t in truncations {
        plan.push(t);
    }
    let mut instances = Vec::with_capacity(pieces.len());
    for (i, (mut vertices, edges)) in pieces.into_iter().enumerate() {
        vertices.sort_unstable();
        let at = |x: Vertex| vertices.binary_search(&x).unwrap();
        let graph = Graph::new(vertices.len(), edges.iter().map(|&(u, v)| edge(at(u), at(v))))
            .expect("truncated block is simple");
        plan.push(Reduction::Compact {
            instance: i,
            vertices: vertices.clone(),
        });
        instances.push(Instance {
            graph,
            constraints: Default::default(),
            vertices,
        });
    }
    CycloKernel {
        instances,
        blocks: summaries,
        plan,
    }
}

/// Lifts one witness per kernel instance. Truncated paths are restored by
/// subdivision; a crossing on a shortcut edge moves to its first segment.
pub fn cyclo_lift(kernel: &CycloKernel, witnesses: &[CrossingWitness]) -> Result<CrossingWitness, LiftError> {
    for (i, inst) in kernel.instances.iter().enumerate() {
        let w = witnesses.get(i).ok_or(LiftError::MissingInstance(i))?;
        if !verify_witness(&inst.graph, w, &inst.constraints) {
            return Err(LiftError::InvalidWitness(format!("instance {i}")));
        }
    }
    kernel.plan.lift_witness(witnesses)
}

pub fn pipeline_cyclo(g: &Graph, opts: &SolveOptions) -> PipelineResult {
    if blocks(g).iter().any(|b| exceeds_density(b.graph.n(), b.graph.m())) {
        return PipelineResult::rejected(NotOnePlanarReason::EdgeDensity, KernelReport::default());
    }
    let kernel = cyclo_kernelize(g);
    solve_reduced(g, kernel.outcome(), opts, kernel.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::ConstraintSet;
    use crate::generate;

    #[test]
    fn theta_truncates_to_thirteen() {
        let g = generate::theta(3, 101);
        let kernel = cyclo_kernelize(&g);
        assert_eq!(kernel.blocks.len(), 1);
        let b = &kernel.blocks[0];
        assert_eq!((b.k, b.p, b.cap), (2, 3, 13));
        assert!(b.interiors.iter().all(|&(before, after)| before == 100 && after == 13));
        assert_eq!(kernel.instances[0].graph.n(), 2 + 3 * 13);
        let lifted = cyclo_lift(&kernel, &[CrossingWitness::empty()]).unwrap();
        assert!(lifted.is_empty());
        let graphs: Vec<Graph> = kernel.instances.iter().map(|i| i.graph.clone()).collect();
        assert_eq!(kernel.plan.replay(&graphs).unwrap(), g);
    }

    #[test]
    fn four_paths_keep_forty_nine() {
        let kernel = cyclo_kernelize(&generate::theta(4, 51));
        assert_eq!((kernel.blocks[0].k, kernel.blocks[0].p, kernel.blocks[0].cap), (3, 4, 49));
    }

    #[test]
    fn k4_is_unchanged() {
        let kernel = cyclo_kernelize(&generate::complete(4));
        assert_eq!(kernel.instances[0].graph, generate::complete(4));
    }

    #[test]
    fn crossing_moves_to_first_segment() {
        let g = generate::theta(3, 20);
        let kernel = cyclo_kernelize(&g);
        let inst = &kernel.instances[0];
        let Reduction::PathTruncation { endpoints, interior, kept, .. } = kernel
            .plan
            .records
            .iter()
            .find(|r| matches!(r, Reduction::PathTruncation { path: 0, .. }))
            .unwrap()
            .clone()
        else {
            unreachable!()
        };
        let local = |x: Vertex| inst.vertices.binary_search(&x).unwrap();
        let shortcut = edge(local(interior[kept - 1]), local(endpoints.1));
        // the middle edge of the second path
        let other = inst
            .graph
            .edges()
            .iter()
            .copied()
            .find(|&(u, v)| inst.vertices[u] == 30 && inst.vertices[v] == 31)
            .unwrap();
        let w = CrossingWitness::new([(shortcut, other)]);
        assert!(verify_witness(&inst.graph, &w, &ConstraintSet::default()));
        let lifted = cyclo_lift(&kernel, &[w]).unwrap();
        assert_eq!(lifted.len(), 1);
        assert!(lifted.crossed_edges().any(|e| e == edge(interior[kept - 1], interior[kept])));
        assert!(verify_witness(&g, &lifted, &ConstraintSet::default()));

        let bogus = CrossingWitness::new([(inst.graph.edges()[0], inst.graph.edges()[1])]);
        assert!(cyclo_lift(&kernel, &[bogus]).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let opts = SolveOptions::default();
        let mut edges: Vec<Edge> = (1..1000).map(|v| (v / 2, v)).collect();
        edges.push((500, 999));
        let g = Graph::new(1000, edges).unwrap();
        let res = pipeline_cyclo(&g, &opts);
        assert!(res.outcome.witness().unwrap().is_empty());
    }
}
