//! Vertex-cover kernel.
//!
//! With a vertex cover `C` of size `k`, every vertex outside `C` has all its
//! neighbors in `C`. After leaves are pruned, outside vertices of degree two
//! fall into groups by their neighbor pair (a `K_{2,i}`); each group is cut
//! down to `max(1, 2k - 3)` members, one of which becomes an anchor whose
//! two edges the solver must keep uncrossed. Dense configurations are
//! rejected outright: more than `5k` cover pairs joined through distinct
//! outside vertices, a `K_{3,7}` on a cover triple, or more than `6k`
//! outside vertices of degree at least three over one cover pair.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::constraints::ConstraintSet;
use crate::embedding::CrossingWitness;
use crate::graph::{blocks, edge, peel_low_degree, Edge, Graph, Vertex};
use crate::plan::{LiftError, LiftPlan, Reduction};
use crate::solver::{decide_with, exceeds_density, NotOnePlanarReason, SolveOptions, Solved};

use super::{solve_reduced, Instance, KernelOutcome, KernelReport, PipelineResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcError {
    #[error("edge {0:?} is not covered")]
    NotACover(Edge),
    #[error("no vertex cover of size at most {0}")]
    CoverTooLarge(usize),
    #[error("graph is not a split graph")]
    NotSplit,
}

/// A truncated `K_{2,i}` group, in kernel ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGroup {
    pub hubs: (Vertex, Vertex),
    pub kept: Vec<Vertex>,
    pub removed: usize,
    pub anchor: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverKernel {
    pub kernel: Graph,
    /// Cover in kernel ids.
    pub cover: Vec<Vertex>,
    /// Size of the cover the kernel was built from (after leaf pruning).
    pub k: usize,
    pub groups: Vec<CoverGroup>,
    pub plan: LiftPlan,
    pub early_verdict: Option<NotOnePlanarReason>,
    /// Input id of each kernel vertex.
    pub vertices: Vec<Vertex>,
    /// Outside-cover vertices of degree at least three.
    pub high_degree_outside: usize,
}

/// Group size kept by truncation.
pub fn group_cap(k: usize) -> usize {
    (2 * k).saturating_sub(3).max(1)
}

/// Vertex bound implied by the rejection rules: the cover, at most six
/// outside vertices per cover triple, at most `5k` groups.
pub fn kernel_size_bound(k: usize) -> usize {
    let triples = if k >= 3 { k * (k - 1) * (k - 2) / 6 } else { 0 };
    k + 6 * triples + 5 * k * group_cap(k)
}

fn greedy_matching(g: &Graph) -> Vec<Edge> {
    let mut used = vec![false; g.n()];
    let mut m = Vec::new();
    for &(u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            m.push((u, v));
        }
    }
    m
}

/// A minimum vertex cover if one of size at most `max_k` exists.
///
/// The greedy maximal matching `M` bounds the optimum between `|M|` and
/// `2|M|`; a vertex of degree above `2|M|` is in every minimum cover. The
/// rest is bounded branching (a vertex or all its neighbors) with the cover
/// size deepened from the lower bound.
pub fn vertex_cover(g: &Graph, max_k: usize) -> Option<Vec<Vertex>> {
    let matching = greedy_matching(g);
    if matching.len() > max_k {
        return None;
    }
    let forced: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) > 2 * matching.len()).collect();
    let rest: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !forced.contains(&u) && !forced.contains(&v))
        .collect();
    let lower = matching.len().max(forced.len());
    let upper = max_k.min(2 * matching.len());
    for k in lower..=upper {
        if let Some(mut c) = branch_cover(&rest, k - forced.len()) {
            c.extend(&forced);
            c.sort_unstable();
            assert!(g.edges().iter().all(|&(u, v)| c.binary_search(&u).is_ok() || c.binary_search(&v).is_ok()));
            return Some(c);
        }
    }
    None
}

fn branch_cover(edges: &[Edge], k: usize) -> Option<Vec<Vertex>> {
    if edges.is_empty() {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &(u, v) in edges {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    if edges.len() > k * deg.values().max().unwrap() {
        return None;
    }
    let v = *deg.iter().max_by_key(|&(&v, &d)| (d, std::cmp::Reverse(v))).unwrap().0;
    let without = |gone: &[Vertex]| -> Vec<Edge> {
        edges
            .iter()
            .copied()
            .filter(|&(a, b)| !gone.contains(&a) && !gone.contains(&b))
            .collect()
    };
    if let Some(mut c) = branch_cover(&without(&[v]), k - 1) {
        c.push(v);
        return Some(c);
    }
    let nbrs: Vec<Vertex> = edges
        .iter()
        .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
        .collect();
    if nbrs.len() <= k {
        if let Some(mut c) = branch_cover(&without(&nbrs), k - nbrs.len()) {
            c.extend(nbrs);
            return Some(c);
        }
    }
    None
}

/// Maximum matching between cover pairs and outside vertices adjacent to both.
fn distinct_pair_paths(g: &Graph, in_cover: &[bool]) -> usize {
    let mut pairs: BTreeMap<Edge, Vec<Vertex>> = BTreeMap::new();
    for x in (0..g.n()).filter(|&x| !in_cover[x]) {
        let nb = g.neighbors(x);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                pairs.entry(edge(a, b)).or_default().push(x);
            }
        }
    }
    let lists: Vec<&Vec<Vertex>> = pairs.values().collect();
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    fn augment(p: usize, lists: &[&Vec<Vertex>], owner: &mut BTreeMap<Vertex, usize>, seen: &mut BTreeSet<Vertex>) -> bool {
        for &x in lists[p] {
            if seen.insert(x) {
                let free = match owner.get(&x) {
                    None => true,
                    Some(&q) => augment(q, lists, owner, seen),
                };
                if free {
                    owner.insert(x, p);
                    return true;
                }
            }
        }
        false
    }
    (0..lists.len())
        .filter(|&p| augment(p, &lists, &mut owner, &mut BTreeSet::new()))
        .count()
}

fn common_neighbors(g: &Graph, vs: &[Vertex]) -> usize {
    (0..g.n()).filter(|&x| vs.iter().all(|&v| g.has_edge(x, v))).count()
}

/// Builds the kernel. `cover` must cover every edge that survives leaf pruning.
pub fn vc_kernelize(g: &Graph, cover: &[Vertex]) -> Result<CoverKernel, VcError> {
    let mut plan = LiftPlan::new(g.n());
    let (survivors, records) = peel_low_degree(g, |_| true);
    for r in records {
        plan.push(r);
    }
    // work on the pruned graph in its own ids, record in input ids
    let h = g.induced(&survivors);
    let mut in_cover = vec![false; h.n()];
    for (i, &v) in survivors.iter().enumerate() {
        in_cover[i] = cover.contains(&v);
    }
    if let Some(&(u, v)) = h.edges().iter().find(|&&(u, v)| !in_cover[u] && !in_cover[v]) {
        return Err(VcError::NotACover(edge(survivors[u], survivors[v])));
    }
    let cover_local: Vec<Vertex> = (0..h.n()).filter(|&v| in_cover[v]).collect();
    let k = cover_local.len();

    let reject = |rule: &str, plan: LiftPlan| CoverKernel {
        kernel: h.clone(),
        cover: cover_local.clone(),
        k,
        groups: Vec::new(),
        plan,
        early_verdict: Some(NotOnePlanarReason::KernelRejection(rule.to_string())),
        vertices: survivors.clone(),
        high_degree_outside: 0,
    };
    if distinct_pair_paths(&h, &in_cover) > 5 * k {
        return Ok(reject("pairs5k", plan));
    }
    for (i, &a) in cover_local.iter().enumerate() {
        for (j, &b) in cover_local.iter().enumerate().skip(i + 1) {
            for &c in &cover_local[j + 1..] {
                if common_neighbors(&h, &[a, b, c]) >= 7 {
                    return Ok(reject("k37", plan));
                }
            }
        }
    }
    let outside: Vec<Vertex> = (0..h.n()).filter(|&v| !in_cover[v]).collect();
    let high: Vec<Vertex> = outside.iter().copied().filter(|&x| h.degree(x) >= 3).collect();
    for (i, &a) in cover_local.iter().enumerate() {
        for &b in &cover_local[i + 1..] {
            let over = high.iter().filter(|&&x| h.has_edge(x, a) && h.has_edge(x, b)).count();
            if over > 6 * k {
                return Ok(reject("group6k", plan));
            }
        }
    }

    let mut groups: BTreeMap<Edge, Vec<Vertex>> = BTreeMap::new();
    for &x in outside.iter().filter(|&&x| h.degree(x) == 2) {
        let nb = h.neighbors(x);
        groups.entry(edge(nb[0], nb[1])).or_default().push(x);
    }
    let cap = group_cap(k);
    let mut removed_all = BTreeSet::new();
    let mut truncated = Vec::new();
    for (gi, (hubs, members)) in groups.iter().enumerate() {
        if members.len() <= cap {
            continue;
        }
        let removed: Vec<Vertex> = members[cap..].to_vec();
        removed_all.extend(removed.iter().copied());
        plan.push(Reduction::GroupTruncation {
            group: gi,
            hubs: (survivors[hubs.0], survivors[hubs.1]),
            removed: removed.iter().map(|&x| survivors[x]).collect(),
            anchor: survivors[members[0]],
        });
        truncated.push((*hubs, members[..cap].to_vec(), removed.len()));
    }
    let kept_local: Vec<Vertex> = (0..h.n()).filter(|v| !removed_all.contains(v)).collect();
    let vertices: Vec<Vertex> = kept_local.iter().map(|&v| survivors[v]).collect();
    plan.push(Reduction::Compact {
        instance: 0,
        vertices: vertices.clone(),
    });
    let to_kernel = |v: Vertex| kept_local.binary_search(&v).unwrap();
    let kernel = h.induced(&kept_local);
    Ok(CoverKernel {
        kernel,
        cover: cover_local.iter().map(|&v| to_kernel(v)).collect(),
        k,
        groups: truncated
            .into_iter()
            .map(|(hubs, kept, removed)| CoverGroup {
                hubs: (to_kernel(hubs.0), to_kernel(hubs.1)),
                anchor: to_kernel(kept[0]),
                kept: kept.into_iter().map(to_kernel).collect(),
                removed,
            })
            .collect(),
        plan,
        early_verdict: None,
        vertices,
        high_degree_outside: high.len(),
    })
}

/// Crossing constraints for solving the kernel: each truncated group's
/// anchor path stays uncrossed, and edges within a truncated group do not
/// cross each other (the group can be drawn planar).
pub fn kernel_constraints(ck: &CoverKernel) -> ConstraintSet {
    let mut cs = ConstraintSet::default();
    for grp in &ck.groups {
        let (a, b) = grp.hubs;
        cs.mandatory_uncrossed_paths.push(vec![edge(grp.anchor, a), edge(grp.anchor, b)]);
        let group_edges: Vec<Edge> = grp.kept.iter().flat_map(|&x| [edge(x, a), edge(x, b)]).collect();
        for (i, &e) in group_edges.iter().enumerate() {
            for &f in &group_edges[i + 1..] {
                cs.forbid(e, f);
            }
        }
    }
    cs
}

pub fn vc_solve_kernel(ck: &CoverKernel, opts: &SolveOptions) -> Solved {
    assert!(ck.early_verdict.is_none(), "kernel was rejected");
    decide_with(&ck.kernel, &kernel_constraints(ck), opts)
}

/// Witness on the input graph from a kernel witness (kernel ids). Restored
/// vertices are drawn beside their anchor or as leaves, uncrossed.
pub fn vc_lift(ck: &CoverKernel, w: &CrossingWitness) -> Result<CrossingWitness, LiftError> {
    ck.plan.lift_witness(std::slice::from_ref(w))
}

/// The kernel as solver input: one instance under the anchor constraints,
/// or the rejection.
pub fn cover_kernel_outcome(ck: CoverKernel) -> (KernelOutcome, KernelReport) {
    let report = KernelReport {
        parameters: vec![("k_vc".to_string(), ck.k)],
        ..Default::default()
    };
    if let Some(reason) = ck.early_verdict {
        return (KernelOutcome::Rejected(reason), report);
    }
    let constraints = kernel_constraints(&ck);
    let outcome = KernelOutcome::Reduced {
        instances: vec![Instance {
            graph: ck.kernel,
            constraints,
            vertices: ck.vertices,
        }],
        plan: ck.plan,
    };
    (outcome, report)
}

fn density_rejects(g: &Graph) -> bool {
    blocks(g).iter().any(|b| exceeds_density(b.graph.n(), b.graph.m()))
}

/// Minimum cover of the leaf-pruned graph (input ids), if at most `max_k`.
pub fn pruned_cover(g: &Graph, max_k: usize) -> Option<Vec<Vertex>> {
    let (survivors, _) = peel_low_degree(g, |_| true);
    let cover = vertex_cover(&g.induced(&survivors), max_k)?;
    Some(cover.into_iter().map(|v| survivors[v]).collect())
}

/// Density guard, cover of the leaf-pruned graph, kernel, solve, lift.
pub fn pipeline_vc(g: &Graph, opts: &SolveOptions, max_k: usize) -> Result<PipelineResult, VcError> {
    if density_rejects(g) {
        return Ok(PipelineResult::rejected(NotOnePlanarReason::EdgeDensity, KernelReport::default()));
    }
    let cover = pruned_cover(g, max_k).ok_or(VcError::CoverTooLarge(max_k))?;
    let (outcome, report) = cover_kernel_outcome(vc_kernelize(g, &cover)?);
    Ok(solve_reduced(g, outcome, opts, report))
}

/// Clique/independent partition of a split graph by the degree-sequence test.
pub fn split_partition(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let d: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (0..d.len()).filter(|&i| d[i] >= i).map(|i| i + 1).max().unwrap_or(0);
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    Some((clique, independent))
}

/// Split graphs: a clique of seven rules out 1-planarity; otherwise the
/// clique side is a cover of size at most six.
pub fn split_graph_one_planar(g: &Graph, opts: &SolveOptions) -> Result<PipelineResult, VcError> {
    let (clique, independent) = split_partition(g).ok_or(VcError::NotSplit)?;
    let extends = independent
        .iter()
        .any(|&x| clique.iter().all(|&c| g.has_edge(x, c)));
    let omega = clique.len() + usize::from(extends);
    if omega >= 7 {
        let report = KernelReport {
            parameters: vec![("clique".to_string(), omega)],
            ..Default::default()
        };
        return Ok(PipelineResult::rejected(
            NotOnePlanarReason::KernelRejection("clique7".to_string()),
            report,
        ));
    }
    let (outcome, report) = cover_kernel_outcome(vc_kernelize(g, &clique)?);
    Ok(solve_reduced(g, outcome, opts, report))
}
