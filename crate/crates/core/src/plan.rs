//! Replayable reduction logs.
//!
//! Every kernel appends records in the id space of the graph it started from;
//! ids are only renumbered by an explicit `Compact` record, which names the
//! surviving working ids of one output instance. Replaying the log in reverse
//! rebuilds the input graph, and the same walk carries crossing witnesses from
//! the kernel instances back to the input.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::CrossingWitness;
use crate::graph::{edge, Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Reduction {
    /// `vertex` had degree <= 1 and was deleted; `neighbor` is its last neighbor.
    LeafRemoval {
        vertex: Vertex,
        neighbor: Option<Vertex>,
    },
    /// Members `removed` of a `K_{2,i}` group over `hubs` were deleted; `anchor`
    /// is a kept member whose two edges must stay uncrossed.
    GroupTruncation {
        group: usize,
        hubs: (Vertex, Vertex),
        removed: Vec<Vertex>,
        anchor: Vertex,
    },
    /// A maximal degree-two path lost all but its first `kept` interior
    /// vertices; the last kept vertex was joined to `endpoints.1`.
    PathTruncation {
        path: usize,
        endpoints: (Vertex, Vertex),
        interior: Vec<Vertex>,
        kept: usize,
    },
    /// The graph was cut at `shared` into sub-instances glued along an
    /// uncrossable `shared` edge; `added_edge` is set when that edge was not
    /// in the graph before the split.
    UncrossableSplit {
        shared: (Vertex, Vertex),
        subinstances: Vec<usize>,
        added_edge: bool,
    },
    /// Block decomposition: `instances` became kernel instances; the edges of
    /// trivially planar blocks (bridges, plain cycles) were set aside.
    BlockSplit {
        instances: Vec<usize>,
        dropped_edges: Vec<Edge>,
    },
    /// Output instance `instance` has local id `i` = working id `vertices[i]`.
    Compact {
        instance: usize,
        vertices: Vec<Vertex>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("no witness supplied for kernel instance {0}")]
    MissingInstance(usize),
    #[error("anchor edge {0:?} is crossed in the kernel witness")]
    AnchorCrossed(Edge),
    #[error("shared edge {0:?} of an uncrossable split is crossed")]
    SharedEdgeCrossed(Edge),
    #[error("kernel witness is invalid: {0}")]
    InvalidWitness(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftPlan {
    /// Vertex count of the graph the plan started from.
    pub original_n: usize,
    pub records: Vec<Reduction>,
}

impl LiftPlan {
    pub fn new(original_n: usize) -> Self {
        LiftPlan {
            original_n,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Reduction) {
        self.records.push(r);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn leaf_removals(&self) -> usize {
        self.records
            .iter()
            .filter(|r| matches!(r, Reduction::LeafRemoval { .. }))
            .count()
    }

    /// Rebuilds the input graph from the kernel instances.
    pub fn replay(&self, instances: &[Graph]) -> Result<Graph, LiftError> {
        let mut edges: BTreeSet<Edge> = BTreeSet::new();
        for r in self.records.iter().rev() {
            match r {
                Reduction::Compact { instance, vertices } => {
                    let g = instances
                        .get(*instance)
                        .ok_or(LiftError::MissingInstance(*instance))?;
                    edges.extend(g.edges().iter().map(|&(u, v)| edge(vertices[u], vertices[v])));
                }
                Reduction::BlockSplit { dropped_edges, .. } => {
                    edges.extend(dropped_edges.iter().copied());
                }
                Reduction::PathTruncation {
                    endpoints,
                    interior,
                    kept,
                    ..
                } => {
                    let last = interior[*kept - 1];
                    edges.remove(&edge(last, endpoints.1));
                    let mut prev = last;
                    for &x in &interior[*kept..] {
                        edges.insert(edge(prev, x));
                        prev = x;
                    }
                    edges.insert(edge(prev, endpoints.1));
                }
                Reduction::GroupTruncation { hubs, removed, .. } => {
                    for &x in removed {
                        edges.insert(edge(x, hubs.0));
                        edges.insert(edge(x, hubs.1));
                    }
                }
                Reduction::UncrossableSplit {
                    shared, added_edge, ..
                } => {
                    if *added_edge {
                        edges.remove(&edge(shared.0, shared.1));
                    }
                }
                Reduction::LeafRemoval { vertex, neighbor } => {
                    if let Some(w) = neighbor {
                        edges.insert(edge(*vertex, *w));
                    }
                }
            }
        }
        Graph::new(self.original_n, edges).map_err(|e| LiftError::InvalidWitness(e.to_string()))
    }

    /// Carries per-instance witnesses (in instance-local ids) back to the
    /// input graph. Crossings are never added: the result has exactly the
    /// crossings of the instance witnesses, with subdivided edges replaced by
    /// their first restored segment.
    pub fn lift_witness(&self, witnesses: &[CrossingWitness]) -> Result<CrossingWitness, LiftError> {
        let mut pairs: Vec<(Edge, Edge)> = Vec::new();
        for r in self.records.iter().rev() {
            match r {
                Reduction::Compact { instance, vertices } => {
                    let w = witnesses
                        .get(*instance)
                        .ok_or(LiftError::MissingInstance(*instance))?;
                    for &(e, f) in w.pairs() {
                        let map = |(u, v): Edge| edge(vertices[u], vertices[v]);
                        pairs.push((map(e), map(f)));
                    }
                }
                Reduction::PathTruncation {
                    endpoints,
                    interior,
                    kept,
                    ..
                } => {
                    let last = interior[*kept - 1];
                    let old = edge(last, endpoints.1);
                    let new = edge(last, interior[*kept]);
                    for p in &mut pairs {
                        if p.0 == old {
                            p.0 = new;
                        }
                        if p.1 == old {
                            p.1 = new;
                        }
                    }
                }
                Reduction::GroupTruncation { hubs, anchor, .. } => {
                    for a in [edge(*anchor, hubs.0), edge(*anchor, hubs.1)] {
                        if pairs.iter().any(|&(e, f)| e == a || f == a) {
                            return Err(LiftError::AnchorCrossed(a));
                        }
                    }
                }
                Reduction::UncrossableSplit { shared, .. } => {
                    let s = edge(shared.0, shared.1);
                    if pairs.iter().any(|&(e, f)| e == s || f == s) {
                        return Err(LiftError::SharedEdgeCrossed(s));
                    }
                }
                Reduction::BlockSplit { .. } | Reduction::LeafRemoval { .. } => {}
            }
        }
        Ok(CrossingWitness::new(pairs))
    }
}
