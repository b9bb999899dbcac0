//! Parameterized kernels. Each one either rejects outright or reduces the
//! input to small instances (with crossing constraints) plus a [`LiftPlan`]
//! that carries their witnesses back to the input graph.

pub mod cotree;
pub mod cyclomatic;
pub mod words;
pub mod treedepth;
pub mod vc;

use serde::Serialize;

use crate::constraints::ConstraintSet;
use crate::embedding::{verify_witness, CrossingWitness};
use crate::graph::{Graph, Vertex};
use crate::plan::LiftPlan;
use crate::solver::{decide_with, NotOnePlanarReason, SearchStats, SolveOptions, SolveOutcome};

/// A reduced sub-instance; `vertices[i]` is the input id of local vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub constraints: ConstraintSet,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    Rejected(NotOnePlanarReason),
    Reduced { instances: Vec<Instance>, plan: LiftPlan },
}

/// What a pipeline measured on the way to its verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// Parameter values, e.g. `("k_vc", 3)`; per-block values repeat the key.
    pub parameters: Vec<(String, usize)>,
    /// `(vertices, edges)` of every instance handed to the solver.
    pub kernel_sizes: Vec<(usize, usize)>,
    pub search: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub outcome: SolveOutcome,
    pub report: KernelReport,
}

impl PipelineResult {
    pub(crate) fn rejected(reason: NotOnePlanarReason, report: KernelReport) -> Self {
        PipelineResult {
            outcome: SolveOutcome::NotOnePlanar(reason),
            report,
        }
    }
}

/// Solves every instance, then lifts and re-verifies the combined witness
/// on `g`. The verdict is the conjunction over instances.
pub fn solve_reduced(g: &Graph, outcome: KernelOutcome, opts: &SolveOptions, mut report: KernelReport) -> PipelineResult {
    let (instances, plan) = match outcome {
        KernelOutcome::Rejected(reason) => return PipelineResult::rejected(reason, report),
        KernelOutcome::Reduced { instances, plan } => (instances, plan),
    };
    let mut remaining = SolveOptions { ..*opts };
    let mut witnesses: Vec<CrossingWitness> = Vec::with_capacity(instances.len());
    for inst in &instances {
        report.kernel_sizes.push((inst.graph.n(), inst.graph.m()));
        let solved = decide_with(&inst.graph, &inst.constraints, &remaining);
        report.search.add(&solved.stats);
        remaining.budget = remaining.budget.saturating_sub(solved.stats.nodes);
        match solved.outcome {
            SolveOutcome::OnePlanar(w) => witnesses.push(w),
            other => {
                return PipelineResult {
                    outcome: other,
                    report,
                }
            }
        }
    }
    let lifted = plan
        .lift_witness(&witnesses)
        .expect("kernel witnesses respect their constraints, so lifting succeeds");
    assert!(
        verify_witness(g, &lifted, &ConstraintSet::default()),
        "lifted witness does not verify on the input graph"
    );
    PipelineResult {
        outcome: SolveOutcome::OnePlanar(lifted),
        report,
    }
}
