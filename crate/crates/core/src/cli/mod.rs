//! Command-line orchestration: strategy selection, reporting, fixtures.

pub mod io;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use thiserror::Error;

use crate::constraints::{ConstraintError, ConstraintSet};
use crate::embedding::CrossingWitness;
use crate::generate::{self, Family, GenerateError};
use crate::graph::Graph;
use crate::kernel::cotree::{cograph_kernel, CographError};
use crate::kernel::cyclomatic::{cyclo_kernelize, interior_cap};
use crate::kernel::treedepth::{td_kernel, TdConfig};
use crate::kernel::vc::{cover_kernel_outcome, kernel_size_bound, pruned_cover, vc_kernelize, VcError};
use crate::kernel::{solve_reduced, KernelOutcome, KernelReport, PipelineResult};
use crate::par;
use crate::solver::{decide_with, SearchStats, SolveOptions, SolveOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Auto,
    Exact,
    Vc,
    Treedepth,
    Cyclomatic,
    Cograph,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Exact => "exact",
            Strategy::Vc => "vc",
            Strategy::Treedepth => "treedepth",
            Strategy::Cyclomatic => "cyclomatic",
            Strategy::Cograph => "cograph",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Record,
}

/// Caps on the parameters auto mode looks for.
pub const AUTO_MAX_K_VC: usize = 10;
pub const AUTO_MAX_D: usize = 6;
pub const AUTO_MAX_K_CYCLO: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub strategy: Strategy,
    /// Search-node budget, > 0.
    pub budget: u64,
    /// Tree-depth rejection constant, >= 1.
    pub c1: usize,
    pub paranoid: bool,
    /// Seed for generated fixtures; decisions themselves are deterministic.
    pub seed: u64,
    pub workers: usize,
    pub output: OutputFormat,
    pub witness: bool,
    /// Report wall-clock time (makes output run-dependent).
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            strategy: Strategy::Auto,
            budget: SolveOptions::default().budget,
            c1: TdConfig::default().c1,
            paranoid: false,
            seed: 0,
            workers: 1,
            output: OutputFormat::Text,
            witness: false,
            timing: false,
        }
    }
}

impl RunConfig {
    fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            budget: self.budget,
            workers: self.workers.max(1),
            // a requested witness should be a small one
            minimize: self.witness,
        }
    }

    fn td_config(&self) -> TdConfig {
        TdConfig {
            c1: self.c1,
            paranoid: self.paranoid,
            max_d: AUTO_MAX_D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "one-planar")]
    OnePlanar,
    #[serde(rename = "not-one-planar")]
    NotOnePlanar,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::OnePlanar => "one-planar",
            Verdict::NotOnePlanar => "not-one-planar",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub verdict: Verdict,
    /// Strategy that produced the verdict (auto resolves to one of the others).
    pub strategy: Strategy,
    pub reason: Option<String>,
    pub parameters: Vec<(String, usize)>,
    pub kernel_sizes: Vec<(usize, usize)>,
    pub search: SearchStats,
    /// Present exactly when the verdict is one-planar.
    pub witness: Option<CrossingWitness>,
    pub millis: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Unknown => 2,
            _ => 0,
        }
    }

    fn from_pipeline(strategy: Strategy, res: PipelineResult) -> Report {
        let (verdict, reason, witness) = match res.outcome {
            SolveOutcome::OnePlanar(w) => (Verdict::OnePlanar, None, Some(w)),
            SolveOutcome::NotOnePlanar(r) => (Verdict::NotOnePlanar, Some(r.to_string()), None),
            SolveOutcome::BudgetExceeded(_) => (Verdict::Unknown, Some("budgetExceeded".to_string()), None),
        };
        Report {
            verdict,
            strategy,
            reason,
            parameters: res.report.parameters,
            kernel_sizes: res.report.kernel_sizes,
            search: res.report.search,
            witness,
            millis: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("the {0} strategy does not accept crossing constraints")]
    ConstraintsWithKernel(&'static str),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Cograph(#[from] CographError),
    #[error(transparent)]
    Cover(#[from] VcError),
}

/// Kernel for one explicit (non-auto, non-exact) strategy.
pub fn kernelize(strategy: Strategy, g: &Graph, cfg: &RunConfig) -> Result<(KernelOutcome, KernelReport), RunError> {
    let td = cfg.td_config();
    Ok(match strategy {
        Strategy::Vc => {
            let cover = pruned_cover(g, g.n()).expect("every graph has a cover of size n");
            cover_kernel_outcome(vc_kernelize(g, &cover)?)
        }
        Strategy::Treedepth => td_kernel(g, None, &td),
        Strategy::Cyclomatic => {
            let k = cyclo_kernelize(g);
            (k.outcome(), k.report())
        }
        Strategy::Cograph => cograph_kernel(g, &td)?,
        Strategy::Auto | Strategy::Exact => unreachable!("not a kernel strategy"),
    })
}

/// Predicted kernel size per kernel strategy; `None` when a parameter is
/// over its cap. Candidates: vertex cover bound, measured tree-depth kernel,
/// and the cyclomatic bound summed over blocks.
pub fn predicted_sizes(g: &Graph, cfg: &RunConfig) -> Vec<(Strategy, Option<usize>)> {
    let vc = pruned_cover(g, AUTO_MAX_K_VC).map(|c| kernel_size_bound(c.len()));
    let (outcome, report) = td_kernel(g, None, &cfg.td_config());
    let td = if report.parameters.iter().any(|(_, d)| *d > AUTO_MAX_D) {
        None
    } else {
        match outcome {
            KernelOutcome::Rejected(_) => Some(0),
            KernelOutcome::Reduced { instances, .. } => Some(instances.iter().map(|i| i.graph.n()).sum()),
        }
    };
    let cyclo_kernel = cyclo_kernelize(g);
    let cyclo = if cyclo_kernel.blocks.iter().any(|b| b.k > AUTO_MAX_K_CYCLO) {
        None
    } else {
        Some(cyclo_kernel.blocks.iter().fold(0usize, |acc, b| {
            let p = 3 * b.k - 3;
            acc.saturating_add(p.saturating_mul(interior_cap(p)))
        }))
    };
    vec![(Strategy::Vc, vc), (Strategy::Treedepth, td), (Strategy::Cyclomatic, cyclo)]
}

/// Smallest predicted kernel; exact when every parameter is over its cap
/// or when constraints are present.
pub fn choose_strategy(g: &Graph, cs: &ConstraintSet, cfg: &RunConfig) -> Strategy {
    if !cs.is_empty() {
        return Strategy::Exact;
    }
    predicted_sizes(g, cfg)
        .into_iter()
        .filter_map(|(s, size)| size.map(|z| (z, s)))
        .min_by_key(|&(z, _)| z)
        .map_or(Strategy::Exact, |(_, s)| s)
}

pub fn run(cfg: &RunConfig, g: &Graph, cs: &ConstraintSet) -> Result<Report, RunError> {
    cs.validate(g)?;
    let start = Instant::now();
    let strategy = match cfg.strategy {
        Strategy::Auto => choose_strategy(g, cs, cfg),
        s => s,
    };
    if strategy != Strategy::Exact && !cs.is_empty() {
        return Err(RunError::ConstraintsWithKernel(strategy.name()));
    }
    let opts = cfg.solve_options();
    let mut report = par::install(opts.workers, || -> Result<Report, RunError> {
        let res = if strategy == Strategy::Exact {
            let solved = decide_with(g, cs, &opts);
            PipelineResult {
                outcome: solved.outcome,
                report: KernelReport {
                    search: solved.stats,
                    ..Default::default()
                },
            }
        } else {
            let (outcome, report) = kernelize(strategy, g, cfg)?;
            solve_reduced(g, outcome, &opts, report)
        };
        Ok(Report::from_pipeline(strategy, res))
    })?;
    if cfg.timing {
        report.millis = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

#[derive(Serialize)]
struct RecordKernel {
    instances: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct RecordSearch {
    nodes: u64,
    prunes: u64,
    planarity_tests: u64,
    reason: Option<String>,
    crossings: Option<usize>,
}

#[derive(Serialize)]
struct Record<'a> {
    verdict: Verdict,
    strategy: Strategy,
    parameters: BTreeMap<&'a str, Vec<usize>>,
    kernel: RecordKernel,
    search: RecordSearch,
    witness: Option<Vec<String>>,
    millis: Option<u64>,
}

fn cross_lines(w: &CrossingWitness) -> Vec<String> {
    w.to_string().lines().map(str::to_string).collect()
}

/// `text`: `key: value` lines then `cross` lines; `record`: one JSON object.
/// Witness lines are only written when `with_witness` is set.
pub fn emit_report(r: &Report, format: OutputFormat, with_witness: bool) -> String {
    let crossings = r.witness.as_ref().map(CrossingWitness::len);
    let witness_lines = r.witness.as_ref().filter(|_| with_witness).map(cross_lines);
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "verdict: {}", r.verdict.as_str());
            let _ = writeln!(out, "strategy: {}", r.strategy.name());
            if let Some(reason) = &r.reason {
                let _ = writeln!(out, "reason: {reason}");
            }
            for (k, v) in &r.parameters {
                let _ = writeln!(out, "{k}: {v}");
            }
            for (n, m) in &r.kernel_sizes {
                let _ = writeln!(out, "kernel: {n} {m}");
            }
            let _ = writeln!(out, "nodes: {}", r.search.nodes);
            let _ = writeln!(out, "prunes: {}", r.search.prunes);
            let _ = writeln!(out, "planarity_tests: {}", r.search.planarity_tests);
            if let Some(c) = crossings {
                let _ = writeln!(out, "crossings: {c}");
            }
            if let Some(ms) = r.millis {
                let _ = writeln!(out, "millis: {ms}");
            }
            for l in witness_lines.unwrap_or_default() {
                let _ = writeln!(out, "{l}");
            }
            out
        }
        OutputFormat::Record => {
            let mut parameters: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
            for (k, v) in &r.parameters {
                parameters.entry(k.as_str()).or_default().push(*v);
            }
            let rec = Record {
                verdict: r.verdict,
                strategy: r.strategy,
                parameters,
                kernel: RecordKernel {
                    instances: r.kernel_sizes.iter().map(|&(n, m)| [n, m]).collect(),
                },
                search: RecordSearch {
                    nodes: r.search.nodes,
                    prunes: r.search.prunes,
                    planarity_tests: r.search.planarity_tests,
                    reason: r.reason.clone(),
                    crossings,
                },
                witness: witness_lines,
                millis: r.millis,
            };
            let mut s = serde_json::to_string(&rec).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Fixture family from a name and positional numbers, e.g.
/// `complete-bipartite 3 7` or `random-with-cover 40 3 0.5`.
pub fn family_from_args(name: &str, params: &[String]) -> Result<Family, GenerateError> {
    let bad = |m: &str| GenerateError::InvalidParams(m.to_string());
    let int = |i: usize| -> Result<usize, GenerateError> {
        params
            .get(i)
            .ok_or_else(|| bad(&format!("{name} needs {} parameters", i + 1)))?
            .parse()
            .map_err(|_| bad("parameters must be nonnegative integers"))
    };
    let arity = |k: usize| -> Result<(), GenerateError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(bad(&format!("{name} takes {k} parameters")))
        }
    };
    Ok(match name {
        "complete" => {
            arity(1)?;
            Family::Complete { n: int(0)? }
        }
        "complete-bipartite" => {
            arity(2)?;
            Family::CompleteBipartite { a: int(0)?, b: int(1)? }
        }
        "cycle" => {
            arity(1)?;
            Family::Cycle { n: int(0)? }
        }
        "path" => {
            arity(1)?;
            Family::Path { n: int(0)? }
        }
        "theta" => {
            arity(2)?;
            Family::Theta {
                paths: int(0)?,
                path_length: int(1)?,
            }
        }
        "cubic-halin" => {
            arity(1)?;
            Family::CubicHalin { k: int(0)? }
        }
        "random-with-cover" => {
            arity(3)?;
            let p: f64 = params[2].parse().map_err(|_| bad("p must be a number"))?;
            Family::RandomWithCover {
                n: int(0)?,
                k: int(1)?,
                p,
            }
        }
        "random-with-cyclomatic" => {
            arity(2)?;
            Family::RandomWithCyclomatic { n: int(0)?, k: int(1)? }
        }
        "cograph" => {
            arity(1)?;
            Family::CographFromRandomCotree { n: int(0)? }
        }
        _ => return Err(bad(&format!("unknown family `{name}`"))),
    })
}

pub fn generate_text(name: &str, params: &[String], seed: u64) -> Result<String, GenerateError> {
    let g = generate::generate(&family_from_args(name, params)?, seed)?;
    Ok(io::write_graph(&g))
}

#[derive(Serialize)]
struct KernelInstanceJson<'a> {
    graph: &'a Graph,
    /// Input id of each instance vertex.
    vertices: &'a [usize],
    uncrossable: Vec<crate::graph::Edge>,
    forbidden_pairs: Vec<(crate::graph::Edge, crate::graph::Edge)>,
    mandatory_uncrossed_paths: &'a [Vec<crate::graph::Edge>],
}

/// Kernel of an explicit strategy as one JSON object: either
/// `{"rejected": reason}` or the instances plus the lift plan.
pub fn kernel_json(strategy: Strategy, g: &Graph, cfg: &RunConfig) -> Result<String, RunError> {
    let (outcome, report) = kernelize(strategy, g, cfg)?;
    let mut parameters: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (k, v) in &report.parameters {
        parameters.entry(k.as_str()).or_default().push(*v);
    }
    let value = match &outcome {
        KernelOutcome::Rejected(reason) => serde_json::json!({
            "strategy": strategy,
            "parameters": parameters,
            "rejected": reason.to_string(),
        }),
        KernelOutcome::Reduced { instances, plan } => {
            let instances: Vec<KernelInstanceJson> = instances
                .iter()
                .map(|i| KernelInstanceJson {
                    graph: &i.graph,
                    vertices: &i.vertices,
                    uncrossable: i.constraints.uncrossable.iter().copied().collect(),
                    forbidden_pairs: i.constraints.forbidden_pairs.iter().copied().collect(),
                    mandatory_uncrossed_paths: &i.constraints.mandatory_uncrossed_paths,
                })
                .collect();
            serde_json::json!({
                "strategy": strategy,
                "parameters": parameters,
                "instances": instances,
                "plan": plan,
            })
        }
    };
    let mut s = serde_json::to_string(&value).expect("kernel serializes");
    s.push('\n');
    Ok(s)
}
