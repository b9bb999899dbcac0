use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oneplanar::cli::{self, io, OutputFormat, RunConfig, Strategy};
use oneplanar::{verify_witness, ConstraintSet, Graph};

#[derive(Parser)]
#[command(name = "oneplanar", version, about = "Decide whether a graph has a drawing with at most one crossing per edge")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (`u v` per line, optional `n N` header); `-` reads stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Constraint file: `uncrossable u v`, `forbid u1 v1 u2 v2`, `color c u v`.
    #[arg(long)]
    constraints: Option<String>,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    strategy: Strategy,
    /// Tree-depth rejection constant.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    c1: u64,
    /// Never reject on a large attachment group; always split instead.
    #[arg(long, alias = "no-td-reject")]
    paranoid: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one-planarity.
    Decide {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Search-node budget; exit code 2 when exhausted.
        #[arg(long, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Fixture seed (decisions are deterministic regardless).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for the search.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        /// Print a minimum witness as `cross` lines.
        #[arg(long)]
        witness: bool,
        /// Report wall-clock milliseconds.
        #[arg(long)]
        timing: bool,
    },
    /// Check a witness (`cross u1 v1 u2 v2` lines) against a graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        witness: String,
    },
    /// Print the kernel of an explicit strategy as JSON.
    Kernel {
        #[arg(long, default_value = "-")]
        input: String,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Write a fixture graph, e.g. `generate complete-bipartite 3 7`.
    Generate {
        family: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse a graph and write it back in canonical form.
    Echo {
        #[arg(long, default_value = "-")]
        input: String,
    },
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn load_graph(path: &str) -> Result<Graph, String> {
    io::parse_graph(&read_source(path)?).map_err(|e| format!("{path}: {e}"))
}

fn load(input: &InputArgs) -> Result<(Graph, ConstraintSet), String> {
    let g = load_graph(&input.input)?;
    let cs = match &input.constraints {
        None => ConstraintSet::default(),
        Some(p) => io::parse_constraints(&read_source(p)?, &g).map_err(|e| format!("{p}: {e}"))?,
    };
    Ok((g, cs))
}

fn config(k: &KernelArgs) -> RunConfig {
    RunConfig {
        strategy: k.strategy,
        c1: k.c1 as usize,
        paranoid: k.paranoid,
        ..RunConfig::default()
    }
}

fn execute(command: Command) -> Result<i32, String> {
    match command {
        Command::Decide {
            input,
            kernel,
            budget,
            seed,
            workers,
            output,
            witness,
            timing,
        } => {
            let (g, cs) = load(&input)?;
            let cfg = RunConfig {
                budget,
                seed,
                workers: workers as usize,
                output,
                witness,
                timing,
                ..config(&kernel)
            };
            let report = cli::run(&cfg, &g, &cs).map_err(|e| e.to_string())?;
            print!("{}", cli::emit_report(&report, output, witness));
            Ok(report.exit_code())
        }
        Command::Verify { input, witness } => {
            let (g, cs) = load(&input)?;
            let w = io::parse_witness(&read_source(&witness)?).map_err(|e| format!("{witness}: {e}"))?;
            if let Err(e) = w.validate(&g) {
                println!("invalid: {e}");
                return Ok(1);
            }
            if verify_witness(&g, &w, &cs) {
                println!("valid: {} crossings", w.len());
                Ok(0)
            } else {
                println!("invalid: the planarization is not planar or a constraint is violated");
                Ok(1)
            }
        }
        Command::Kernel { input, kernel } => {
            let g = load_graph(&input)?;
            let mut cfg = config(&kernel);
            if cfg.strategy == Strategy::Auto {
                cfg.strategy = cli::choose_strategy(&g, &ConstraintSet::default(), &cfg);
            }
            if cfg.strategy == Strategy::Exact {
                return Err("no kernel applies; the exact strategy has none".to_string());
            }
            print!("{}", cli::kernel_json(cfg.strategy, &g, &cfg).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Command::Generate { family, params, seed } => {
            print!("{}", cli::generate_text(&family, &params, seed).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Command::Echo { input } => {
            print!("{}", io::write_graph(&load_graph(&input)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // usage errors are input errors (exit 1); 2 means an exhausted budget
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
