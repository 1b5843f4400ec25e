//! `dfpart` command-line front end.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 a drop cannot fit the
//! capacity, 3 a simulated partition exceeded capacity.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::generate::{generate_pipeline, GeneratorSpec};
use crate::graph::{load_pgt, Pgt};
use crate::partition::{partition, PartitionSolution};
use crate::resource::ResourceVector;
use crate::simulate::simulate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dfpart",
    version,
    about = "Partition dataflow graphs under node resource capacity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic pipeline graph as JSON
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        /// Write to PATH instead of stdout
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Partition a graph and write the solution JSON
    Partition(RunArgs),
    /// Write the `m,t` merge curve as CSV
    Curve(RunArgs),
    /// Simulate a graph under a solution and write the demand trace CSV
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Trace CSV destination (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write makespan and per-partition peaks as JSON
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    Chain {
        #[arg(long)]
        n: usize,
    },
    ForkJoin {
        #[arg(long)]
        width: usize,
    },
    LayeredImaging {
        #[arg(long)]
        layers: usize,
        #[arg(long)]
        width: usize,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Destination (stdout if omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cores per node; defaults to the graph's total, i.e. unconstrained
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cores: Option<u64>,
    /// Memory per node in MB; defaults to the graph's total
    #[arg(long = "memory-mb", value_parser = clap::value_parser!(u64).range(1..))]
    pub memory_mb: Option<u64>,
}

impl RunArgs {
    fn capacity(&self, g: &Pgt) -> ResourceVector {
        let total = g.total_demand();
        ResourceVector::new(
            self.cores.unwrap_or(total.cores.max(1)),
            self.memory_mb.unwrap_or(total.memory_mb.max(1)),
        )
    }
}

/// Runs one command and returns the process exit code. Diagnostics go to
/// stderr, summaries to stdout (stderr when stdout carries the data).
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Gen {
            family,
            seed,
            output,
        } => cmd_gen(family, seed, output.as_deref()),
        Command::Partition(args) => cmd_partition(&args),
        Command::Curve(args) => cmd_curve(&args),
        Command::Simulate {
            input,
            solution,
            output,
            summary,
        } => cmd_simulate(&input, &solution, output.as_deref(), summary.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InfeasibleDrop { .. } => EXIT_INFEASIBLE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<Pgt> {
    load_pgt(fs::File::open(path)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report(output: Option<&Path>, text: &str) {
    if output.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

pub fn cmd_gen(family: GenFamily, seed: u64, output: Option<&Path>) -> Result<i32> {
    let spec = match family {
        GenFamily::Chain { n } => GeneratorSpec::chain(n),
        GenFamily::ForkJoin { width } => GeneratorSpec::fork_join(width),
        GenFamily::LayeredImaging { layers, width } => {
            GeneratorSpec::layered_imaging(layers, width)
        }
    }
    .with_seed(seed);
    let g = generate_pipeline(&spec)?;
    emit(output, &(g.to_json() + "\n"))?;
    Ok(EXIT_OK)
}

pub fn cmd_partition(args: &RunArgs) -> Result<i32> {
    let g = read_graph(&args.input)?;
    let sol = partition(&g, args.capacity(&g))?;
    emit(args.output.as_deref(), &(sol.to_json(&g) + "\n"))?;
    report(args.output.as_deref(), &summary(&g, &sol));
    Ok(EXIT_OK)
}

fn summary(g: &Pgt, sol: &PartitionSolution) -> String {
    let mut s = String::new();
    writeln!(s, "drops: {}  capacity: {}", g.len(), sol.capacity).unwrap();
    writeln!(s, "m_star: {}", sol.m_star()).unwrap();
    writeln!(s, "t_star: {}", sol.t_star).unwrap();
    for p in &sol.partitions {
        writeln!(
            s,
            "  partition {}: {} drops, wmax {}",
            p.id,
            p.members.len(),
            p.wmax
        )
        .unwrap();
    }
    s
}

pub fn cmd_curve(args: &RunArgs) -> Result<i32> {
    let g = read_graph(&args.input)?;
    let sol = partition(&g, args.capacity(&g))?;
    let mut csv = String::from("m,t\n");
    for p in sol.curve(&g) {
        writeln!(csv, "{},{}", p.m, p.t).unwrap();
    }
    emit(args.output.as_deref(), &csv)?;
    Ok(EXIT_OK)
}

pub fn cmd_simulate(
    input: &Path,
    solution: &Path,
    output: Option<&Path>,
    summary: Option<&Path>,
) -> Result<i32> {
    let g = read_graph(input)?;
    let sol = PartitionSolution::from_json(&g, &fs::read_to_string(solution)?)?;
    let trace = simulate(&g, &sol)?;
    emit(output, &trace.to_csv())?;
    if let Some(path) = summary {
        fs::write(path, trace.summary_json() + "\n")?;
    }
    let over = trace.violations(&sol.capacity);
    if over.is_empty() {
        return Ok(EXIT_OK);
    }
    for p in over {
        eprintln!(
            "partition {p} peaks at {} which exceeds capacity {}",
            trace.peak(p),
            sol.capacity
        );
    }
    Ok(EXIT_VIOLATION)
}
