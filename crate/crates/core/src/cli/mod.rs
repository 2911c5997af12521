//! Command-line front end. Every command prints one JSON report on stdout and
//! diagnostics on stderr.
//!
//! Exit codes: 0 success or valid, 1 invalid colouring or failed search,
//! 2 usage or structural error, 3 search budget exhausted.

mod bench;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::{ColouringError, ExactError};
use crate::exact::DEFAULT_NODE_BUDGET;
use crate::generators::GeneratorError;
use crate::io::ParseError;
use crate::planar::BoundSpec;

pub const BUDGET_ENV: &str = "FRUGAL_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "frugal", version, about = "Frugal colourings: algorithms, exact oracles, validators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance as a graph file.
    Generate(GenerateArgs),
    /// Check the colouring stored in a graph file.
    Validate {
        #[command(subcommand)]
        check: ValidateCommand,
    },
    /// Run a constructive colouring algorithm.
    Colour {
        #[command(subcommand)]
        target: ColourCommand,
    },
    /// Exact optimum by bounded backtracking search.
    Exact {
        #[command(subcommand)]
        problem: ExactCommand,
    },
    /// Colour the square of a plane graph class by class from a k-frugal colouring.
    SquareViaCyclic(SquareArgs),
    /// Evaluate upper-bound formulas.
    Bounds(BoundsArgs),
    /// Run the algorithms over a seeded corpus and check every output.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// planar-tight, fat-triangle, cycle, path, star, wheel, k4, petersen,
    /// icosahedron, maximal-outerplanar, random-multigraph, random-bipartite
    pub family: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub left: Option<usize>,
    #[arg(long)]
    pub right: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub max_multiplicity: usize,
    /// Attach random lists of this size to every vertex (or edge with --edge-lists).
    #[arg(long)]
    pub list_size: Option<usize>,
    #[arg(long, requires = "list_size")]
    pub palette: Option<usize>,
    #[arg(long)]
    pub edge_lists: bool,
    /// Required by the random families and by --list-size.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the graph file here and print a report; otherwise print the file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file (JSON, or DIMACS for plain graphs).
    pub file: PathBuf,
    /// Take the colouring from this file instead.
    #[arg(long)]
    pub colouring: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ValidateCommand {
    /// k-frugal proper vertex colouring.
    Vertex {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
    },
    /// k-frugal proper edge colouring.
    Edge {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
    },
    /// L(p,q)-labelling.
    Lpq {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Proper colouring, rainbow on every face of the stored rotation.
    Faces {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VertexAlgo {
    Planar,
    Outerplanar,
    Outerplanar2,
    ViaLambda,
}

#[derive(Debug, Args)]
pub struct ColourOutput {
    /// Lists to colour from; defaults to the file's lists, then to `1..=size`.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// Write the graph with the colouring (and lists used) here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ColourCommand {
    Vertex {
        file: PathBuf,
        #[arg(long, value_enum)]
        algo: VertexAlgo,
        #[arg(long)]
        k: usize,
        /// Run the planar algorithm even on lists below the guaranteed size.
        #[arg(long)]
        attempt: bool,
        #[command(flatten)]
        out: ColourOutput,
    },
    /// Even k: matching pipeline, optionally from lists. Odd k: 2-factor pipeline.
    Edge {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ColourOutput,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    pub file: PathBuf,
    /// Largest number of colours (or largest label) to try.
    #[arg(long)]
    pub max: Option<usize>,
    /// Search node budget; defaults to $FRUGAL_NODE_BUDGET, then 10^7.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ExactCommand {
    ChiK {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        k: usize,
    },
    ChiKEdge {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        k: usize,
    },
    Lambda {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Proper colouring rainbow on every face of the stored rotation.
    Rainbow {
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Args)]
pub struct SquareArgs {
    /// Plane graph file; its stored vertex colouring is used if present.
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// A family name, or `all`.
    #[arg(long, default_value = "all")]
    pub family: String,
    #[arg(long)]
    pub delta: usize,
    #[arg(long)]
    pub k: usize,
    /// A number or `infinite`.
    #[arg(long)]
    pub girth: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ColouringError as C;
        match self {
            CliError::Exact(ExactError::BudgetExhausted { .. }) => 3,
            CliError::Colouring(C::ClassColouringBudgetExhausted { .. }) => 3,
            CliError::Exact(ExactError::Infeasible { .. }) => 1,
            CliError::Colouring(
                C::ExtensionFailed(_) | C::GalvinFailed(_) | C::MatchingFailed | C::InvalidColouring { .. },
            ) => 1,
            _ => 2,
        }
    }
}

/// What a command produced: the report's outcome, bound comparisons and exit code.
pub struct Outcome {
    pub parameters: Value,
    pub outcome: Value,
    pub bounds: Vec<BoundSpec>,
    pub seed: Option<u64>,
    pub exit: i32,
}

impl Outcome {
    fn new(parameters: Value, outcome: Value) -> Self {
        Outcome { parameters, outcome, bounds: Vec::new(), seed: None, exit: 0 }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a [String],
    parameters: Value,
    outcome: Value,
    bounds: Vec<BoundSpec>,
    seed: Option<u64>,
    timing_ms: f64,
}

pub(crate) fn node_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_ENV} is not a number: {s:?}"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let start = Instant::now();
    let result = commands::dispatch(cli.command, stdout);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let (outcome, exit) = match result {
        Ok(None) => return 0,
        Ok(Some(o)) => {
            let exit = o.exit;
            (o, exit)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            let exit = e.exit_code();
            let outcome = json!({ "error": e.to_string(), "exit": exit });
            (Outcome { exit, ..Outcome::new(Value::Null, outcome) }, exit)
        }
    };
    let report = Report {
        command: &echo,
        parameters: outcome.parameters,
        outcome: outcome.outcome,
        bounds: outcome.bounds,
        seed: outcome.seed,
        timing_ms,
    };
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    exit
}
