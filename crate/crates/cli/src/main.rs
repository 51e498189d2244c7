use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod output;

/// Quantum walks on dynamically percolated graphs.
#[derive(Debug, Parser)]
#[command(name = "perqwalk", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Structure graph file.
    #[arg(long, global = true, env = "PERQWALK_GRAPH")]
    pub graph: Option<PathBuf>,
    /// Walk description (JSON). Defaults to a reflecting Grover walk.
    #[arg(long, global = true, env = "PERQWALK_WALK")]
    pub walk: Option<PathBuf>,
    /// Percolation scheme: a name (`full:0.5`, `single_open`, ...) or JSON.
    /// Defaults to `full:0.5`; `attractors` defaults to the single-closed
    /// configurations plus the empty one.
    #[arg(long, global = true, env = "PERQWALK_SCHEME")]
    pub scheme: Option<String>,
    #[arg(long, global = true, env = "PERQWALK_STEPS", default_value_t = 100)]
    pub steps: usize,
    /// Comma-separated sink vertices.
    #[arg(long, global = true, env = "PERQWALK_SINK", value_delimiter = ',')]
    pub sink: Vec<usize>,
    #[arg(long, global = true, env = "PERQWALK_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for library-level parallelism.
    #[arg(long, global = true, env = "PERQWALK_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = "PERQWALK_FORMAT", value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true, env = "PERQWALK_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time series of trace, purity and vertex populations.
    Simulate(commands::simulate::SimulateArgs),
    /// Attractor space summary and optional dump.
    Attractors(commands::attractors::AttractorsArgs),
    /// Edge-3-coloring for cyclic local permutations.
    Color(commands::color::ColorArgs),
    /// Transfer efficiency towards the sink.
    Transport(commands::transport::TransportArgs),
    /// Checks walk invariants and prints one line per property.
    Verify(commands::verify::VerifyArgs),
}

/// Input problems exit with 1, numerical failures with 2.
#[derive(Debug)]
pub enum Failure {
    Validation(anyhow::Error),
    Numerical(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<perqwalk::Error>() {
            Some(inner) if inner.is_numerical() => Failure::Numerical(e),
            _ => Failure::Validation(e),
        }
    }
}

impl From<perqwalk::Error> for Failure {
    fn from(e: perqwalk::Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

pub type CmdResult = Result<(), Failure>;

fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Validation(anyhow::anyhow!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Simulate(a) => commands::simulate::run(&cli.common, a),
        Command::Attractors(a) => commands::attractors::run(&cli.common, a),
        Command::Color(a) => commands::color::run(&cli.common, a),
        Command::Transport(a) => commands::transport::run(&cli.common, a),
        Command::Verify(a) => commands::verify::run(&cli.common, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e:#}");
            ExitCode::from(2)
        }
    }
}
