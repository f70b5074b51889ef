mod check;
mod output;
mod registry;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latkit::embedding::{EmbeddingError, DEFAULT_NODE_BUDGET};
use latkit::io::IoError;
use thiserror::Error;

use crate::output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "latkit", version, about = "Finite order theory checks, censuses and theorem sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// List the registered verifiers and exit.
    #[arg(long)]
    list: bool,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one property of a structure read from JSON.
    Check {
        property: String,
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated element indices, overriding any subset in the input.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// List posets, lattices, topologies or maps between two posets.
    Enumerate {
        #[arg(value_enum)]
        what: Enumerable,
        /// A JSON file `{"dom": poset, "cod": poset}` for maps.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, value_enum, default_value_t = check::Filter::None)]
        filter: check::Filter,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run one registered verifier on a single instance.
    Verify {
        name: String,
        #[command(flatten)]
        params: Params,
    },
    /// Search small structures for a witness.
    Search {
        name: String,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run one registered verifier over its whole range of instances.
    Sweep {
        name: String,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Enumerable {
    Posets,
    Lattices,
    Topologies,
    Embeddings,
    Monotone,
}

#[derive(Args, Debug, Clone, Copy)]
struct Budget {
    /// Cap on search-tree nodes per census.
    #[arg(long = "budget-nodes", default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    nodes: u64,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long)]
    pub y: Option<usize>,
    /// Chain length of the domain factors.
    #[arg(long)]
    pub k: Option<usize>,
    /// Chain length of the codomain factors.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of domain factors.
    #[arg(long)]
    pub i: Option<usize>,
    /// Number of codomain factors.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long)]
    pub dims: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long = "budget-nodes", default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error("{0}")]
    Usage(String),
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error(transparent)]
    Embedding(EmbeddingError),
    #[error(transparent)]
    Other(Box<dyn std::error::Error + Send + Sync>),
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::BudgetExceeded { budget } => CliError::Budget(budget),
            other => CliError::Embedding(other),
        }
    }
}

impl From<latkit::topology::TopologyError> for CliError {
    fn from(e: latkit::topology::TopologyError) -> Self {
        CliError::Other(Box::new(e))
    }
}

impl From<latkit::LatticeError> for CliError {
    fn from(e: latkit::LatticeError) -> Self {
        CliError::Other(Box::new(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse { path: path.to_owned(), source: IoError::Json(e) })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LATKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("LATKIT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Other(Box::new(e)))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    configure_threads()?;
    let Some(command) = cli.command else {
        return Err(CliError::Usage("no command given; try --help or --list".into()));
    };
    match command {
        Command::Check { property, input, subset } => check::run(&property, &input, subset),
        Command::Enumerate { what, input, size, filter, budget } => {
            check::enumerate(what, input.as_deref(), size, filter, budget.nodes)
        }
        Command::Verify { name, params } => registry::lookup(&name)?.run(&params, registry::Mode::Single),
        Command::Sweep { name, params } => registry::lookup(&name)?.run(&params, registry::Mode::Sweep),
        Command::Search { name, max_size, budget } => check::search(&name, max_size, budget.nodes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if cli.list {
        output::print_list(format);
        return ExitCode::SUCCESS;
    }
    match run(cli) {
        Ok(report) => {
            output::print(&report, format);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
