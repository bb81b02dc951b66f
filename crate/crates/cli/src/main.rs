use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod target;

/// Build and verify k-uniform qudit graph states from MDS codes.
#[derive(Parser, Debug)]
#[command(name = "kuni", version)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, env = "KUNI_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write code, adjacency, DOT and optionally state artifacts
    Build(BuildArgs),
    /// Compute the uniformity of a graph state by one or more methods
    Verify(VerifyArgs),
    /// Per-level report for a hierarchy of nested code blocks
    Hierarchy(HierarchyArgs),
    /// Compare two states by Schmidt ranks and support
    Slocc(SloccArgs),
    /// Print a single artifact
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TargetArgs {
    /// Field prime
    #[arg(long)]
    pub p: u64,
    /// Code length
    #[arg(long, conflicts_with = "levels", requires = "k")]
    pub n: Option<usize>,
    /// Code dimension
    #[arg(long, conflicts_with = "levels", requires = "n")]
    pub k: Option<usize>,
    /// Hierarchy levels, e.g. `6:2,2:1`
    #[arg(long)]
    pub levels: Option<String>,
    /// Replace the zero lower-right block with a random symmetric
    /// zero-diagonal matrix (single-level targets only)
    #[arg(long)]
    pub random_b: bool,
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Structural,
    Stabilizer,
    Dense,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Dot,
    Code,
    State,
    SparseState,
}

#[derive(Args, Debug, Serialize)]
pub struct BuildArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetArgs,
    /// Also write the dense state vector
    #[arg(long)]
    pub state: bool,
    /// Output directory; prints one JSON bundle to stdout when absent
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetArgs,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    /// Number of random B instances, drawn in sequence from one seed
    #[arg(long, default_value_t = 1, requires = "random_b")]
    pub trials: usize,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct HierarchyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub levels: String,
    #[arg(long, value_enum, default_value_t = Method::Stabilizer)]
    pub method: Method,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SloccArgs {
    #[arg(long)]
    pub p: u64,
    /// Two targets, e.g. `6:2 vs 6:2+2:1`
    #[arg(long)]
    pub pair: String,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ExportArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("kuni: cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Build(a) => commands::build(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Hierarchy(a) => commands::hierarchy(&a),
        Command::Slocc(a) => commands::slocc(&a),
        Command::Export(a) => commands::export(&a),
    };
    match result {
        Ok(commands::Outcome::Positive) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kuni: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
