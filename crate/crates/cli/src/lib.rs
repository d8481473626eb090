//! Command-line front end for `webdimer`: JSON input and output, and seeded
//! verification suites.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod report;
pub mod suite;

pub use report::{Check, Report};

#[derive(Parser, Debug)]
#[command(name = "webdimer", version, about = "Dimers, web measurements and SL_r web invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every randomized battery.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Boundary measurement of one subset, or of all subsets.
    Measure(MeasureArgs),
    /// Plücker vector as a JSON map, with the Plücker relations checked.
    Plucker(NetworkArgs),
    /// Apply a local move and optionally check invariance.
    Move(MoveArgs),
    /// r-fold web measurement.
    Webmeasure(WebArgs),
    /// Seeded verification batteries on one network.
    Verify(VerifyArgs),
    /// Skein relations for r-weblike graphs.
    Skein(SkeinArgs),
    /// Rank of the bold webs of a graph inside its invariant space.
    PositroidDim(PositroidArgs),
    /// Pairing matrix between the small web bases.
    Duality(DualityArgs),
    /// Bundled checks of the worked examples and the property batteries.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct NetworkArgs {
    /// Network JSON file.
    #[arg(long, conflicts_with = "example")]
    pub network: Option<PathBuf>,
    /// Built-in network: `square`, `square-moved`, `sl4` or `top-K-N`.
    #[arg(long)]
    pub example: Option<String>,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Gauge,
    Spider,
    Bivalent,
    Parallel,
    Leaf,
    Dipole,
}

#[derive(Args, Debug, Clone)]
pub struct MoveSpec {
    #[arg(long = "move", id = "move", value_enum)]
    pub kind: Option<MoveKind>,
    /// Four vertex ids around a square face.
    #[arg(long, value_delimiter = ',')]
    pub face: Option<Vec<String>>,
    #[arg(long)]
    pub vertex: Option<String>,
    /// Two vertex ids joined by parallel edges.
    #[arg(long, value_delimiter = ',')]
    pub vertices: Option<Vec<String>>,
    #[arg(long)]
    pub edge: Option<String>,
    /// Gauge factor, as `p/q`.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug)]
pub struct MoveArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    #[command(flatten)]
    pub spec: MoveSpec,
    /// Check that the Plücker vector scales by the move's factor.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct WebArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    #[arg(short = 'r', long = "r")]
    pub r: usize,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<usize>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Factorization,
    Welldefined,
    Coherence,
    Plucker,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub kind: VerifyKind,
    #[command(flatten)]
    pub network: NetworkArgs,
    #[arg(short = 'r', long = "r", default_value_t = 1)]
    pub r: usize,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<usize>>,
    /// Random weightings to test.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Taggings per weblike subgraph.
    #[arg(long, default_value_t = 2)]
    pub taggings: usize,
    #[command(flatten)]
    pub spec: MoveSpec,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Square,
    Bigon,
    Bivalent,
    Tags,
}

#[derive(Args, Debug)]
pub struct SkeinArgs {
    #[arg(long, value_enum)]
    pub relation: Relation,
    #[arg(short = 'r', long = "r")]
    pub r: usize,
    /// Every admissible parameter choice.
    #[arg(long, conflicts_with = "params")]
    pub all: bool,
    /// `j,l,v,s` for the square move, `a,b` for bigons, `a` for bivalent vertices.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
pub struct PositroidArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    #[arg(short = 'r', long = "r")]
    pub r: usize,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<usize>>,
    /// Fail unless the rank equals this.
    #[arg(long)]
    pub expect: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DualityArgs {
    #[arg(long, default_value_t = 6)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Only the worked examples.
    #[arg(long)]
    pub paper_examples: bool,
    /// Only the seeded property batteries.
    #[arg(long, conflicts_with = "paper_examples")]
    pub properties: bool,
}

/// Parses `argv`, runs the command and returns the exit code: 0 on success,
/// 1 when a check fails, 2 on bad input.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.to_text());
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Measure(a) => commands::measure(a)?,
        Command::Plucker(a) => commands::plucker(a)?,
        Command::Move(a) => commands::apply(a)?,
        Command::Webmeasure(a) => commands::webmeasure(a)?,
        Command::Verify(a) => commands::verify(a, cli.seed)?,
        Command::Skein(a) => commands::skein(a)?,
        Command::PositroidDim(a) => commands::positroid_dim(a)?,
        Command::Duality(a) => commands::duality(a)?,
        Command::Suite(a) => suite::run(a, cli.seed)?,
    };
    report.param("seed", cli.seed);
    report.wall_time = start.elapsed();
    Ok(report)
}
