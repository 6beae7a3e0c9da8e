mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact determinantal ideals, matroids, secants and rigidity checks.
#[derive(Debug, Parser)]
#[command(name = "detci", version, args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Cas,
}

/// Options shared by every subcommand. Every output echoes the seed and
/// budgets.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Master seed; all randomness is derived from it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of sampling trials.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Maximum number of S-pairs reduced in a Gröbner computation.
    #[arg(long, default_value_t = 5000)]
    pub max_pairs: usize,
    /// Maximum S-pair degree in a Gröbner computation.
    #[arg(long, default_value_t = 24)]
    pub max_degree: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Output dialect for ideals.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the output to `DIR/<command>.<ext>`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// `key = value` file of option defaults; flags given on the command
    /// line take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the k × l index grid, and the grid hypergraph when s, t are given.
    Grid {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Write the generators of a grid, hypergraph or CI ideal.
    Ideal {
        /// Grid hypergraph ideal from --s --t --k --l --d.
        #[arg(long)]
        grid: bool,
        /// CI statement file.
        #[arg(long, value_name = "FILE")]
        ci: Option<PathBuf>,
        /// Hypergraph file (vertex count, then one edge per line); needs --d.
        #[arg(long, value_name = "FILE")]
        hypergraph: Option<PathBuf>,
        /// Rename CI coordinates p_{x,y1,y2} to grid coordinates x_{x,(y2-1)k+y1}.
        #[arg(long)]
        as_grid: bool,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Rank, circuits and arrangement signature of a matroid.
    Matroid {
        /// Matrix file (`rows cols` header, then rows).
        #[arg(long, value_name = "FILE")]
        matrix: Option<PathBuf>,
        /// Polynomial parametrization file; prints its algebraic matroid.
        #[arg(long, value_name = "FILE")]
        param: Option<PathBuf>,
        /// Realize the grid matroid of --s --t --k --l --d.
        #[arg(long)]
        grid: bool,
        /// A sampled point configuration: `concurrent-lines` or `loop`.
        #[arg(long)]
        fixture: Option<String>,
        /// Rank-one m × n matrices, as `M,N`.
        #[arg(long, value_name = "M,N")]
        segre: Option<String>,
        /// Rank-r m × n factorizations, as `M,N,R`.
        #[arg(long, value_name = "M,N,R")]
        product: Option<String>,
        /// The three arrangements of four lines and their signatures.
        #[arg(long)]
        arrangements: bool,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named verification and report pass, fail or inconclusive.
    Verify {
        /// example31, example32, intersection-axiom, theorem32, rigidity or terracini.
        name: String,
        /// Case list entry: `d,n` for rigidity or `m,n,k` for terracini.
        #[arg(long = "case", value_name = "CASE")]
        cases: Vec<String>,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Affine-cone dimension of a secant variety by stacked tangent spaces.
    Secant {
        /// Rank-one m × n matrices.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Polynomial parametrization file instead of rank-one matrices.
        #[arg(long, value_name = "FILE")]
        param: Option<PathBuf>,
        /// Number of points.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Report every k from 1 to --k.
        #[arg(long)]
        upto: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Rigidity-matrix rank of K_n in R^d, or of a framework file.
    Rigidity {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Framework file (`n d` header, coordinates, then edges).
        #[arg(long, value_name = "FILE")]
        framework: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Grid { common, .. }
            | Command::Ideal { common, .. }
            | Command::Matroid { common, .. }
            | Command::Verify { common, .. }
            | Command::Secant { common, .. }
            | Command::Rigidity { common, .. } => common,
        }
    }
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let args = match config::expand_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    match commands::run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
