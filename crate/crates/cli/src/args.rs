use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Bounded-difference (min,+) products, scored parsing and their
/// applications. Every flag can also be set through a `BDMP_` variable.
#[derive(Debug, Clone, Parser)]
#[command(name = "bdmp", version)]
pub struct Cli {
    /// Seed for all random choices. Drawn from the OS and printed if absent.
    #[arg(long, global = true, env = "BDMP_SEED")]
    pub seed: Option<u64>,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "BDMP_THREADS")]
    pub threads: Option<usize>,

    /// Write a JSON run report to this file.
    #[arg(long, global = true, env = "BDMP_REPORT")]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// Fills in a missing seed from the OS and returns it.
    pub fn draw_seed(&mut self) -> Option<u64> {
        if self.seed.is_some() {
            return None;
        }
        let s = rand::random();
        self.seed = Some(s);
        Some(s)
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Multiply two matrix files.
    Multiply(MultiplyArgs),
    /// Score strings against a grammar.
    Parse(ParseArgs),
    /// Language edit distance to a grammar.
    Led(LedArgs),
    /// RNA folding: distance and maximum pairs.
    Rna(RnaArgs),
    /// Optimal stack generation.
    Osg(OsgArgs),
    /// (min,+)-convolution of two sequence files.
    Convolve(ConvolveArgs),
    /// Time naive against BD products over a parameter grid.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MulMode {
    Naive,
    Small,
    Bd,
    BdRows,
    BdCols,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Valiant,
    Cyk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Bd,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    A,
    B,
}

/// Block-product tuning shared by several commands.
#[derive(Debug, Clone, Args)]
pub struct BdArgs {
    /// Block width; size-dependent default.
    #[arg(long, env = "BDMP_DELTA")]
    pub delta: Option<usize>,

    /// Perturbation rounds; size-dependent default.
    #[arg(long, env = "BDMP_RHO")]
    pub rho: Option<usize>,

    /// Choose pivots by walk counting instead of at random.
    #[arg(long, env = "BDMP_DETERMINISTIC")]
    pub deterministic: bool,

    /// Repair blocks wider than this recursively.
    #[arg(long, default_value_t = 64, env = "BDMP_RECURSION_CUTOFF")]
    pub recursion_cutoff: usize,

    /// Drop inner indices that cannot matter before each round's product.
    #[arg(long, env = "BDMP_IMPROVED_PHASE2")]
    pub improved_phase2: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MultiplyArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = MulMode::Bd, env = "BDMP_MODE")]
    pub mode: MulMode,
    /// BD width (bd mode); measured from the inputs if absent.
    #[arg(long, env = "BDMP_W")]
    pub w: Option<i64>,
    /// Entry bound (small mode) or group variation bound (bd-rows, bd-cols);
    /// measured if absent.
    #[arg(long, env = "BDMP_BOUND")]
    pub bound: Option<i64>,
    /// Group size for bd-rows and bd-cols; defaults to the block width.
    #[arg(long, env = "BDMP_GROUP_SIZE")]
    pub group_size: Option<usize>,
    /// Recompute with the naive product and fail on any difference.
    #[arg(long, env = "BDMP_VERIFY")]
    pub verify: bool,
    #[command(flatten)]
    pub bd: BdArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ParseArgs {
    #[arg(long)]
    pub grammar: PathBuf,
    /// One string per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = EngineArg::Valiant, env = "BDMP_ENGINE")]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = KernelArg::Bd, env = "BDMP_KERNEL")]
    pub kernel: KernelArg,
    /// BD width handed to the parser.
    #[arg(long, default_value_t = 1, env = "BDMP_W")]
    pub w: i64,
    /// Check every score against direct span scoring of the input grammar.
    #[arg(long, env = "BDMP_ORACLE")]
    pub oracle: bool,
    #[command(flatten)]
    pub bd: BdArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LedArgs {
    #[arg(long)]
    pub grammar: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    /// Insertions and deletions only.
    #[arg(long, env = "BDMP_INDEL")]
    pub indel: bool,
    #[arg(long, value_enum, default_value_t = EngineArg::Valiant, env = "BDMP_ENGINE")]
    pub engine: EngineArg,
    /// Cross-check against the CYK engine and, for short strings, an
    /// exhaustive edit search.
    #[arg(long, env = "BDMP_ORACLE")]
    pub oracle: bool,
    /// Edit budget of the exhaustive search.
    #[arg(long, default_value_t = 4, env = "BDMP_MAX_EDITS")]
    pub max_edits: u64,
}

#[derive(Debug, Clone, Args)]
pub struct RnaArgs {
    /// Header line with the bases, then one sequence per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = EngineArg::Valiant, env = "BDMP_ENGINE")]
    pub engine: EngineArg,
    /// Cross-check against the interval DP.
    #[arg(long, env = "BDMP_ORACLE")]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OsgArgs {
    /// Header line with the alphabet, then one string per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = EngineArg::Valiant, env = "BDMP_ENGINE")]
    pub engine: EngineArg,
    /// Cross-check strings of length at most 8 by state-space search.
    #[arg(long, env = "BDMP_ORACLE")]
    pub oracle: bool,
    /// Stack depth limit of the search; `|σ| + 1` by default.
    #[arg(long, env = "BDMP_DEPTH_CAP")]
    pub depth_cap: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvolveArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Which sequence has bounded differences.
    #[arg(long, value_enum, default_value_t = SideArg::A, env = "BDMP_BD_SIDE")]
    pub bd_side: SideArg,
    /// Width of the BD sequence; measured if absent.
    #[arg(long, env = "BDMP_W")]
    pub w: Option<i64>,
    #[arg(long, env = "BDMP_VERIFY")]
    pub verify: bool,
    #[command(flatten)]
    pub bd: BdArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "128,256,512", env = "BDMP_SIZES")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1", env = "BDMP_WIDTHS")]
    pub widths: Vec<i64>,
    /// Block widths; `auto` and `n` are accepted.
    #[arg(long, value_delimiter = ',', default_value = "auto", env = "BDMP_DELTAS")]
    pub deltas: Vec<String>,
    /// Round budgets; `auto` is accepted.
    #[arg(long, value_delimiter = ',', default_value = "auto", env = "BDMP_RHOS")]
    pub rhos: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "randomized,deterministic", env = "BDMP_MODES")]
    pub modes: Vec<String>,
    /// Verify against the naive product up to this size.
    #[arg(long, default_value_t = 256, env = "BDMP_VERIFY_MAX")]
    pub verify_max: usize,
    /// JSON lines output; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
