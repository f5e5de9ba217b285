use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "krun",
    version,
    about = "Exact distributions of (k1,k2)-run patterns in Bernoulli trials"
)]
pub struct Cli {
    /// Emit a single JSON object instead of CSV or text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Flat key=value file supplying defaults for any flag; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count pattern occurrences in a 0/1 string, a file, or stdin ("-").
    Scan(ScanArgs),
    /// Distribution of the number of occurrences in n trials.
    Pmf(DistArgs),
    /// Non-central moments of the count (--n) or of the r-th waiting time (--r).
    Moments(DistArgs),
    /// Distribution of the trial at which the r-th occurrence completes.
    Waiting(DistArgs),
    /// Reproduce a published table (1: counts at n = 60, 2: first waiting time).
    Table(TableArgs),
    /// Cross-check every backend over a grid of patterns.
    Check(CheckArgs),
    /// Fibonacci word and its pattern counts.
    Fib(FibArgs),
    /// Dump the Markov chain embedding as CSV.
    Chain(ChainArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    T1,
    T2,
    T3,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpecArgs {
    /// Pattern type.
    #[arg(long = "type", value_enum)]
    pub kind: Option<Kind>,
    /// Minimum zeros-run length.
    #[arg(long)]
    pub l1: Option<usize>,
    /// Maximum zeros-run length (t1, t3).
    #[arg(long)]
    pub k1: Option<usize>,
    /// Minimum ones-run length.
    #[arg(long)]
    pub l2: Option<usize>,
    /// Maximum ones-run length (t2, t3).
    #[arg(long)]
    pub k2: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Recursive,
    Explicit,
    Series,
    Chain,
    Oracle,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Recursive => "recursive",
            Backend::Explicit => "explicit",
            Backend::Series => "series",
            Backend::Chain => "chain",
            Backend::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Success probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Number of trials.
    #[arg(long)]
    pub n: Option<usize>,
    /// Occurrence index for waiting times.
    #[arg(long)]
    pub r: Option<usize>,
    /// Largest waiting time to tabulate; default is automatic truncation.
    #[arg(long)]
    pub mmax: Option<usize>,
    /// Highest moment order.
    #[arg(long)]
    pub jmax: Option<usize>,
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanBackend {
    /// Run decomposition.
    Runs,
    /// Literal window indicators.
    Indicator,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Bit string, path to a file holding one, or "-" for stdin.
    pub input: String,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Also report the trials completing the first r occurrences.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_enum)]
    pub backend: Option<ScanBackend>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Which table.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Largest number of trials.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest run lower bound for both l1 and l2.
    #[arg(long, default_value_t = 3)]
    pub lmax: usize,
    /// Largest gap between an upper bound and its lower bound.
    #[arg(long, default_value_t = 2)]
    pub offset: usize,
    /// Success probabilities, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.3, 0.5, 0.7, 0.9])]
    pub p: Vec<f64>,
    /// Largest occurrence index for waiting times.
    #[arg(long, default_value_t = 2)]
    pub rmax: usize,
    /// Waiting-time horizon for the recursive vs series comparison.
    #[arg(long, default_value_t = 80)]
    pub mmax: usize,
    /// Leave out brute-force enumeration.
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FibArgs {
    /// Word index (C_0 = 0, C_1 = 01).
    #[arg(long)]
    pub n: Option<usize>,
    /// Include the word itself.
    #[arg(long)]
    pub word: bool,
    /// Pattern to count; defaults to T3(1,1,1,2) and T3(1,2,1,1).
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Also report the model mean count for a sequence of the same length.
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ChainArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub p: Option<f64>,
}
