use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tandem",
    version,
    about = "Large tandem walks, 3-ballot walks and their critical exponents"
)]
pub struct Cli {
    /// Worker threads for the parallel sweeps (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Abort when a sweep is estimated to visit more cells than this
    #[arg(long, global = true, value_name = "CELLS", default_value_t = tandem_walks::enumerate::DEFAULT_CELL_LIMIT)]
    pub cell_limit: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count excursions, all walks, or walks to a fixed endpoint
    Enumerate(EnumerateArgs),
    /// Critical point, growth constant and critical exponent of a model
    Exponent(ExponentArgs),
    /// Exponents and verdicts for the fifteen reference ballot models
    Table1(Table1Args),
    /// Models with rational exponent, grouped by gamma^2
    Table2(Table2Args),
    /// Models with a given exact gamma^2
    Classify(ClassifyArgs),
    /// Estimate alpha and mu from enumerated excursions
    Fit(FitArgs),
    /// Guess a linear recurrence with polynomial coefficients
    Guess(GuessArgs),
    /// Check the ballot/tandem bijection on one model
    BijectionCheck(BijectionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Excursions,
    Total,
    Endpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Logfloat,
}

impl From<ModeArg> for tandem_walks::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => tandem_walks::Mode::Exact,
            ModeArg::Logfloat => tandem_walks::Mode::LogFloat,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Tandem model `A,B,C` or ballot model `ballot:a,b,c`
    #[arg(long, value_name = "MODEL")]
    pub model: String,
    /// Which count to report
    #[arg(long, value_enum, default_value_t = What::Excursions)]
    pub what: What,
    /// Largest walk length
    #[arg(long, value_name = "N")]
    pub n_max: usize,
    /// Exact big integers or natural logarithms
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Endpoint `i,j` for `--what endpoint`
    #[arg(long, value_name = "I,J")]
    pub target: Option<String>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    /// Tandem model `A,B,C` or ballot model `ballot:a,b,c`
    #[arg(long, value_name = "MODEL")]
    pub model: String,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    /// Largest entry of A, B and C searched
    #[arg(long, value_name = "K", default_value_t = 50)]
    pub bound: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Target gamma^2 as `num/den`, strictly between 0 and 1
    #[arg(long, value_name = "NUM/DEN")]
    pub gamma_sq: String,
    /// Largest entry of A, B and C searched
    #[arg(long, value_name = "K")]
    pub bound: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Tandem model `A,B,C` or ballot model `ballot:a,b,c`
    #[arg(long, value_name = "MODEL")]
    pub model: String,
    /// Largest subsequence index; excursions are counted up to length p*M
    #[arg(long, value_name = "M")]
    pub m_max: usize,
    /// Deepest Richardson level (0 to 3)
    #[arg(long, value_name = "K", default_value_t = 3, value_parser = clap::value_parser!(u8).range(0..=3))]
    pub richardson: u8,
    /// Counting mode for the excursions
    #[arg(long, value_enum, default_value_t = ModeArg::Logfloat)]
    pub mode: ModeArg,
    /// Also draw the convergence plot as SVG
    #[arg(long, value_name = "PATH")]
    pub plot: Option<PathBuf>,
    /// Write the JSON summary to this file
    #[arg(long, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    /// Emit the JSON summary instead of the `m,alpha_hat` CSV
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GuessArgs {
    /// File with one integer or `num/den` term per line
    #[arg(long, value_name = "PATH")]
    pub series: PathBuf,
    /// Largest recurrence order
    #[arg(long, value_name = "R")]
    pub max_order: usize,
    /// Largest coefficient degree
    #[arg(long, value_name = "D")]
    pub max_degree: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    /// Ballot model `a,b,c`
    #[arg(long, value_name = "A,B,C")]
    pub ballot: String,
    /// Number of rounds n; walks end at (an, bn, cn)
    #[arg(long, value_name = "N")]
    pub rounds: u64,
    /// Largest number of walks generated by brute force
    #[arg(long, value_name = "WALKS", default_value_t = 200_000)]
    pub cap: usize,
    /// Ballot walk over X, Y, Z to map to a tandem walk
    #[arg(long, value_name = "LETTERS")]
    pub walk: Option<String>,
    /// Tandem walk over R, D, U to map back to a ballot walk
    #[arg(long, value_name = "LETTERS")]
    pub tandem_walk: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}
