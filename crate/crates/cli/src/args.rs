use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "permlab", version, about = "Random permutation sampling, verification and rendering")]
pub struct Cli {
    /// Worker threads for repetitions; results are merged in index order.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw permutations or permutons from a family.
    Sample(SampleArgs),
    /// Run a verification suite; exits 1 on any failed check.
    Verify(VerifyArgs),
    /// Write an SVG picture of a permutation, a walk or a coalescent fan.
    Render(RenderArgs),
    /// Tandem walks, bipolar orientations and the skew simulator.
    #[command(subcommand)]
    Baxter(BaxterCommand),
    /// Generating-tree counting and sampling.
    #[command(subcommand)]
    Gentree(GentreeCommand),
    /// Export the cycle polytope vertices of `P_k` as CSV.
    Polytope(PolytopeArgs),
    /// Consecutive-pattern statistics as CSV.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Av231,
    Av321,
    Separable,
    Square,
    Baxter,
    Gentree1423,
    SkewPermuton,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Av231 => "av231",
            Family::Av321 => "av321",
            Family::Separable => "separable",
            Family::Square => "square",
            Family::Baxter => "baxter",
            Family::Gentree1423 => "gentree1423",
            Family::SkewPermuton => "skew-permuton",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SquareAcceptance {
    Literal,
    Operational,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Exponent of `δ_n = ⌈n^e⌉` for square permutations.
    #[arg(long = "delta-exp", default_value_t = 0.9)]
    pub delta_exp: f64,
    #[arg(long, value_enum, default_value_t = SquareAcceptance::Operational)]
    pub acceptance: SquareAcceptance,
    /// Rejection cap.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Succession rule file for `gentree1423`.
    #[arg(long)]
    pub rule: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Counts,
    Bijections,
    Diagram,
    Square,
    Polytope,
    Local,
    Concentration,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "n-max", default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long = "delta-exp", default_value_t = 0.9)]
    pub delta_exp: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Perm,
    Walk,
    Coalescent,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, value_enum)]
    pub kind: RenderKind,
    /// Input file; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BaxterCommand {
    /// Uniform tandem excursion and its Baxter permutation.
    Sample(BaxterSampleArgs),
    /// Check the commutative diagram at size `n`.
    Check(BaxterCheckArgs),
    /// Discretized skew permuton.
    Skew(BaxterSkewArgs),
}

#[derive(Args, Debug)]
pub struct BaxterSampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Use the plain rejection sampler with this cap instead of the exact one.
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BaxterCheckArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled orientations when `n > 7`.
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
}

#[derive(Args, Debug)]
pub struct BaxterSkewArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Rejection cap for the Gaussian excursion.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Output resolution dividing `n`.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GentreeCommand {
    /// Level counts `|K_n|` for `n = 1..=n-max`.
    Count {
        #[arg(long)]
        rule: Option<PathBuf>,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
    },
    /// Uniform label path, and its permutation for the built-in rule.
    Sample {
        #[arg(long)]
        rule: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct PolytopeArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub reps: usize,
    /// Comma-separated patterns, e.g. `12,123,132`.
    #[arg(long, value_delimiter = ',')]
    pub patterns: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}
