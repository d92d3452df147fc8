use clap::{Args, Parser, Subcommand};

/// Quantitative bipolar argumentation: evaluate graphs, compute set
/// contributions, check contribution principles and replay the worked
/// examples.
///
/// GRAPH is a graph JSON file or the id of a bundled fixture (`qbag fixture --list`).
/// Exit codes: 0 ok, 1 usage/IO, 2 invalid graph, 3 semantics error,
/// 4 bad contribution request, 5 budget exceeded, 6 unexpected violation.
#[derive(Debug, Parser)]
#[command(name = "qbag", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate final strengths.
    Eval(EvalArgs),
    /// Contribution of a set of arguments to a topic.
    Contrib(ContribArgs),
    /// Check contribution principles on a graph or a random corpus.
    Principles(PrinciplesArgs),
    /// Contribution signs while two initial strengths sweep [0,1]².
    Signmap(SignmapArgs),
    /// Text layer → aspects → decision, with a contribution report.
    Pipeline(PipelineArgs),
    /// Replay the claims bound to bundled fixtures and the verdict matrix.
    Reproduce(ReproduceArgs),
    /// Print a bundled fixture as graph JSON.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub graph: String,
    /// Preset (QE, DFQuAD, SD-DFQuAD, EB, EBT) or custom semantics JSON file.
    #[arg(long, short, default_value = "QE")]
    pub semantics: String,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ContribArgs {
    pub graph: String,
    #[arg(long, short, default_value = "QE")]
    pub semantics: String,
    /// removal | intrinsic | shapley | gradient-max | gradient-min | gradient-maxabs
    #[arg(long, short)]
    pub function: String,
    /// Defaults to the fixture's topic.
    #[arg(long, short)]
    pub topic: Option<String>,
    /// Comma-separated contributor ids.
    #[arg(long)]
    pub set: String,
    /// Players for partition Shapley, e.g. "x,y|z|w"; must contain --set as a block.
    #[arg(long)]
    pub partition: Option<String>,
    /// Estimate Shapley values from this many sampled permutations when over budget.
    #[arg(long, value_name = "SAMPLES")]
    pub monte_carlo: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PrinciplesArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub graph: Option<String>,
    /// Random corpus instead of a graph: "seed=7,n=5[,graphs=200]" (n = largest graph).
    #[arg(long)]
    pub random: Option<String>,
    #[arg(long, short)]
    pub function: String,
    #[arg(long, short, default_value = "QE")]
    pub semantics: String,
    /// Principle name, or `all`.
    #[arg(long, short, default_value = "all")]
    pub principle: String,
    /// Defaults to the fixture's topic, or every argument of a graph file.
    #[arg(long, short)]
    pub topic: Option<String>,
    /// Exit 6 if any principle is violated.
    #[arg(long, conflicts_with = "expect_violated")]
    pub expect_satisfied: bool,
    /// Exit 6 unless some principle is violated.
    #[arg(long)]
    pub expect_violated: bool,
    /// Seed for sampled subsets beyond the enumeration bounds.
    #[arg(long, default_value_t = 0)]
    pub sample_seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SignmapArgs {
    pub graph: String,
    #[arg(long, short, default_value = "QE")]
    pub semantics: String,
    #[arg(long, short, default_value = "removal")]
    pub function: String,
    #[arg(long, short)]
    pub topic: Option<String>,
    /// The two swept arguments, "d,f".
    #[arg(long)]
    pub sweep: String,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Contributor sets separated by `|`, members by `,`: "d|f|d,f".
    #[arg(long)]
    pub sets: String,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Text-layer graph (text arguments plus aspect arguments).
    pub graph: String,
    /// `{"aspects": [...], "decision_tau": 0.5, "decision": "D", "groups": [[...]]}`
    #[arg(long, short)]
    pub manifest: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Fixture ids, or `matrix` for the verdict matrix.
    #[arg(required_unless_present = "all")]
    pub ids: Vec<String>,
    /// Every claim plus the matrix.
    #[arg(long)]
    pub all: bool,
    /// Random graphs added to the matrix corpus.
    #[arg(long, default_value_t = 200)]
    pub graphs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(required_unless_present = "list")]
    pub id: Option<String>,
    #[arg(long)]
    pub list: bool,
}
