//! `pairmatch`: β, λ and α of small graphs, the 5/4 characterization
//! checker, and verification campaigns.
//!
//! Exit codes: 0 pass, 1 theorem disagreement or failed check, 2 parse
//! error, 3 precondition violation, 4 inconclusive.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairmatch::characterization::Caps;
use pairmatch::harness::{CorpusKind, EdgePolicy};

#[derive(Parser, Debug)]
#[command(name = "pairmatch", version, about = "Pairs of disjoint matchings: exact parameters and the 5/4 characterization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, m, β, λ, α and β/α for each input graph.
    Analyze(Common),
    /// Compare β/α = 5/4 with the structural test on each input graph.
    Check(Common),
    /// Run a verification campaign over a graph6 stream or a generated corpus.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        checks: CheckArgs,
    },
    /// Write a generated corpus as graph6, with forest annotations in JSON/CSV.
    Gen {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Run the alternating-path lemma suite on each input graph.
    Lemmas(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input file, or "-" for standard input.
    #[arg(long, short, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = InputFormat::Graph6)]
    format: InputFormat,
    #[arg(long, default_value_t = Caps::default().m2_cap, value_parser = positive)]
    m2_cap: usize,
    #[arg(long, default_value_t = Caps::default().cycle_cap, value_parser = positive)]
    cycle_cap: usize,
    #[arg(long, default_value_t = Caps::default().forest_cap, value_parser = positive)]
    forest_cap: usize,
    /// Seed for generated corpora.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    output_format: OutputFormat,
    /// Worker threads; all cores when absent.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, short, action = clap::ArgAction::Count)]
    verbose: u8,
}

impl Common {
    fn caps(&self) -> Caps {
        Caps { m2_cap: self.m2_cap, cycle_cap: self.cycle_cap, forest_cap: self.forest_cap }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    SForest,
    SGraph,
    Random,
}

impl From<KindArg> for CorpusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::SForest => CorpusKind::SForest,
            KindArg::SGraph => CorpusKind::SGraph,
            KindArg::Random => CorpusKind::Random,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    None,
    DeltaOnly,
    RandomB,
    ViolateA,
    ViolateB,
    ViolateCAttempt,
}

impl From<PolicyArg> for EdgePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::None => EdgePolicy::None,
            PolicyArg::DeltaOnly => EdgePolicy::DeltaOnly,
            PolicyArg::RandomB => EdgePolicy::RandomB,
            PolicyArg::ViolateA => EdgePolicy::ViolateA,
            PolicyArg::ViolateB => EdgePolicy::ViolateB,
            PolicyArg::ViolateCAttempt => EdgePolicy::ViolateCAttempt,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct CorpusArgs {
    /// Corpus to generate. `verify` reads the input stream when absent.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Spanner count.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::None)]
    policy: PolicyArg,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Random corpora: largest vertex count.
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    /// Random corpora: largest edge count.
    #[arg(long, default_value_t = 16)]
    max_edges: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct CheckArgs {
    /// Check 4β ≤ 5α.
    #[arg(long)]
    ratio_bound: bool,
    /// Check α = β.
    #[arg(long)]
    alpha_equals_beta: bool,
    /// Compare the solver with the exhaustive oracle (graphs with ≤ 24 edges).
    #[arg(long)]
    oracle: bool,
    /// Compare the ratio with the structural test.
    #[arg(long)]
    theorem: bool,
    /// Run the lemma suite.
    #[arg(long)]
    lemmas: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(cli.command);
    ExitCode::from(code)
}
