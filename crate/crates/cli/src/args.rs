use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use monkeysim::analytics::{JULIAN_YEAR_SECONDS, UNIVERSE_AGE_YEARS};
use monkeysim::model::HAMLET_PHRASE;
use monkeysim::simulator::{DEFAULT_ATTEMPT_BUDGET, DEFAULT_ITERATIONS, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "monkeysim", version, about = "Random typing trials and their extrapolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run prefix-matching trials and write the measurement table.
    Simulate(SimulateArgs),
    /// Estimate growth factors and project attempts and time to a target.
    Project(ProjectArgs),
    /// Print the success probability and expected attempts for A^n.
    Prob(ProbArgs),
    /// Count the characters of a corpus under several normalizations.
    Census(CensusArgs),
    /// Run the whole pipeline and write every artifact.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SimulationFlags {
    /// Preset (`letters+space`, `letters`) or an explicit list of symbols.
    #[arg(long, default_value = "letters+space")]
    pub alphabet: String,
    /// Add target characters missing from the alphabet instead of failing.
    #[arg(long)]
    pub extend_alphabet: bool,
    /// Longest prefix to simulate [default: 5, capped at the target length].
    #[arg(long)]
    pub max_prefix: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    pub iterations: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Maximum candidates per trial.
    #[arg(long, default_value_t = DEFAULT_ATTEMPT_BUDGET)]
    pub budget: u64,
    /// Worker threads [default: available parallelism].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write zero for every elapsed time so outputs depend only on the seed.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TimeConstants {
    /// Seconds per year used for the years figure.
    #[arg(long, default_value_t = JULIAN_YEAR_SECONDS)]
    pub year_seconds: f64,
    /// Age of the universe in years.
    #[arg(long, default_value_t = UNIVERSE_AGE_YEARS)]
    pub universe_age_years: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "To be")]
    pub target: String,
    #[command(flatten)]
    pub simulation: SimulationFlags,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Measurement CSV written by `simulate`; its average rows are the base.
    #[arg(long, conflicts_with_all = ["attempts", "times"])]
    pub measurements: Option<PathBuf>,
    /// Mean attempts per prefix length, comma separated.
    #[arg(long, value_delimiter = ',', requires = "times")]
    pub attempts: Vec<f64>,
    /// Mean seconds per prefix length, comma separated.
    #[arg(long, value_delimiter = ',', requires = "attempts")]
    pub times: Vec<f64>,
    #[arg(long, default_value = HAMLET_PHRASE)]
    pub target: String,
    /// Three significant figures with comma decimal marks.
    #[arg(long)]
    pub paper_style: bool,
    #[command(flatten)]
    pub constants: TimeConstants,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    #[arg(long)]
    pub alphabet_size: u64,
    #[arg(long)]
    pub length: u64,
    /// Significant digits to print.
    #[arg(long, default_value_t = 4)]
    pub digits: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CensusSource {
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Use the bundled First Folio soliloquy.
    #[arg(long)]
    pub bundled_hamlet: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub source: CensusSource,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Use the bundled published averages instead of a fresh simulation.
    #[arg(long)]
    pub use_paper_data: bool,
    /// Phrase to project to; its leading characters are simulated.
    #[arg(long, default_value = HAMLET_PHRASE)]
    pub target: String,
    #[command(flatten)]
    pub simulation: SimulationFlags,
    #[arg(long)]
    pub paper_style: bool,
    #[command(flatten)]
    pub constants: TimeConstants,
    /// Seconds spent measuring typing throughput per prefix length.
    #[arg(long, default_value_t = 0.25)]
    pub throughput_seconds: f64,
    /// Corpus for the census and the long-text probability [default: bundled soliloquy].
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}
