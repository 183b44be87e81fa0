//! Command-line pipeline: `align` → `rebuild` → `stats` / `partition`, with
//! every stage reading and writing plain files under the output directory.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod tsv;

pub use config::PipelineConfig;

/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a stage has nothing to produce.
pub const EXIT_EMPTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pivot-corpus", version, about = "Build pivot-aligned parallel corpora from subtitles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Synchronize both languages through the pivot, one triple file per talk.
    Align,
    /// Rebuild sentences from the aligned triples with each strategy.
    Rebuild,
    /// Sentence length statistics of the rebuilt (train) data.
    Stats,
    /// Split rebuilt talks into train/dev/test bitexts.
    Partition,
    /// Run align, rebuild, stats and partition.
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One XML collection file per input.
    Xml,
    /// A directory of `<talk_id>.srt` files per input.
    Srt,
    /// A directory of `<talk_id>.vtt` files per input.
    Vtt,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Pivot language code.
    #[arg(long, global = true, default_value = "en")]
    pub pivot_lang: String,
    /// The two synchronized languages, e.g. `ar,he`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub langs: Vec<String>,
    /// Rebuild strategy: `none`, `strong-punct:<lang>` or `pivot`. Repeatable;
    /// all three (strong punctuation of the second language) by default.
    #[arg(long = "strategy", global = true)]
    pub strategies: Vec<String>,
    /// TOML file with `strong` and `closers` character lists.
    #[arg(long, global = true)]
    pub punct: Option<PathBuf>,
    /// Split file with `[dev:<name>]`, `[test:<name>]` and `[exclude]` sections.
    #[arg(long, global = true)]
    pub split: Option<PathBuf>,
    /// Leave sentences touching a pivot divergence out of exported bitexts.
    #[arg(long, global = true)]
    pub drop_divergent: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Xml)]
    pub format: Format,
    /// Input as `LANG=PATH`. The pivot stream paired with one language can be
    /// given separately as `PIVOT:LANG=PATH`.
    #[arg(long = "input", global = true)]
    pub inputs: Vec<String>,
    /// Weight of token overlap in the pivot self-alignment.
    #[arg(long, global = true)]
    pub lexical_weight: Option<f64>,
}

/// A failed run: message plus exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_USAGE, error: error.into() }
    }

    pub fn empty(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_EMPTY, error: error.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.code
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome<()> {
    let config = PipelineConfig::from_args(&cli.global)?;
    match cli.command {
        Command::Align => commands::align(&config).map(drop),
        Command::Rebuild => commands::rebuild(&config).map(drop),
        Command::Stats => commands::stats(&config).map(drop),
        Command::Partition => commands::partition(&config).map(drop),
        Command::Pipeline => commands::pipeline(&config),
    }
}
