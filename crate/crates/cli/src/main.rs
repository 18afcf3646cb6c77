//! `terminal-fano`: terminality checks, dataset generation, enumeration,
//! landscape emission, and benchmarking for rank-two toric weight matrices.
//!
//! Exit codes: 0 success, 1 usage, input, or I/O failure, 2 oracle
//! disagreement, 3 classifier unavailable or misbehaving.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_CLASSIFIER: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "terminal-fano", version, about = "Terminal Fano toric varieties of Picard rank two")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide terminality for each weight matrix read from a file or stdin.
    Check(CheckArgs),
    /// Balanced labeled dataset of random standard-form matrices.
    Generate(GenerateArgs),
    /// Every class with standard-form entries in 0..=bound, labeled.
    Enumerate(EnumerateArgs),
    /// Landscape coordinates (A, B) for sampled candidates judged terminal.
    Landscape(LandscapeArgs),
    /// Latency of the direct criterion against the fan oracle.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Prop1,
    Fan,
    Polytope,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Exact,
    Classifier,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output path; `-` or absent for stdout, `.gz` suffix for gzip.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Sampling {
    /// Number of columns N.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Largest matrix entry.
    #[arg(long, default_value_t = 7)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker shards and threads; defaults to available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Input path; `-` or absent for stdin, `.gz` suffix for gzip.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Prop1)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Records to emit; must be even.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[command(flatten)]
    pub sampling: Sampling,
    /// Cross-check every k-th label with the fan oracle; 0 disables.
    #[arg(long, default_value_t = 100)]
    pub audit_every: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub bound: i64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Emit terminal classes only.
    #[arg(long)]
    pub terminal_only: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LandscapeArgs {
    /// Valid candidates to draw.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[command(flatten)]
    pub sampling: Sampling,
    #[arg(long, value_enum, default_value_t = FilterArg::Exact)]
    pub filter: FilterArg,
    /// Keep candidates whose probability exceeds this.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// Classifier command; falls back to TERMINAL_FANO_CLASSIFIER.
    #[arg(long)]
    pub classifier: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Matrices to sample; at least 1000.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the report's JSON schema and exit.
    #[arg(long)]
    pub schema: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A failed command: exit code and message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<terminal_fano::Error> for Failure {
    fn from(e: terminal_fano::Error) -> Self {
        use terminal_fano::Error as E;
        let code = match e {
            E::OracleDisagreement(_) => EXIT_DISAGREEMENT,
            E::ClassifierUnavailable(_) | E::ClassifierProtocol(_) => EXIT_CLASSIFIER,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAILURE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Check(a) => commands::check(&a),
        Command::Generate(a) => commands::generate(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Landscape(a) => commands::landscape(&a),
        Command::Bench(a) => commands::bench(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
