//! Command-line front-end: argument parsing, input ingestion, report
//! formatting and the benchmark mode. `main` only forwards to [`run`].

pub mod bench;
pub mod ingest;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpm_core::{solve, Algorithm, SolverConfig};

pub use ingest::{ingest, IngestError, Source};
pub use report::{Format, Parameters};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;

/// Report every position of the text where some rotation of the pattern
/// occurs with at most k mismatches. Positions are 0-based.
#[derive(Debug, Parser)]
#[command(name = "cpm", version, args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time the solvers on synthetic inputs and print CSV.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Pattern given literally.
    #[arg(long, conflicts_with = "pattern_file")]
    pub pattern: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub pattern_file: Option<PathBuf>,
    /// Text given literally.
    #[arg(long, conflicts_with = "text_file")]
    pub text: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub text_file: Option<PathBuf>,
    /// Mismatch bound.
    #[arg(short = 'k', long = "mismatches")]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
    pub algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also report a rotation and its mismatch count for each position.
    #[arg(long)]
    pub witness: bool,
    /// Read both inputs as FASTA: skip '>' lines, join the rest, uppercase.
    #[arg(long)]
    pub fasta: bool,
    /// Solve text windows on all cores.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Naive,
    Anchor,
    Sample,
    Auto,
}

impl AlgorithmArg {
    pub fn algorithm(self) -> Algorithm {
        match self {
            AlgorithmArg::Naive => Algorithm::Naive,
            AlgorithmArg::Anchor => Algorithm::AnchorSweep,
            AlgorithmArg::Sample => Algorithm::SampleK4,
            AlgorithmArg::Auto => Algorithm::Auto,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmArg::Naive => "naive",
            AlgorithmArg::Anchor => "anchor",
            AlgorithmArg::Sample => "sample",
            AlgorithmArg::Auto => "auto",
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Some(Command::Bench(args)) => bench::run(&args, out).map_err(CliError::Io),
        None => search(&cli.search, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "cpm: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Solver(#[from] cpm_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Solver(_) => EXIT_USAGE,
            CliError::Ingest(e) => e.exit_code(),
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn source(
    literal: &Option<String>,
    path: &Option<PathBuf>,
    what: &str,
) -> Result<Source, CliError> {
    match (literal, path) {
        (Some(s), None) => Ok(Source::Literal(s.clone())),
        (None, Some(p)) => Ok(Source::File(p.clone())),
        _ => Err(CliError::Usage(format!(
            "exactly one of --{what} and --{what}-file is required"
        ))),
    }
}

fn search(args: &SearchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let pattern_src = source(&args.pattern, &args.pattern_file, "pattern")?;
    let text_src = source(&args.text, &args.text_file, "text")?;
    let k = args
        .k
        .ok_or_else(|| CliError::Usage("the mismatch bound -k is required".into()))?;
    let pattern = ingest(&pattern_src, args.fasta)?;
    let text = ingest(&text_src, args.fasta)?;

    let config = SolverConfig {
        algorithm: args.algorithm.algorithm(),
        want_witness: args.witness,
        parallel_windows: args.parallel,
    };
    let started = Instant::now();
    let found = solve(&text, &pattern, k, &config)?;
    let timing_ms = started.elapsed().as_secs_f64() * 1e3;
    let params = Parameters {
        n: text.len(),
        m: pattern.len(),
        k,
        algorithm: args.algorithm.name(),
        fasta: args.fasta,
        parallel: args.parallel,
    };
    report::write(out, args.format, &found, args.witness, &params, timing_ms)?;
    Ok(())
}
