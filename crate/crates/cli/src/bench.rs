//! Benchmark mode: median wall-clock time of each solver on synthetic
//! inputs, printed as CSV.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, ValueEnum};
use cpm_core::synth::{periodic_sequence, planted_pattern, random_sequence, rng};
use cpm_core::{solve, Sequence, SolverConfig};

use crate::AlgorithmArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// Uniform letters.
    Random,
    /// A short block repeated with a few substitutions.
    Periodic,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Text lengths.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [65_536usize, 131_072, 262_144])]
    pub n: Vec<usize>,
    /// Pattern lengths.
    #[arg(long = "m", value_delimiter = ',', default_values_t = [1024usize])]
    pub m: Vec<usize>,
    /// Mismatch bounds.
    #[arg(short = 'k', value_delimiter = ',', default_values_t = [0usize, 2, 4, 8])]
    pub k: Vec<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [AlgorithmArg::Anchor, AlgorithmArg::Sample])]
    pub algorithms: Vec<AlgorithmArg>,
    #[arg(long, value_enum, default_value_t = InputKind::Both)]
    pub input: InputKind,
    /// Timed repetitions per cell (at least 5).
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(5..))]
    pub reps: u32,
    #[arg(long, default_value_t = 4)]
    pub sigma: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Solver name, suffixed with `:periodic` for periodic inputs.
    pub algorithm: String,
    pub median_ms: f64,
}

pub const HEADER: &str = "n,m,k,algorithm,median_ms";

/// Synthetic instance: the pattern is cut from the text and perturbed, so
/// occurrences exist.
pub fn instance(
    kind: InputKind,
    n: usize,
    m: usize,
    k: usize,
    sigma: u32,
    seed: u64,
) -> (Sequence, Sequence) {
    let mut r = rng(seed);
    let text = match kind {
        InputKind::Periodic => periodic_sequence(&mut r, n, 3, sigma, n / 1024),
        _ => random_sequence(&mut r, n, sigma),
    };
    let pattern = planted_pattern(&mut r, &text, m.min(n), k / 2);
    (text, pattern)
}

/// Median milliseconds of `reps` runs.
pub fn measure(
    algorithm: AlgorithmArg,
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    reps: u32,
) -> f64 {
    let config = SolverConfig {
        algorithm: algorithm.algorithm(),
        ..Default::default()
    };
    let mut times: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            let found = solve(text, pattern, k, &config).expect("valid benchmark instance");
            std::hint::black_box(found);
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

/// Runs the whole grid, writing CSV rows as they complete.
pub fn benchmark(args: &BenchArgs, out: &mut impl Write) -> io::Result<Vec<Row>> {
    let kinds: &[InputKind] = match args.input {
        InputKind::Both => &[InputKind::Random, InputKind::Periodic],
        InputKind::Random => &[InputKind::Random],
        InputKind::Periodic => &[InputKind::Periodic],
    };
    writeln!(out, "{HEADER}")?;
    let mut rows = Vec::new();
    for &kind in kinds {
        for &n in &args.n {
            for &m in args.m.iter().filter(|&&m| m >= 1 && m <= n) {
                for &k in &args.k {
                    let (text, pattern) = instance(kind, n, m, k, args.sigma, args.seed);
                    for &alg in &args.algorithms {
                        let mut algorithm = alg.name().to_owned();
                        if kind == InputKind::Periodic {
                            algorithm.push_str(":periodic");
                        }
                        let row = Row {
                            n,
                            m,
                            k,
                            algorithm,
                            median_ms: measure(alg, &text, &pattern, k, args.reps),
                        };
                        writeln!(
                            out,
                            "{},{},{},{},{:.3}",
                            row.n, row.m, row.k, row.algorithm, row.median_ms
                        )?;
                        out.flush()?;
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs, out: &mut impl Write) -> io::Result<()> {
    benchmark(args, out).map(drop)
}
