//! Text and JSON renderings of an occurrence report.

use std::io::{self, Write};

use clap::ValueEnum;
use cpm_core::OccurrenceReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub algorithm: &'static str,
    pub fasta: bool,
    pub parallel: bool,
}

#[derive(Debug, Serialize)]
struct WitnessRow {
    pos: usize,
    rot: usize,
    dist: usize,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    positions: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<WitnessRow>>,
    parameters: &'a Parameters,
    timing_ms: f64,
}

pub fn write(
    out: &mut impl Write,
    format: Format,
    report: &OccurrenceReport,
    witness: bool,
    params: &Parameters,
    timing_ms: f64,
) -> io::Result<()> {
    let rows = || {
        report.occurrences.iter().map(|o| {
            let w = o.witness.expect("witnesses were requested");
            WitnessRow {
                pos: o.position,
                rot: w.rotation.get(),
                dist: w.mismatches,
            }
        })
    };
    match format {
        Format::Text => {
            let mut buf = io::BufWriter::new(out);
            if witness {
                for r in rows() {
                    writeln!(buf, "{}\t{}\t{}", r.pos, r.rot, r.dist)?;
                }
            } else {
                for o in &report.occurrences {
                    writeln!(buf, "{}", o.position)?;
                }
            }
            buf.flush()
        }
        Format::Json => {
            let doc = JsonReport {
                positions: report.positions(),
                witnesses: witness.then(|| rows().collect()),
                parameters: params,
                timing_ms,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
    }
}
