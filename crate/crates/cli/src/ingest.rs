//! Reading pattern and text: raw bytes or FASTA.

use std::path::PathBuf;

use cpm_core::Sequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Literal(String),
    File(PathBuf),
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{what} is empty")]
    Empty { what: String },
}

impl IngestError {
    pub fn exit_code(&self) -> i32 {
        match self {
            IngestError::Read { .. } => crate::EXIT_IO,
            IngestError::Empty { .. } => crate::EXIT_USAGE,
        }
    }
}

/// Raw mode keeps every byte except one trailing line break. FASTA mode
/// drops header lines, joins the remaining lines and uppercases letters.
pub fn ingest(source: &Source, fasta: bool) -> Result<Sequence, IngestError> {
    let bytes = match source {
        Source::Literal(s) => s.as_bytes().to_vec(),
        Source::File(path) => std::fs::read(path).map_err(|source| IngestError::Read {
            path: path.clone(),
            source,
        })?,
    };
    let symbols = if fasta {
        fasta_residues(&bytes)
    } else {
        strip_newline(&bytes).to_vec()
    };
    if symbols.is_empty() {
        let what = match source {
            Source::Literal(_) => "literal input".to_owned(),
            Source::File(p) => p.display().to_string(),
        };
        return Err(IngestError::Empty { what });
    }
    Ok(Sequence::from_bytes(&symbols))
}

fn strip_newline(bytes: &[u8]) -> &[u8] {
    bytes.strip_suffix(b"\n").unwrap_or(bytes)
}

pub fn fasta_residues(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bytes.len());
    for line in bytes.split(|&b| b == b'\n') {
        if line.first() == Some(&b'>') {
            continue;
        }
        out.extend(
            line.iter()
                .filter(|b| !b.is_ascii_whitespace())
                .map(u8::to_ascii_uppercase),
        );
    }
    out
}
