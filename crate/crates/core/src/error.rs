use thiserror::Error;

/// Errors raised at the library boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rotation {x} out of range for a string of length {len}")]
    RotationOutOfRange { x: usize, len: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("pattern must not be empty")]
    EmptyPattern,
    #[error("non-zero positions must be strictly increasing and below {len}")]
    InvalidSparseString { len: usize },
    #[error("fragment must not be empty")]
    EmptyFragment,
    #[error("symbol {symbol} is not below the alphabet size {alphabet_size}")]
    SymbolOutOfRange { symbol: u32, alphabet_size: u32 },
    #[error("chain with difference {found} added to an accumulator of width {expected}")]
    MixedDifferences { expected: usize, found: usize },
    #[error("pattern of length {m} cannot be split into {pieces} samples")]
    TooShortForSamples { m: usize, pieces: usize },
    #[error("no rotation within {k} mismatches at position {position}")]
    WitnessNotFound { position: usize, k: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
