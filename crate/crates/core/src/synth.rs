//! Seeded input generators for benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::strings::Sequence;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters from `0..sigma`.
pub fn random_sequence(rng: &mut impl Rng, len: usize, sigma: u32) -> Sequence {
    let symbols = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
    Sequence::with_alphabet(symbols, sigma).expect("letters below sigma")
}

/// A factor of `Q^inf` for a random block `Q` of length `period`, with
/// `edits` random substitutions.
pub fn periodic_sequence(
    rng: &mut impl Rng,
    len: usize,
    period: usize,
    sigma: u32,
    edits: usize,
) -> Sequence {
    let block: Vec<u32> = (0..period.max(1))
        .map(|_| rng.gen_range(0..sigma))
        .collect();
    periodic_from_block(rng, &block, len, sigma, edits)
}

/// A factor of `block^inf` starting at a random phase, with `edits` random
/// substitutions.
pub fn periodic_from_block(
    rng: &mut impl Rng,
    block: &[u32],
    len: usize,
    sigma: u32,
    edits: usize,
) -> Sequence {
    let phase = rng.gen_range(0..block.len());
    let mut symbols: Vec<u32> = (0..len).map(|t| block[(t + phase) % block.len()]).collect();
    substitute(rng, &mut symbols, sigma, edits);
    Sequence::with_alphabet(symbols, sigma).expect("letters below sigma")
}

/// A rotation of `text[start..start + m]` at a random offset with `edits`
/// substitutions, so that the text has an occurrence near `start`.
pub fn planted_pattern(rng: &mut impl Rng, text: &Sequence, m: usize, edits: usize) -> Sequence {
    assert!(m >= 1 && m <= text.len());
    let start = rng.gen_range(0..=text.len() - m);
    let x = rng.gen_range(0..m);
    let window = &text.as_slice()[start..start + m];
    let mut symbols: Vec<u32> = window[x..].iter().chain(&window[..x]).copied().collect();
    substitute(rng, &mut symbols, text.alphabet_size(), edits);
    Sequence::with_alphabet(symbols, text.alphabet_size()).expect("letters below sigma")
}

fn substitute(rng: &mut impl Rng, symbols: &mut [u32], sigma: u32, edits: usize) {
    if symbols.is_empty() {
        return;
    }
    for _ in 0..edits {
        let at = rng.gen_range(0..symbols.len());
        symbols[at] = rng.gen_range(0..sigma);
    }
}
