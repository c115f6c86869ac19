//! Shared inputs for the criterion benchmarks.

use cpm_core::synth::{planted_pattern, random_sequence, rng};
use cpm_core::Sequence;

/// Uniform text over four letters and a perturbed rotation of one of its
/// fragments as the pattern.
pub fn random_instance(n: usize, m: usize, k: usize, seed: u64) -> (Sequence, Sequence) {
    let mut r = rng(seed);
    let text = random_sequence(&mut r, n, 4);
    let pattern = planted_pattern(&mut r, &text, m, k / 2);
    (text, pattern)
}
