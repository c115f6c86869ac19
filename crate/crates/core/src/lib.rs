//! Circular pattern matching with `k` mismatches.
//!
//! Given a pattern `P` of length `m`, a text `T` of length `n` and a bound
//! `k`, find every position `p` such that some rotation of `P` matches
//! `T[p..p + m]` with at most `k` mismatches. Two algorithms are provided,
//! one running in `O(nk)` time and one in `O(n + (n/m) k^4)` time, both
//! cross-checked against an exhaustive matcher.

pub mod anchor;
pub mod error;
pub mod geometry;
pub mod index;
pub mod light;
pub mod periodic;
pub mod solver;
pub mod strings;
pub mod synth;

pub use anchor::{AnchorContext, MarkTable};
pub use error::{Error, Result};
pub use geometry::{Interval, IntervalChain};
pub use index::{ArithmeticOccurrences, Direction, Extension, TextIndex};
pub use light::SparseBinaryString;
pub use solver::{
    plan_windows, recover_witness, solve, solve_anchor_sweep, solve_window_k4, solve_with,
    Algorithm, AlphabetMap, Provenance, SolverConfig, Window,
};
pub use strings::{
    brute_force_cpm, hamming_bounded, matching_pairs, rotate, Occurrence, OccurrenceReport,
    Rotation, Sequence, Witness,
};
