//! Samples of the pattern and the machinery for samples with a small period:
//! runs of exact occurrences in the text, misperiods around a period block,
//! the periodic-periodic matching step and the per-run driver.

use crate::anchor::AnchorContext;
use crate::error::{Error, Result};
use crate::geometry::{shift_chain, Interval, IntervalChain};
use crate::index::{smallest_period, Direction, TextIndex};
use crate::light::{aligned_light_sum, SparseBinaryString};

/// A contiguous fragment `P[start..start + len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub start: usize,
    pub len: usize,
    /// Smallest period, kept only when it is at most half the length.
    pub period: Option<usize>,
}

impl Sample {
    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

/// Splits the pattern into `2k + 3` contiguous samples whose lengths differ
/// by at most one, longer ones first.
pub fn split_samples(pattern: &[u32], k: usize) -> Result<Vec<Sample>> {
    let m = pattern.len();
    let pieces = 2 * k + 3;
    if m < pieces {
        return Err(Error::TooShortForSamples { m, pieces });
    }
    let (base, extra) = (m / pieces, m % pieces);
    let mut out = Vec::with_capacity(pieces);
    let mut start = 0;
    for t in 0..pieces {
        let len = base + usize::from(t < extra);
        let per = smallest_period(&pattern[start..start + len]);
        out.push(Sample {
            start,
            len,
            period: (2 * per <= len).then_some(per),
        });
        start += len;
    }
    Ok(out)
}

/// Maximal stretch `T[start..start + len]` covered by exact occurrences of a
/// periodic sample spaced by its period `stride`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRun {
    pub start: usize,
    pub len: usize,
    pub stride: usize,
}

/// Exact occurrences of the sample in the context's text, as text positions.
pub fn sample_occurrences(ctx: &AnchorContext, sample: &Sample) -> Vec<usize> {
    let t0 = ctx.text_offset();
    ctx.index()
        .fragment_occurrences(sample.start, sample.len, t0, ctx.n())
        .expect("samples are non-empty")
        .iter()
        .flat_map(|g| g.iter())
        .map(|i| i - t0)
        .collect()
}

/// Runs of a periodic sample in the context's text.
pub fn find_runs(ctx: &AnchorContext, sample: &Sample) -> Vec<SampleRun> {
    let q = sample
        .period
        .expect("runs are defined for periodic samples");
    let t0 = ctx.text_offset();
    let groups = ctx
        .index()
        .fragment_occurrences(sample.start, sample.len, t0, ctx.n())
        .expect("samples are non-empty");
    let mut runs: Vec<(usize, usize)> = Vec::with_capacity(groups.len());
    for g in groups {
        debug_assert!(g.count == 1 || g.difference == q);
        match runs.last_mut() {
            Some((_, last)) if *last + q == g.first => *last = g.last(),
            _ => runs.push((g.first, g.last())),
        }
    }
    runs.into_iter()
        .map(|(first, last)| SampleRun {
            start: first - t0,
            len: last - first + sample.len,
            stride: q,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Misperiods nearest to the block `base[block.0..=block.1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MisperiodSet {
    pub block: (usize, usize),
    /// Up to `limit` largest misperiods left of the block, ascending.
    pub left: Vec<usize>,
    /// Up to `limit` smallest misperiods right of the block, ascending.
    pub right: Vec<usize>,
}

impl MisperiodSet {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// All positions, ascending.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.iter().chain(&self.right).copied()
    }
}

/// Misperiods of `base` with respect to the block `[i, j]`, restricted to
/// `bounds`, keeping up to `limit` per side.
pub fn misperiods(
    index: &TextIndex,
    i: usize,
    j: usize,
    limit: usize,
    bounds: Interval,
    side: Side,
) -> MisperiodSet {
    assert!(i <= j && bounds.contains(i) && bounds.contains(j));
    let q = j - i + 1;
    let mut set = MisperiodSet {
        block: (i, j),
        ..Default::default()
    };
    if side != Side::Right && i > bounds.lo() {
        let ext = index.lce_k_vs_power(i, q, i - 1, limit, Direction::Backward, i - bounds.lo());
        set.left = ext.mismatches.iter().rev().map(|&t| i - 1 - t).collect();
    }
    if side != Side::Left && j < bounds.hi() {
        let ext = index.lce_k_vs_power(i, q, j + 1, limit, Direction::Forward, bounds.hi() - j);
        set.right = ext.mismatches.iter().map(|&t| j + 1 + t).collect();
    }
    set
}

/// Two fragments that are periodic with the same block `Q` up to the
/// misperiods marked as ones; `i` and `i_prime` are the starts of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpmInstance {
    pub u: SparseBinaryString,
    pub i: usize,
    pub v: SparseBinaryString,
    pub i_prime: usize,
    pub q: usize,
    pub k: usize,
    pub m: usize,
}

/// Positions `p` of `U` for which some `V[x..x + m]` with
/// `i - p ≡ i' - x (mod q)` carries at most `k` misperiods in total with
/// `U[p..p + m]`. Chains are in `U` coordinates.
pub fn periodic_periodic_match(inst: &PpmInstance) -> Vec<IntervalChain> {
    let q = inst.q;
    let z = (inst.i_prime % q + q - inst.i % q) % q;
    let shifted = SparseBinaryString::new(
        inst.u.len() + z,
        inst.u.ones().iter().map(|&x| x + z).collect(),
    )
    .expect("shifting preserves order");
    aligned_light_sum(&shifted, &inst.v, inst.m, inst.k, q)
        .iter()
        .flat_map(|c| shift_chain(c, -(z as i64)))
        .collect()
}

/// One periodic occurrence of the sample inside `P²`, with its misperiods.
#[derive(Debug, Clone)]
pub struct PatternSide {
    /// Start of the block in `P²`.
    pub block: usize,
    pub misperiods: MisperiodSet,
    /// The fragment of `P²` spanned by the misperiods (or by `P²` itself on
    /// a side with fewer than `k + 1` of them).
    pub span: Interval,
}

/// Both placements of the sample's period block in `P²` (at `p_S` and at
/// `m + p_S`), covering split points right and left of the sample.
pub fn pattern_sides(ctx: &AnchorContext, sample: &Sample) -> Vec<PatternSide> {
    let q = sample.period.expect("periodic sample");
    let (m, k) = (ctx.m(), ctx.k());
    let bounds = Interval::new(0, 2 * m - 1);
    [sample.start, m + sample.start]
        .into_iter()
        .map(|c| {
            let mis = misperiods(ctx.index(), c, c + q - 1, k + 1, bounds, Side::Both);
            let span = misperiod_span(&mis, k + 1, bounds);
            PatternSide {
                block: c,
                misperiods: mis,
                span,
            }
        })
        .collect()
}

fn misperiod_span(mis: &MisperiodSet, limit: usize, bounds: Interval) -> Interval {
    let lo = if mis.left.len() == limit {
        mis.left[0]
    } else {
        bounds.lo()
    };
    let hi = if mis.right.len() == limit {
        *mis.right.last().unwrap()
    } else {
        bounds.hi()
    };
    Interval::new(lo, hi)
}

/// A chain of occurrences produced for one run. At each of its positions
/// `p` some rotation `x ≡ p + rotation_offset (mod q)` is within distance `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunChain {
    pub chain: IntervalChain,
    pub rotation_offset: usize,
}

/// Output of one run: chains of occurrences (text coordinates) and the
/// aligned misperiod pairs `(text index, pattern index)` still to resolve.
#[derive(Debug, Clone, Default)]
pub struct RunCandidates {
    pub chains: Vec<RunChain>,
    pub pairs: Vec<(usize, usize)>,
}

/// Run-sample matching split into its two halves: chains from the
/// periodic-periodic step, and the misperiod pairs whose pair matching
/// covers the remaining occurrences.
pub fn run_sample_candidates(
    ctx: &AnchorContext,
    sides: &[PatternSide],
    run: &SampleRun,
) -> RunCandidates {
    let (m, k, n) = (ctx.m(), ctx.k(), ctx.n());
    let q = run.stride;
    let t0 = ctx.text_offset();
    let bounds = Interval::new(t0, t0 + n - 1);
    let s = t0 + run.start;
    let text_mis = misperiods(ctx.index(), s, s + q - 1, k + 1, bounds, Side::Both);
    let u_span = misperiod_span(&text_mis, k + 1, bounds);

    let mut out = RunCandidates::default();
    if u_span.len() >= m {
        let u = SparseBinaryString::new(
            u_span.len(),
            text_mis.positions().map(|x| x - u_span.lo()).collect(),
        )
        .expect("misperiods are sorted");
        for side in sides {
            if side.span.len() < m {
                continue;
            }
            let v = SparseBinaryString::new(
                side.span.len(),
                side.misperiods
                    .positions()
                    .map(|x| x - side.span.lo())
                    .collect(),
            )
            .expect("misperiods are sorted");
            let inst = PpmInstance {
                u: u.clone(),
                i: s - u_span.lo(),
                v,
                i_prime: side.block - side.span.lo(),
                q,
                k,
                m,
            };
            let shift = (u_span.lo() - t0) as i64;
            // Text position a faces P² position b when a - s ≡ b - block.
            let rotation_offset = (side.block % q + q - run.start % q) % q;
            out.chains.extend(
                periodic_periodic_match(&inst)
                    .iter()
                    .flat_map(|c| shift_chain(c, shift))
                    .map(|chain| RunChain {
                        chain,
                        rotation_offset,
                    }),
            );
        }
    }

    let mut pattern_idx: Vec<usize> = sides
        .iter()
        .flat_map(|side| side.misperiods.positions())
        .map(|j| j % m)
        .collect();
    pattern_idx.sort_unstable();
    pattern_idx.dedup();
    for i in text_mis.positions() {
        for &j in &pattern_idx {
            out.pairs.push((i - t0, j));
        }
    }
    out
}

/// Run-sample matching with every misperiod pair resolved by pair matching:
/// `(X, Y)` with `X` plain intervals and `Y` chains of difference `q`.
pub fn run_sample_matching(
    ctx: &AnchorContext,
    sample: &Sample,
    run: &SampleRun,
) -> (Vec<Interval>, Vec<IntervalChain>) {
    let sides = pattern_sides(ctx, sample);
    let cand = run_sample_candidates(ctx, &sides, run);
    let mut x = Vec::new();
    let mut scratch = Default::default();
    for &(i, j) in &cand.pairs {
        ctx.pair_match_into(i, j, &mut scratch, &mut x);
    }
    (x, cand.chains.into_iter().map(|c| c.chain).collect())
}

/// Occurrences in which the non-periodic sample matches exactly, through
/// pair matching at each of its exact occurrences.
pub fn sample_match_nonperiodic(ctx: &AnchorContext, sample: &Sample) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut scratch = Default::default();
    for i in sample_occurrences(ctx, sample) {
        ctx.pair_match_into(i, sample.start, &mut scratch, &mut out);
    }
    out
}

#[cfg(test)]
mod tests;
