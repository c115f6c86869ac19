//! Top-level drivers: the exhaustive matcher, the anchor sweep over the
//! whole text, and the windowed sample algorithm with marking.

use crate::anchor::{AnchorContext, AnchorScratch, MarkTable};
use crate::error::{Error, Result};
use crate::geometry::{clip_chain, GridAccumulator, Interval};
use crate::index::Direction;
use crate::periodic::{
    find_runs, pattern_sides, run_sample_candidates, sample_occurrences, split_samples, RunChain,
    Sample,
};
use crate::strings::{brute_force_cpm, Occurrence, OccurrenceReport, Rotation, Sequence, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// Every rotation at every position.
    Naive,
    /// Anchor matching at every text position, `O(nk)`.
    AnchorSweep,
    /// Windows of length `2m` with samples and marking, `O(n + (n/m) k^4)`
    /// up to the cost of locating samples.
    SampleK4,
    /// Whichever of the two fast algorithms has the smaller cost estimate.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub want_witness: bool,
    pub parallel_windows: bool,
}

/// How a window resolves the candidate pairs produced by its samples.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStrategy {
    /// Mark both anchors of each pair; verify anchors with `k + 2` marks.
    Marking,
    /// Run pair matching on every pair.
    Direct,
}

/// Ranks pattern letters `1..=d` in sorted order; any other letter gets the
/// shared rank `m + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMap {
    letters: Vec<u32>,
    foreign: u32,
}

impl AlphabetMap {
    pub fn new(pattern: &[u32]) -> Self {
        let mut letters = pattern.to_vec();
        letters.sort_unstable();
        letters.dedup();
        AlphabetMap {
            letters,
            foreign: pattern.len() as u32 + 1,
        }
    }

    pub fn rank(&self, c: u32) -> u32 {
        match self.letters.binary_search(&c) {
            Ok(r) => r as u32 + 1,
            Err(_) => self.foreign,
        }
    }

    pub fn foreign(&self) -> u32 {
        self.foreign
    }

    /// Exclusive upper bound on ranks.
    pub fn sigma(&self) -> u32 {
        self.foreign + 1
    }

    pub fn remap(&self, s: &[u32]) -> Vec<u32> {
        s.iter().map(|&c| self.rank(c)).collect()
    }

    pub fn remap_into(&self, s: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.extend(s.iter().map(|&c| self.rank(c)));
    }
}

/// Text fragment `T[start..start + len]`; it owns the occurrences starting in
/// `[start, start + m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub len: usize,
}

/// Windows starting at every multiple of `m` below `n`, of length up to
/// `2m`. Windows too short to hold an occurrence are dropped.
pub fn plan_windows(n: usize, m: usize) -> Vec<Window> {
    assert!(m >= 1);
    (0..n)
        .step_by(m)
        .map(|start| Window {
            start,
            len: (2 * m).min(n - start),
        })
        .filter(|w| w.len >= m)
        .collect()
}

/// Where a reported position came from, used to find its rotation quickly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Reported by anchor matching at this text position.
    Anchor(usize),
    /// Reported by a chain: the rotation is congruent to `p + offset`
    /// modulo `q`.
    Chain {
        q: usize,
        offset: usize,
    },
    Unknown,
}

/// Finds a rotation of the pattern within distance `k` of the occurrence of
/// the context's text at `p`, trying the provenance first and then every
/// rotation in increasing order.
pub fn recover_witness(ctx: &AnchorContext, p: usize, provenance: Provenance) -> Result<Witness> {
    let m = ctx.m();
    let mut buf = Vec::new();
    let mut check = |x: usize| -> Option<Witness> {
        let t = ctx.text_offset() + p;
        let len = ctx
            .index()
            .lce_k_into(t, x, ctx.k(), Direction::Forward, m, &mut buf);
        (len == m).then_some(Witness {
            rotation: Rotation(x),
            mismatches: buf.len(),
        })
    };
    let found = match provenance {
        Provenance::Anchor(a) if a >= p && a < p + m => check((p + m - a) % m),
        Provenance::Chain { q, offset } => ((p + offset) % q..m).step_by(q).find_map(&mut check),
        _ => None,
    };
    found
        .or_else(|| (0..m).find_map(&mut check))
        .ok_or(Error::WitnessNotFound {
            position: p,
            k: ctx.k(),
        })
}

/// All `k`-occurrences of the pattern in the text.
pub fn solve(
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    config: &SolverConfig,
) -> Result<OccurrenceReport> {
    let mut occurrences = Vec::new();
    if config.parallel_windows && uses_windows(text.len(), pattern.len(), k, config.algorithm) {
        return solve_parallel(text, pattern, k, config);
    }
    solve_with(text, pattern, k, config, |o| occurrences.push(o))?;
    Ok(OccurrenceReport { occurrences })
}

/// Streams occurrences in increasing order to `sink`. Apart from the input
/// and what the sink keeps, windowed algorithms use `O(m)` memory.
pub fn solve_with(
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    config: &SolverConfig,
    mut sink: impl FnMut(Occurrence),
) -> Result<()> {
    let (n, m) = (text.len(), pattern.len());
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if n < m {
        return Ok(());
    }
    match resolve(n, m, k, config.algorithm) {
        Plan::Naive => {
            for mut o in brute_force_cpm(text, pattern, k).occurrences {
                if !config.want_witness {
                    o.witness = None;
                }
                sink(o);
            }
        }
        Plan::WholeSweep => {
            for o in anchor_sweep(text.as_slice(), pattern.as_slice(), k, config.want_witness)? {
                sink(o);
            }
        }
        Plan::Windows(mode) => {
            let solver = WindowSolver::new(pattern.as_slice(), k, mode, config.want_witness);
            let mut state = solver.state();
            for w in plan_windows(n, m) {
                let slice = &text.as_slice()[w.start..w.start + w.len];
                solver.solve_window(slice, &mut state, |mut o| {
                    o.position += w.start;
                    sink(o)
                })?;
            }
        }
    }
    Ok(())
}

fn solve_parallel(
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    config: &SolverConfig,
) -> Result<OccurrenceReport> {
    use rayon::prelude::*;
    let (n, m) = (text.len(), pattern.len());
    let Plan::Windows(mode) = resolve(n, m, k, config.algorithm) else {
        unreachable!("parallel solving is only planned for windowed algorithms")
    };
    let solver = WindowSolver::new(pattern.as_slice(), k, mode, config.want_witness);
    let parts: Vec<Result<Vec<Occurrence>>> = plan_windows(n, m)
        .into_par_iter()
        .map_init(
            || solver.state(),
            |state, w| {
                let mut out = Vec::new();
                let slice = &text.as_slice()[w.start..w.start + w.len];
                solver.solve_window(slice, state, |mut o| {
                    o.position += w.start;
                    out.push(o)
                })?;
                Ok(out)
            },
        )
        .collect();
    let mut occurrences = Vec::new();
    for part in parts {
        occurrences.extend(part?);
    }
    Ok(OccurrenceReport { occurrences })
}

/// Anchor sweep over the whole text with one index of `P P # T $`.
pub fn solve_anchor_sweep(text: &Sequence, pattern: &Sequence, k: usize) -> OccurrenceReport {
    if pattern.is_empty() || text.len() < pattern.len() {
        return OccurrenceReport::default();
    }
    let occurrences = anchor_sweep(text.as_slice(), pattern.as_slice(), k, false)
        .expect("anchor sweep recovers witnesses only on request");
    OccurrenceReport { occurrences }
}

/// Windowed sample algorithm, or its hidden variant without marking.
#[doc(hidden)]
pub fn solve_sample_k4(
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    strategy: PairStrategy,
) -> Result<OccurrenceReport> {
    let (n, m) = (text.len(), pattern.len());
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    let mut occurrences = Vec::new();
    if n < m {
        return Ok(OccurrenceReport { occurrences });
    }
    let mode = if k >= m {
        WindowMode::All
    } else if 2 * k + 3 > m {
        WindowMode::AnchorSweep
    } else {
        WindowMode::Samples(strategy)
    };
    let solver = WindowSolver::new(pattern.as_slice(), k, mode, false);
    let mut state = solver.state();
    for w in plan_windows(n, m) {
        let slice = &text.as_slice()[w.start..w.start + w.len];
        solver.solve_window(slice, &mut state, |mut o| {
            o.position += w.start;
            occurrences.push(o)
        })?;
    }
    Ok(OccurrenceReport { occurrences })
}

/// Solves one window on its own: occurrences in `[0, min(m, w - m + 1))`
/// of `window`, in window coordinates.
pub fn solve_window_k4(
    window: &Sequence,
    pattern: &Sequence,
    k: usize,
) -> Result<OccurrenceReport> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    let mut occurrences = Vec::new();
    if window.len() < m {
        return Ok(OccurrenceReport { occurrences });
    }
    let mode = if k >= m {
        WindowMode::All
    } else if 2 * k + 3 > m {
        WindowMode::AnchorSweep
    } else {
        WindowMode::Samples(PairStrategy::Marking)
    };
    let solver = WindowSolver::new(pattern.as_slice(), k, mode, false);
    let mut state = solver.state();
    solver.solve_window(window.as_slice(), &mut state, |o| occurrences.push(o))?;
    Ok(OccurrenceReport { occurrences })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    Naive,
    WholeSweep,
    Windows(WindowMode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WindowMode {
    All,
    AnchorSweep,
    Samples(PairStrategy),
}

fn resolve(n: usize, m: usize, k: usize, algorithm: Algorithm) -> Plan {
    if algorithm == Algorithm::Naive {
        return Plan::Naive;
    }
    if k >= m {
        return Plan::Windows(WindowMode::All);
    }
    let fast = 2 * k + 3 <= m;
    match algorithm {
        Algorithm::Naive => Plan::Naive,
        Algorithm::AnchorSweep => Plan::WholeSweep,
        Algorithm::SampleK4 if fast => Plan::Windows(WindowMode::Samples(PairStrategy::Marking)),
        Algorithm::SampleK4 => Plan::Windows(WindowMode::AnchorSweep),
        Algorithm::Auto => {
            if fast && sample_is_cheaper(n, m, k) {
                Plan::Windows(WindowMode::Samples(PairStrategy::Marking))
            } else {
                Plan::Windows(WindowMode::AnchorSweep)
            }
        }
    }
}

fn uses_windows(n: usize, m: usize, k: usize, algorithm: Algorithm) -> bool {
    m > 0 && n >= m && matches!(resolve(n, m, k, algorithm), Plan::Windows(_))
}

/// `n + (n/m) k^4 < nk` with unit constants.
fn sample_is_cheaper(n: usize, m: usize, k: usize) -> bool {
    let (n, m, k) = (n as f64, m as f64, k as f64);
    n + (n / m) * k.powi(4) < n * k
}

fn anchor_sweep(
    text: &[u32],
    pattern: &[u32],
    k: usize,
    want_witness: bool,
) -> Result<Vec<Occurrence>> {
    let (n, m) = (text.len(), pattern.len());
    let map = AlphabetMap::new(pattern);
    let ctx = AnchorContext::new(&map.remap(pattern), &map.remap(text), map.sigma(), k);
    let mut cover = Coverage::new(n - m + 1, want_witness);
    let mut scratch = AnchorScratch::default();
    let mut buf = Vec::new();
    for a in 0..n {
        buf.clear();
        ctx.anchor_match_into(a, &mut scratch, &mut buf);
        for &iv in &buf {
            cover.add(iv, Provenance::Anchor(a));
        }
    }
    let mut out = Vec::new();
    cover.emit(&ctx, &[], |o| out.push(o))?;
    Ok(out)
}

/// Positions covered by intervals over `[0, len)`, with the first
/// provenance seen for each position when witnesses are wanted.
struct Coverage {
    diff: Vec<i32>,
    hints: Option<HintTable>,
}

impl Coverage {
    fn new(len: usize, want_witness: bool) -> Self {
        Coverage {
            diff: vec![0; len + 1],
            hints: want_witness.then(|| HintTable::new(len)),
        }
    }

    fn add(&mut self, iv: Interval, provenance: Provenance) {
        if iv.is_empty() {
            return;
        }
        self.diff[iv.lo()] += 1;
        self.diff[iv.hi() + 1] -= 1;
        if let Some(h) = &mut self.hints {
            h.assign(iv, provenance);
        }
    }

    /// Emits covered positions, also those covered by `chains` (which must
    /// lie inside the range).
    fn emit(
        self,
        ctx: &AnchorContext,
        chains: &[RunChain],
        mut sink: impl FnMut(Occurrence),
    ) -> Result<()> {
        let len = self.diff.len() - 1;
        let in_chain = chain_cover(chains, len)?;
        let mut depth = 0;
        for p in 0..len {
            depth += self.diff[p];
            let chain_hit = in_chain.as_ref().is_some_and(|c| c[p]);
            if depth == 0 && !chain_hit {
                continue;
            }
            let witness = match &self.hints {
                None => None,
                Some(h) => {
                    let mut provenance = h.get(p);
                    if provenance == Provenance::Unknown {
                        if let Some(c) = chains.iter().find(|c| c.chain.contains(p)) {
                            provenance = Provenance::Chain {
                                q: c.chain.difference,
                                offset: c.rotation_offset,
                            };
                        }
                    }
                    Some(recover_witness(ctx, p, provenance)?)
                }
            };
            sink(Occurrence {
                position: p,
                witness,
            });
        }
        Ok(())
    }
}

/// Marks positions of `[0, len)` covered by chains, via the grid union.
fn chain_cover(chains: &[RunChain], len: usize) -> Result<Option<Vec<bool>>> {
    let Some(first) = chains.first() else {
        return Ok(None);
    };
    let mut grid = GridAccumulator::new(len - 1, first.chain.difference);
    for c in chains {
        grid.add_chain(&c.chain)?;
    }
    let mut hit = vec![false; len];
    for iv in grid.finalize() {
        for p in iv.iter() {
            hit[p] = true;
        }
    }
    Ok(Some(hit))
}

/// First provenance assigned to each position; a skip list makes repeated
/// assignments over covered stretches cheap.
struct HintTable {
    hints: Vec<Provenance>,
    next_free: Vec<u32>,
}

impl HintTable {
    fn new(len: usize) -> Self {
        HintTable {
            hints: vec![Provenance::Unknown; len],
            next_free: (0..=len as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.next_free[root] as usize != root {
            root = self.next_free[root] as usize;
        }
        while self.next_free[x] as usize != root {
            let next = self.next_free[x] as usize;
            self.next_free[x] = root as u32;
            x = next;
        }
        root
    }

    fn assign(&mut self, iv: Interval, provenance: Provenance) {
        let mut p = self.find(iv.lo());
        while p <= iv.hi() {
            self.hints[p] = provenance;
            self.next_free[p] = p as u32 + 1;
            p = self.find(p + 1);
        }
    }

    fn get(&self, p: usize) -> Provenance {
        self.hints[p]
    }
}

/// Pattern-side data shared by all windows.
struct WindowSolver {
    pattern: Vec<u32>,
    map: AlphabetMap,
    k: usize,
    mode: WindowMode,
    samples: Vec<Sample>,
    want_witness: bool,
}

/// Buffers reused across windows.
struct WindowState {
    window: Vec<u32>,
    marks: MarkTable,
    scratch: AnchorScratch,
    intervals: Vec<Interval>,
}

impl WindowSolver {
    fn new(pattern: &[u32], k: usize, mode: WindowMode, want_witness: bool) -> Self {
        let map = AlphabetMap::new(pattern);
        let remapped = map.remap(pattern);
        let samples = match mode {
            WindowMode::Samples(_) => {
                split_samples(&remapped, k).expect("mode requires m >= 2k + 3")
            }
            _ => Vec::new(),
        };
        WindowSolver {
            pattern: remapped,
            map,
            k,
            mode,
            samples,
            want_witness,
        }
    }

    fn m(&self) -> usize {
        self.pattern.len()
    }

    fn state(&self) -> WindowState {
        WindowState {
            window: Vec::with_capacity(2 * self.m()),
            marks: MarkTable::new(2 * self.m(), self.m(), self.k),
            scratch: AnchorScratch::default(),
            intervals: Vec::new(),
        }
    }

    /// Occurrences owned by the window (starting before `m`), in window
    /// coordinates and increasing order.
    fn solve_window(
        &self,
        window: &[u32],
        state: &mut WindowState,
        sink: impl FnMut(Occurrence),
    ) -> Result<()> {
        let (m, k) = (self.m(), self.k);
        let w = window.len();
        debug_assert!(w >= m && w <= 2 * m);
        let owned = m.min(w - m + 1);
        self.map.remap_into(window, &mut state.window);
        let ctx = AnchorContext::new(&self.pattern, &state.window, self.map.sigma(), k);
        let mut cover = Coverage::new(owned, self.want_witness);
        let owned_range = Interval::new(0, owned - 1);
        state.intervals.clear();

        let mut chains: Vec<RunChain> = Vec::new();
        match self.mode {
            WindowMode::All => cover.add(owned_range, Provenance::Unknown),
            WindowMode::AnchorSweep => {
                for a in 0..w.min(owned + m - 1) {
                    self.verify_anchor(&ctx, a, owned_range, state, &mut cover);
                }
            }
            WindowMode::Samples(strategy) => {
                state.marks.reset();
                for s in &self.samples {
                    if !s.is_periodic() {
                        for i in sample_occurrences(&ctx, s) {
                            self.pair(&ctx, strategy, i, s.start, owned_range, state, &mut cover);
                        }
                        continue;
                    }
                    let sides = pattern_sides(&ctx, s);
                    for run in find_runs(&ctx, s) {
                        let cand = run_sample_candidates(&ctx, &sides, &run);
                        for rc in &cand.chains {
                            for chain in clip_chain(&rc.chain, owned_range) {
                                if let Some(prev) = chains.first() {
                                    if prev.chain.difference != chain.difference {
                                        return Err(Error::MixedDifferences {
                                            expected: prev.chain.difference,
                                            found: chain.difference,
                                        });
                                    }
                                }
                                chains.push(RunChain {
                                    chain,
                                    rotation_offset: rc.rotation_offset,
                                });
                            }
                        }
                        for &(i, j) in &cand.pairs {
                            self.pair(&ctx, strategy, i, j, owned_range, state, &mut cover);
                        }
                    }
                }
                if strategy == PairStrategy::Marking {
                    for a in state.marks.heavy_anchors() {
                        self.verify_anchor(&ctx, a, owned_range, state, &mut cover);
                    }
                }
            }
        }
        cover.emit(&ctx, &chains, sink)
    }

    fn verify_anchor(
        &self,
        ctx: &AnchorContext,
        a: usize,
        owned: Interval,
        state: &mut WindowState,
        cover: &mut Coverage,
    ) {
        state.intervals.clear();
        ctx.anchor_match_into(a, &mut state.scratch, &mut state.intervals);
        for iv in &state.intervals {
            cover.add(iv.intersect(&owned), Provenance::Anchor(a));
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn pair(
        &self,
        ctx: &AnchorContext,
        strategy: PairStrategy,
        i: usize,
        j: usize,
        owned: Interval,
        state: &mut WindowState,
        cover: &mut Coverage,
    ) {
        match strategy {
            PairStrategy::Marking => state.marks.deposit_marks(i, j),
            PairStrategy::Direct => {
                for a in crate::anchor::pair_anchors(i, j, ctx.m(), ctx.n()) {
                    let range = Interval::new(i.saturating_sub(ctx.m() - 1), i);
                    state.intervals.clear();
                    ctx.anchor_match_into(a, &mut state.scratch, &mut state.intervals);
                    for iv in &state.intervals {
                        cover.add(
                            iv.intersect(&range).intersect(&owned),
                            Provenance::Anchor(a),
                        );
                    }
                }
            }
        }
    }
}
