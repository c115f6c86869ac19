//! Longest-common-extension queries over a single concatenated string.
//!
//! A [`TextIndex`] answers exact extensions in both directions, extensions
//! with a bounded number of mismatches (the kangaroo method), extensions
//! against the infinite power of a fragment, and exact occurrences of one
//! fragment inside another.

mod suffix;

use crate::error::{Error, Result};
use crate::strings::Sequence;

use suffix::LcpOracle;

/// Extensions shorter than this are resolved by direct comparison before
/// touching the suffix structures.
const SCAN_AHEAD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Compare `base[i + t]` with `base[j + t]`.
    Forward,
    /// Compare `base[i - t]` with `base[j - t]`.
    Backward,
}

/// Result of a mismatch-bounded extension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extension {
    /// Number of compared positions before the first mismatch beyond the
    /// budget (or before the comparison hit its limit).
    pub length: usize,
    /// Offsets of the mismatches inside the extension, ascending.
    pub mismatches: Vec<usize>,
}

/// Exact occurrences `first, first + difference, ...` (`count` terms).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticOccurrences {
    pub first: usize,
    pub difference: usize,
    pub count: usize,
}

impl ArithmeticOccurrences {
    pub fn last(&self) -> usize {
        self.first + (self.count - 1) * self.difference
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.count).map(move |t| self.first + t * self.difference)
    }
}

#[derive(Debug, Clone)]
pub struct TextIndex {
    base: Vec<u32>,
    forward: LcpOracle,
    backward: LcpOracle,
}

impl TextIndex {
    pub fn build(base: &Sequence) -> Self {
        Self::from_symbols(base.as_slice().to_vec())
    }

    /// Builds over raw symbols; large alphabets are compacted first.
    pub fn from_symbols(base: Vec<u32>) -> Self {
        let sigma = base.iter().max().map_or(1, |&s| s as usize + 1);
        let compact;
        let (ranked, sigma) = if sigma > 2 * base.len() + 2 {
            let mut letters = base.clone();
            letters.sort_unstable();
            letters.dedup();
            compact = base
                .iter()
                .map(|s| letters.binary_search(s).unwrap() as u32)
                .collect::<Vec<_>>();
            (&compact[..], letters.len())
        } else {
            (&base[..], sigma)
        };
        let forward = LcpOracle::new(ranked, sigma);
        let reversed: Vec<u32> = ranked.iter().rev().copied().collect();
        let backward = LcpOracle::new(&reversed, sigma);
        TextIndex {
            base,
            forward,
            backward,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    #[inline]
    pub fn symbols(&self) -> &[u32] {
        &self.base
    }

    /// Approximate number of `u32` cells held by the index.
    pub fn heap_cells(&self) -> usize {
        self.base.len() + self.forward.heap_cells() + self.backward.heap_cells()
    }

    /// Longest common prefix of `base[i..]` and `base[j..]`.
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        self.extend(i, j, Direction::Forward, usize::MAX)
    }

    /// Longest common suffix of `base[..=i]` and `base[..=j]`.
    pub fn lcs(&self, i: usize, j: usize) -> usize {
        self.extend(i, j, Direction::Backward, usize::MAX)
    }

    /// Exact extension from `i` and `j` in `dir`, capped at `limit`.
    #[inline]
    pub fn extend(&self, i: usize, j: usize, dir: Direction, limit: usize) -> usize {
        let room = match dir {
            Direction::Forward => self.len() - i.max(j),
            Direction::Backward => i.min(j) + 1,
        };
        let limit = limit.min(room);
        if i == j {
            return limit;
        }
        let s = &self.base;
        let ahead = limit.min(SCAN_AHEAD);
        for t in 0..ahead {
            let (a, b) = match dir {
                Direction::Forward => (s[i + t], s[j + t]),
                Direction::Backward => (s[i - t], s[j - t]),
            };
            if a != b {
                return t;
            }
        }
        if ahead == limit {
            return limit;
        }
        let l = match dir {
            Direction::Forward => self.forward.lcp_distinct(i, j),
            Direction::Backward => {
                let n = self.len();
                self.backward.lcp_distinct(n - 1 - i, n - 1 - j)
            }
        };
        l.min(limit)
    }

    /// Kangaroo extension with at most `k` mismatches, capped at `limit`.
    pub fn lce_k(&self, i: usize, j: usize, k: usize, dir: Direction, limit: usize) -> Extension {
        let mut mismatches = Vec::new();
        let length = self.lce_k_into(i, j, k, dir, limit, &mut mismatches);
        Extension { length, mismatches }
    }

    /// As [`TextIndex::lce_k`], writing mismatch offsets into `out` (cleared
    /// first) and returning the extension length.
    pub fn lce_k_into(
        &self,
        i: usize,
        j: usize,
        k: usize,
        dir: Direction,
        limit: usize,
        out: &mut Vec<usize>,
    ) -> usize {
        out.clear();
        let room = match dir {
            Direction::Forward => self.len() - i.max(j),
            Direction::Backward => i.min(j) + 1,
        };
        let limit = limit.min(room);
        let step = |x: usize, t: usize| match dir {
            Direction::Forward => x + t,
            Direction::Backward => x - t,
        };
        let mut t = 0;
        loop {
            t += self.extend(step(i, t), step(j, t), dir, limit - t);
            if t >= limit || out.len() == k {
                return t;
            }
            out.push(t);
            t += 1;
            if t >= limit {
                return t;
            }
        }
    }

    /// Extension of `base` from `from` against `Q^inf`, where
    /// `Q = base[q_start..q_start + q_len]` read in `dir` (backward reads `Q`
    /// from its last symbol), with at most `k` mismatches and capped at
    /// `limit`.
    pub fn lce_k_vs_power(
        &self,
        q_start: usize,
        q_len: usize,
        from: usize,
        k: usize,
        dir: Direction,
        limit: usize,
    ) -> Extension {
        assert!(q_len > 0, "period block must be non-empty");
        let room = match dir {
            Direction::Forward => self.len() - from,
            Direction::Backward => from + 1,
        };
        let limit = limit.min(room);
        // Position of the phase-0 symbol of Q when reading in `dir`.
        let q_head = match dir {
            Direction::Forward => q_start,
            Direction::Backward => q_start + q_len - 1,
        };
        let step = |x: usize, t: usize| match dir {
            Direction::Forward => x + t,
            Direction::Backward => x - t,
        };
        let mut mismatches = Vec::new();
        let mut t = 0;
        loop {
            let phase = t % q_len;
            t += self.match_power(q_head, q_len, phase, step(from, t), dir, limit - t);
            if t >= limit || mismatches.len() == k {
                break;
            }
            mismatches.push(t);
            t += 1;
            if t >= limit {
                break;
            }
        }
        Extension {
            length: t,
            mismatches,
        }
    }

    /// Exact extension of `base` from `at` against `Q^inf` starting at
    /// `phase`.
    fn match_power(
        &self,
        q_head: usize,
        q_len: usize,
        phase: usize,
        at: usize,
        dir: Direction,
        limit: usize,
    ) -> usize {
        let step = |x: usize, t: usize| match dir {
            Direction::Forward => x + t,
            Direction::Backward => x - t,
        };
        let mut done = 0;
        if phase > 0 {
            let head = q_len - phase;
            let l = self.extend(step(q_head, phase), at, dir, head.min(limit));
            if l < head || l >= limit {
                return l;
            }
            done = head;
        }
        // Now aligned with phase 0.
        let at = step(at, done);
        let limit = limit - done;
        let l = self.extend(q_head, at, dir, q_len.min(limit));
        if l < q_len || l >= limit {
            return done + l;
        }
        // base[at..] starts with Q; it continues Q^inf exactly as far as it
        // keeps period q_len.
        done + q_len + self.extend(at, step(at, q_len), dir, limit - q_len)
    }

    /// Exact occurrences of `F = base[f_start..f_start + f_len]` inside
    /// `G = base[g_start..g_start + g_len]` as positions of `base`, grouped
    /// into maximal progressions with difference `per(F)`.
    ///
    /// Runs a failure-function scan, linear in `f_len + g_len`.
    pub fn fragment_occurrences(
        &self,
        f_start: usize,
        f_len: usize,
        g_start: usize,
        g_len: usize,
    ) -> Result<Vec<ArithmeticOccurrences>> {
        if f_len == 0 {
            return Err(Error::EmptyFragment);
        }
        let f = &self.base[f_start..f_start + f_len];
        let g = &self.base[g_start..g_start + g_len];
        let fail = failure_function(f);
        let period = f_len - fail[f_len - 1];
        let mut groups: Vec<ArithmeticOccurrences> = Vec::new();
        let mut matched = 0;
        for (pos, &c) in g.iter().enumerate() {
            while matched > 0 && (matched == f_len || f[matched] != c) {
                matched = fail[matched - 1];
            }
            if f[matched] == c {
                matched += 1;
            }
            if matched == f_len {
                let start = g_start + pos + 1 - f_len;
                match groups.last_mut() {
                    Some(g) if g.last() + period == start => g.count += 1,
                    _ => groups.push(ArithmeticOccurrences {
                        first: start,
                        difference: period,
                        count: 1,
                    }),
                }
            }
        }
        Ok(groups)
    }
}

/// `fail[i]` is the length of the longest proper border of `s[..=i]`.
pub fn failure_function(s: &[u32]) -> Vec<usize> {
    let mut fail = vec![0; s.len()];
    let mut b = 0;
    for i in 1..s.len() {
        while b > 0 && s[i] != s[b] {
            b = fail[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        fail[i] = b;
    }
    fail
}

/// Smallest `q >= 1` such that `s[i] == s[i + q]` for all valid `i`.
pub fn smallest_period(s: &[u32]) -> usize {
    if s.is_empty() {
        return 0;
    }
    s.len() - failure_function(s)[s.len() - 1]
}
