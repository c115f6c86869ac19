//! Occurrences with a fixed anchor, occurrences aligning a given pair of
//! positions, and the mark counter used to pick anchors worth verifying.

use crate::geometry::Interval;
use crate::index::{Direction, TextIndex};
use crate::light::light_fragments_with;

/// Index over `P P # T $` answering anchor queries for one text (or one
/// window of a text).
#[derive(Debug, Clone)]
pub struct AnchorContext {
    index: TextIndex,
    m: usize,
    n: usize,
    k: usize,
}

/// Reusable buffers for [`AnchorContext::anchor_match_into`].
#[derive(Debug, Default, Clone)]
pub struct AnchorScratch {
    left: Vec<usize>,
    right: Vec<usize>,
    ones: Vec<usize>,
}

impl AnchorContext {
    /// `pattern` and `text` must use symbols below `sigma`.
    pub fn new(pattern: &[u32], text: &[u32], sigma: u32, k: usize) -> Self {
        assert!(!pattern.is_empty(), "pattern must not be empty");
        let m = pattern.len();
        let mut base = Vec::with_capacity(2 * m + text.len() + 2);
        base.extend_from_slice(pattern);
        base.extend_from_slice(pattern);
        base.push(sigma);
        base.extend_from_slice(text);
        base.push(sigma + 1);
        AnchorContext {
            index: TextIndex::from_symbols(base),
            m,
            n: text.len(),
            k,
        }
    }

    pub fn index(&self) -> &TextIndex {
        &self.index
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Offset of `T[0]` inside the indexed string.
    pub fn text_offset(&self) -> usize {
        2 * self.m + 1
    }

    pub fn heap_cells(&self) -> usize {
        self.index.heap_cells()
    }

    /// Start positions of `k`-occurrences whose anchor is `a`, as disjoint
    /// sorted intervals.
    pub fn anchor_match(&self, a: usize) -> Vec<Interval> {
        let mut out = Vec::new();
        self.anchor_match_into(a, &mut AnchorScratch::default(), &mut out);
        out
    }

    /// As [`AnchorContext::anchor_match`], appending to `out`.
    pub fn anchor_match_into(
        &self,
        a: usize,
        scratch: &mut AnchorScratch,
        out: &mut Vec<Interval>,
    ) {
        let (m, n, k) = (self.m, self.n, self.k);
        if a >= n || n < m {
            return;
        }
        let t0 = self.text_offset();
        // L: suffix of T[..a] against a suffix of P; R: T[a..] against P.
        let left_len = if a == 0 {
            scratch.left.clear();
            0
        } else {
            let limit = a.min(m - 1);
            self.index.lce_k_into(
                t0 + a - 1,
                2 * m - 1,
                k,
                Direction::Backward,
                limit,
                &mut scratch.left,
            )
        };
        let right_len = self.index.lce_k_into(
            t0 + a,
            0,
            k,
            Direction::Forward,
            (n - a).min(m),
            &mut scratch.right,
        );
        if left_len + right_len < m {
            return;
        }
        scratch.ones.clear();
        scratch
            .ones
            .extend(scratch.left.iter().rev().map(|&t| left_len - 1 - t));
        scratch
            .ones
            .extend(scratch.right.iter().map(|&t| left_len + t));
        let clip = Interval::new(a.saturating_sub(m - 1), a.min(n - m));
        let start = a - left_len;
        light_fragments_with(&scratch.ones, left_len + right_len, m, k, |iv| {
            let mapped = Interval::new(start + iv.lo(), start + iv.hi()).intersect(&clip);
            if !mapped.is_empty() {
                out.push(mapped);
            }
        });
    }

    /// Start positions of `k`-occurrences for which `T[i]` is aligned with
    /// `P[j]`.
    pub fn pair_match(&self, i: usize, j: usize) -> Vec<Interval> {
        let mut out = Vec::new();
        self.pair_match_into(i, j, &mut AnchorScratch::default(), &mut out);
        out
    }

    pub fn pair_match_into(
        &self,
        i: usize,
        j: usize,
        scratch: &mut AnchorScratch,
        out: &mut Vec<Interval>,
    ) {
        assert!(i < self.n && j < self.m);
        let range = Interval::new(i.saturating_sub(self.m - 1), i);
        let mut buf = Vec::new();
        for a in pair_anchors(i, j, self.m, self.n) {
            buf.clear();
            self.anchor_match_into(a, scratch, &mut buf);
            out.extend(
                buf.iter()
                    .map(|iv| iv.intersect(&range))
                    .filter(|iv| !iv.is_empty()),
            );
        }
    }
}

/// The (at most two, deduplicated) in-range anchors of occurrences
/// aligning `T[i]` with `P[j]`.
pub fn pair_anchors(i: usize, j: usize, m: usize, n: usize) -> impl Iterator<Item = usize> {
    let first = i.checked_sub(j);
    let second = Some(i + m - j).filter(|&a| a < n && j != 0);
    first.into_iter().chain(second)
}

/// Per-anchor mark counters over `[0, len)`.
#[derive(Debug, Clone)]
pub struct MarkTable {
    counts: Vec<u32>,
    touched: Vec<usize>,
    m: usize,
    threshold: u32,
}

impl MarkTable {
    /// Threshold is `k + 2`.
    pub fn new(len: usize, m: usize, k: usize) -> Self {
        MarkTable {
            counts: vec![0; len],
            touched: Vec::new(),
            m,
            threshold: k as u32 + 2,
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn count(&self, a: usize) -> u32 {
        self.counts[a]
    }

    pub fn heap_cells(&self) -> usize {
        self.counts.capacity() + self.touched.capacity()
    }

    /// Marks the anchors `i - j` and `i + m - j` that fall in range.
    pub fn deposit_marks(&mut self, i: usize, j: usize) {
        for a in pair_anchors(i, j, self.m, self.counts.len()) {
            if self.counts[a] == 0 {
                self.touched.push(a);
            }
            self.counts[a] += 1;
        }
    }

    /// Sorted anchors with at least `k + 2` marks.
    pub fn heavy_anchors(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .touched
            .iter()
            .copied()
            .filter(|&a| self.counts[a] >= self.threshold)
            .collect();
        out.sort_unstable();
        out
    }

    /// Clears all counters in time proportional to the marked anchors.
    pub fn reset(&mut self) {
        for &a in &self.touched {
            self.counts[a] = 0;
        }
        self.touched.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{brute_force_cpm, rotation_distance, Sequence};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn ctx(p: &str, t: &str, k: usize) -> AnchorContext {
        AnchorContext::new(&ranks(p), &ranks(t), 256, k)
    }

    fn ranks(s: &str) -> Vec<u32> {
        s.bytes().map(u32::from).collect()
    }

    fn expand(intervals: &[Interval]) -> BTreeSet<usize> {
        intervals.iter().flat_map(|i| i.iter()).collect()
    }

    /// `{p : some rotation x with anchor a is within distance k}`.
    fn anchor_oracle(t: &[u32], p: &[u32], k: usize, a: usize) -> BTreeSet<usize> {
        let (n, m) = (t.len(), p.len());
        let mut out = BTreeSet::new();
        if n < m {
            return out;
        }
        for pos in 0..=n - m {
            for x in 0..m {
                if pos + (m - x) % m == a && rotation_distance(&t[pos..pos + m], p, x, k).is_some()
                {
                    out.insert(pos);
                }
            }
        }
        out
    }

    fn pair_oracle(t: &[u32], p: &[u32], k: usize, i: usize, j: usize) -> BTreeSet<usize> {
        let (n, m) = (t.len(), p.len());
        let mut out = BTreeSet::new();
        if n < m {
            return out;
        }
        for pos in 0..=n - m {
            if i < pos || i >= pos + m {
                continue;
            }
            for x in 0..m {
                // T[i] is aligned with rot_x(P)[i - pos] = P[(x + i - pos) mod m].
                if (x + i - pos) % m == j && rotation_distance(&t[pos..pos + m], p, x, k).is_some()
                {
                    out.insert(pos);
                }
            }
        }
        out
    }

    #[test]
    fn worked_anchor_instance() {
        let p = "abaababaabaababa";
        let t = "bbaabaaaabaaaabbababbababbaabaab";
        let c = ctx(p, t, 3);
        let got = c.anchor_match(16);
        assert_eq!(
            got,
            vec![
                Interval::new(1, 3),
                Interval::new(7, 8),
                Interval::new(13, 14)
            ]
        );
        assert_eq!(expand(&got), anchor_oracle(&ranks(t), &ranks(p), 3, 16));
    }

    #[test]
    fn identical_strings() {
        let c = ctx("abcab", "abcab", 0);
        assert_eq!(c.anchor_match(0), vec![Interval::point(0)]);
        assert_eq!(c.pair_match(0, 0), vec![Interval::point(0)]);
    }

    #[test]
    fn worked_pair_instance() {
        let c = ctx("aabbbb", "aaccbbxbaaab", 1);
        assert!(expand(&c.pair_match(8, 0)).contains(&4));
    }

    #[test]
    fn pair_anchors_deduplicate_trivial_rotation() {
        assert_eq!(pair_anchors(5, 0, 4, 20).collect::<Vec<_>>(), vec![5]);
        assert_eq!(pair_anchors(5, 2, 4, 20).collect::<Vec<_>>(), vec![3, 7]);
        assert_eq!(pair_anchors(1, 2, 4, 20).collect::<Vec<_>>(), vec![3]);
        assert_eq!(pair_anchors(5, 2, 4, 7).collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn mark_threshold_boundary() {
        let mut t = MarkTable::new(20, 4, 1);
        assert!(t.heavy_anchors().is_empty());
        t.deposit_marks(5, 2);
        assert_eq!((t.count(3), t.count(7)), (1, 1));
        t.deposit_marks(6, 3);
        assert!(t.heavy_anchors().is_empty());
        assert_eq!((t.count(3), t.count(7)), (2, 2));
        t.deposit_marks(3, 0);
        assert_eq!(t.heavy_anchors(), vec![3]);
        t.reset();
        assert_eq!(t.count(3), 0);
        assert!(t.heavy_anchors().is_empty());
    }

    fn instance(max_n: usize, max_m: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>, usize)> {
        (1u32..=4, 1..=max_m, 0usize..=max_n, 0usize..4).prop_flat_map(
            move |(sigma, m, extra, k)| {
                (
                    prop::collection::vec(0..sigma, m + extra),
                    prop::collection::vec(0..sigma, m),
                    Just(k),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]

        #[test]
        fn anchor_match_equals_oracle((t, p, k) in instance(30, 10), pick in any::<prop::sample::Index>()) {
            let c = AnchorContext::new(&p, &t, 4, k);
            let a = pick.index(t.len());
            let got = c.anchor_match(a);
            prop_assert!(got.windows(2).all(|w| w[0].hi() < w[1].lo()));
            let set = expand(&got);
            prop_assert_eq!(&set, &anchor_oracle(&t, &p, k, a));
            let m = p.len();
            prop_assert!(set.iter().all(|&pos| pos + m > a && pos <= a && pos + m <= t.len()));
        }

        #[test]
        fn pair_match_equals_oracle((t, p, k) in instance(30, 10), pi in any::<prop::sample::Index>(), pj in any::<prop::sample::Index>()) {
            let c = AnchorContext::new(&p, &t, 4, k);
            let (i, j) = (pi.index(t.len()), pj.index(p.len()));
            prop_assert_eq!(expand(&c.pair_match(i, j)), pair_oracle(&t, &p, k, i, j));
        }

        #[test]
        fn anchor_sweep_equals_brute_force((t, p, k) in instance(40, 12)) {
            let c = AnchorContext::new(&p, &t, 4, k);
            let got: BTreeSet<usize> = (0..t.len()).flat_map(|a| expand(&c.anchor_match(a))).collect();
            let text = Sequence::from_ranks(t.clone());
            let pattern = Sequence::from_ranks(p.clone());
            let expected: BTreeSet<usize> = brute_force_cpm(&text, &pattern, k).positions().into_iter().collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn marks_equal_tally(len in 1usize..40, m in 1usize..10, k in 0usize..4,
                             deposits in prop::collection::vec((0usize..40, 0usize..10), 0..60)) {
            let mut table = MarkTable::new(len, m, k);
            let mut tally = vec![0u32; len];
            for &(i, j) in &deposits {
                let (i, j) = (i % len, j % m);
                table.deposit_marks(i, j);
                if i >= j { tally[i - j] += 1; }
                if j != 0 && i + m - j < len { tally[i + m - j] += 1; }
            }
            for (a, &c) in tally.iter().enumerate() {
                prop_assert_eq!(table.count(a), c);
            }
            let heavy: Vec<usize> = (0..len).filter(|&a| tally[a] >= k as u32 + 2).collect();
            prop_assert_eq!(table.heavy_anchors(), heavy);
        }
    }
}
