//! Counting problems over sparse binary strings: which length-`m` windows
//! carry at most `k` ones, and the aligned variant over two strings with a
//! residue constraint between window starts.

use crate::error::{Error, Result};
use crate::geometry::{mod_filter, Interval, IntervalChain};

/// Binary string of length `len` given by its sorted non-zero positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseBinaryString {
    len: usize,
    ones: Vec<usize>,
}

impl SparseBinaryString {
    pub fn new(len: usize, ones: Vec<usize>) -> Result<Self> {
        let sorted = ones.windows(2).all(|w| w[0] < w[1]);
        if !sorted || ones.last().is_some_and(|&x| x >= len) {
            return Err(Error::InvalidSparseString { len });
        }
        Ok(SparseBinaryString { len, ones })
    }

    /// Sorts and deduplicates `ones` first.
    pub fn from_unsorted(len: usize, mut ones: Vec<usize>) -> Result<Self> {
        ones.sort_unstable();
        ones.dedup();
        Self::new(len, ones)
    }

    pub fn zeros(len: usize) -> Self {
        SparseBinaryString {
            len,
            ones: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn into_ones(self) -> Vec<usize> {
        self.ones
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    /// Number of ones in `[i, i + m)`.
    pub fn window_weight(&self, i: usize, m: usize) -> usize {
        let lo = self.ones.partition_point(|&x| x < i);
        let hi = self.ones.partition_point(|&x| x < i + m);
        hi - lo
    }
}

/// Partition of the window starts `[0, len - m]` into maximal intervals on
/// which the window weight is constant, with that weight.
pub fn weight_pieces(v: &SparseBinaryString, m: usize) -> Vec<(Interval, usize)> {
    assert!(m >= 1, "window length must be positive");
    if v.len < m {
        return Vec::new();
    }
    let last = v.len - m;
    // A one at x is inside window i for i in [x + 1 - m, x].
    let enters = v.ones.iter().map(|&x| (x + 1).saturating_sub(m));
    let leaves = v.ones.iter().map(|&x| x + 1);
    let mut cuts: Vec<usize> = Vec::with_capacity(2 * v.ones.len());
    merge_sorted(enters, leaves, |c| {
        if c > 0 && c <= last && cuts.last() != Some(&c) {
            cuts.push(c);
        }
    });

    let mut pieces: Vec<(Interval, usize)> = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    let mut weight = v.window_weight(0, m);
    let (mut e, mut l) = (0, 0);
    // Skip events at or before position 0; they are already in `weight`.
    let enter_at = |j: usize| (v.ones[j] + 1).saturating_sub(m);
    while e < v.ones.len() && enter_at(e) == 0 {
        e += 1;
    }
    for &cut in cuts.iter().chain(std::iter::once(&(last + 1))) {
        let mut next = weight;
        if cut <= last {
            while e < v.ones.len() && enter_at(e) <= cut {
                next += 1;
                e += 1;
            }
            while l < v.ones.len() && v.ones[l] < cut {
                next -= 1;
                l += 1;
            }
        }
        if next != weight || cut > last {
            pieces.push((Interval::new(start, cut - 1), weight));
            start = cut;
            weight = next;
        }
    }
    pieces
}

fn merge_sorted(
    a: impl Iterator<Item = usize>,
    b: impl Iterator<Item = usize>,
    mut emit: impl FnMut(usize),
) {
    let mut a = a.peekable();
    let mut b = b.peekable();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) if x <= y => a.next(),
            (Some(_), Some(_)) => b.next(),
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => return,
        };
        emit(next.unwrap());
    }
}

/// `{i : weight of V[i..i+m] <= k}` as sorted disjoint intervals, in time
/// linear in the number of ones.
pub fn light_fragments(v: &SparseBinaryString, m: usize, k: usize) -> Vec<Interval> {
    let mut out = Vec::new();
    light_fragments_with(&v.ones, v.len, m, k, |iv| out.push(iv));
    out
}

/// Sweep behind [`light_fragments`] over raw sorted `ones` of a string of
/// length `len`; intervals are passed to `emit` in increasing order.
pub fn light_fragments_with(
    ones: &[usize],
    len: usize,
    m: usize,
    k: usize,
    mut emit: impl FnMut(Interval),
) {
    assert!(m >= 1, "window length must be positive");
    if len < m {
        return;
    }
    let last = len - m;
    // ones[a..b] are the ones inside the window starting at i.
    let (mut a, mut b) = (0, ones.partition_point(|&x| x < m));
    let mut i = 0;
    let mut open: Option<usize> = None;
    while i <= last {
        let leave = if a < b { ones[a] + 1 } else { usize::MAX };
        let enter = if b < ones.len() {
            ones[b] + 1 - m
        } else {
            usize::MAX
        };
        let next = leave.min(enter).min(last + 1);
        if b - a <= k {
            open.get_or_insert(i);
        } else if let Some(start) = open.take() {
            emit(Interval::new(start, i - 1));
        }
        i = next;
        while a < ones.len() && ones[a] < i {
            a += 1;
        }
        while b < ones.len() && ones[b] < i + m {
            b += 1;
        }
    }
    if let Some(start) = open {
        emit(Interval::new(start, last));
    }
}

/// Circular arc of residues `start, start + 1, ..., start + len - 1 (mod q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Arc {
    start: usize,
    len: usize,
}

/// Residues of the intervals modulo `q` as merged arcs; `None` if they cover
/// every residue.
fn residue_arcs(intervals: &[Interval], q: usize) -> Option<Vec<Arc>> {
    let mut arcs: Vec<Arc> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        if iv.len() >= q {
            return None;
        }
        arcs.push(Arc {
            start: iv.lo() % q,
            len: iv.len(),
        });
    }
    arcs.sort_unstable_by_key(|a| a.start);
    let mut merged: Vec<Arc> = Vec::with_capacity(arcs.len());
    for a in arcs {
        match merged.last_mut() {
            Some(last) if a.start <= last.start + last.len => {
                last.len = last.len.max(a.start + a.len - last.start);
            }
            _ => merged.push(a),
        }
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = *merged.last().unwrap();
        if last.start + last.len >= q + first.start {
            merged.pop();
            merged[0] = Arc {
                start: last.start,
                len: (first.start + first.len + q - last.start).max(last.len),
            };
        }
    }
    if merged.iter().any(|a| a.len >= q) {
        return None;
    }
    Some(merged)
}

/// `{i : exists j ≡ i (mod q) with weight(U[i..i+m]) + weight(V[j..j+m]) <= k}`
/// as chains with difference `q`. The first argument carries the output
/// index.
///
/// Window starts of both strings are cut into pieces of constant weight; for
/// each piece `Z` of `U`, the admissible starts of `V` are reduced to residue
/// arcs modulo `q` and each arc is filtered out of `Z` with [`mod_filter`].
/// Consecutive pieces of `U` admitting the same arcs are filtered together.
pub fn aligned_light_sum(
    u: &SparseBinaryString,
    v: &SparseBinaryString,
    m: usize,
    k: usize,
    q: usize,
) -> Vec<IntervalChain> {
    assert!(m >= 1 && q >= 1);
    let u_pieces = weight_pieces(u, m);
    let v_pieces = weight_pieces(v, m);
    if u_pieces.is_empty() || v_pieces.is_empty() {
        return Vec::new();
    }
    let v_min = v_pieces.iter().map(|p| p.1).min().unwrap();

    // Admissible V starts for each U budget, as residue arcs.
    let arcs_for = |budget: usize| -> Option<Vec<Arc>> {
        let mut allowed: Vec<Interval> = Vec::new();
        for &(piece, w) in &v_pieces {
            if w > budget {
                continue;
            }
            match allowed.last_mut() {
                Some(last) if last.hi() + 1 == piece.lo() => {
                    *last = Interval::new(last.lo(), piece.hi())
                }
                _ => allowed.push(piece),
            }
        }
        residue_arcs(&allowed, q)
    };

    // Groups of consecutive U pieces sharing the same admissible arcs.
    let mut groups: Vec<(Interval, Option<Vec<Arc>>)> = Vec::new();
    for &(piece, w) in &u_pieces {
        if w + v_min > k {
            continue;
        }
        let arcs = arcs_for(k - w);
        match groups.last_mut() {
            Some((z, a)) if z.hi() + 1 == piece.lo() && *a == arcs => {
                *z = Interval::new(z.lo(), piece.hi())
            }
            _ => groups.push((piece, arcs)),
        }
    }

    let mut out = Vec::new();
    for (z, arcs) in groups {
        match arcs {
            None => out.push(IntervalChain::single(z, q)),
            Some(arcs) => {
                for a in arcs {
                    out.extend(mod_filter(
                        z,
                        Interval::new(a.start, a.start + a.len - 1),
                        q,
                    ));
                }
            }
        }
    }
    out
}
