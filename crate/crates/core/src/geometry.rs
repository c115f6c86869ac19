//! Intervals and interval chains.
//!
//! `Chain_q(I, a) = I ∪ (I + q) ∪ ... ∪ (I + aq)` is stored as four integers.
//! Laid out on a grid of width `q` (row `r`, column `c` holds `rq + c`), every
//! chain is a union of at most three axis-aligned rectangles, so a batch of
//! chains with one common difference is unioned with 2D difference counts in
//! time linear in the universe plus the number of chains.

use std::fmt;

use crate::error::{Error, Result};

/// Inclusive range of positions; every empty interval compares equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: usize,
    hi: usize,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: 1, hi: 0 };

    #[inline]
    pub fn new(lo: usize, hi: usize) -> Self {
        if hi < lo {
            Self::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn point(x: usize) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Intersection of `[lo, hi]` with the non-negative integers, for signed
    /// endpoints.
    pub fn clamped(lo: i64, hi: i64) -> Self {
        if hi < 0 || hi < lo {
            Self::EMPTY
        } else {
            Interval::new(lo.max(0) as usize, hi as usize)
        }
    }

    #[inline]
    pub fn lo(&self) -> usize {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> usize {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    #[inline]
    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// `I ⊕ r`, clipped to the non-negative integers.
    pub fn shift(&self, r: i64) -> Interval {
        if self.is_empty() {
            return Self::EMPTY;
        }
        Interval::clamped(self.lo as i64 + r, self.hi as i64 + r)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        if self.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.lo..=self.hi
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Sorts and merges overlapping or adjacent intervals.
pub fn union_intervals(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.retain(|i| !i.is_empty());
    intervals.sort_unstable_by_key(|i| (i.lo, i.hi));
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for i in intervals {
        match out.last_mut() {
            Some(last) if i.lo <= last.hi + 1 => last.hi = last.hi.max(i.hi),
            _ => out.push(i),
        }
    }
    out
}

/// `Chain_q(I, a)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalChain {
    pub base: Interval,
    pub difference: usize,
    pub count: usize,
}

impl IntervalChain {
    pub fn new(base: Interval, difference: usize, count: usize) -> Self {
        assert!(difference >= 1, "chain difference must be positive");
        IntervalChain {
            base,
            difference,
            count,
        }
    }

    /// A plain interval as a chain with a single copy.
    pub fn single(base: Interval, difference: usize) -> Self {
        Self::new(base, difference, 0)
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Smallest interval containing the chain.
    pub fn span(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        Interval::new(self.base.lo, self.base.hi + self.count * self.difference)
    }

    pub fn contains(&self, x: usize) -> bool {
        if self.is_empty() || x < self.base.lo {
            return false;
        }
        let span = self.span();
        if x > span.hi {
            return false;
        }
        if self.base.len() >= self.difference {
            return true;
        }
        // Largest copy start not after x.
        let t = ((x - self.base.lo) / self.difference).min(self.count);
        x <= self.base.hi + t * self.difference
    }

    /// Copies `I + tq` in increasing order.
    pub fn copies(&self) -> impl Iterator<Item = Interval> + '_ {
        let n = if self.is_empty() { 0 } else { self.count + 1 };
        (0..n).map(move |t| {
            let d = t * self.difference;
            Interval::new(self.base.lo + d, self.base.hi + d)
        })
    }
}

impl fmt::Debug for IntervalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chain_{}({:?}, {})",
            self.difference, self.base, self.count
        )
    }
}

/// Every element of the chain, ascending and without repeats.
pub fn chain_elements(c: &IntervalChain) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for copy in c.copies() {
        let start = match out.last() {
            Some(&last) if last >= copy.lo => last + 1,
            _ => copy.lo,
        };
        out.extend(start..=copy.hi);
    }
    out
}

/// `Chain ⊕ r` clipped to the non-negative integers. A negative shift can cut
/// the first surviving copy, so the result takes up to two chains.
pub fn shift_chain(c: &IntervalChain, r: i64) -> Vec<IntervalChain> {
    if c.is_empty() {
        return Vec::new();
    }
    let q = c.difference;
    if c.base.len() >= q {
        let span = c.span().shift(r);
        return if span.is_empty() {
            Vec::new()
        } else {
            vec![IntervalChain::single(span, q)]
        };
    }
    if r >= 0 {
        let r = r as usize;
        return vec![IntervalChain::new(
            Interval::new(c.base.lo + r, c.base.hi + r),
            q,
            c.count,
        )];
    }
    let d = r.unsigned_abs() as usize;
    let (lo, hi) = (c.base.lo, c.base.hi);
    let first = if hi >= d { 0 } else { (d - hi).div_ceil(q) };
    if first > c.count {
        return Vec::new();
    }
    let start = lo + first * q;
    if start >= d {
        return vec![IntervalChain::new(
            Interval::new(start - d, hi + first * q - d),
            q,
            c.count - first,
        )];
    }
    let mut out = vec![IntervalChain::single(
        Interval::new(0, hi + first * q - d),
        q,
    )];
    if first < c.count {
        let next = first + 1;
        out.push(IntervalChain::new(
            Interval::new(lo + next * q - d, hi + next * q - d),
            q,
            c.count - next,
        ));
    }
    out
}

/// Elements of the chain inside `range`, as up to three chains.
pub fn clip_chain(c: &IntervalChain, range: Interval) -> Vec<IntervalChain> {
    if c.is_empty() || range.is_empty() {
        return Vec::new();
    }
    let q = c.difference;
    if c.base.len() >= q {
        let span = c.span().intersect(&range);
        return if span.is_empty() {
            Vec::new()
        } else {
            vec![IntervalChain::single(span, q)]
        };
    }
    let (lo, hi) = (c.base.lo, c.base.hi);
    // Copies t in [first, last] touch the range.
    let first = if range.lo > hi {
        (range.lo - hi).div_ceil(q)
    } else {
        0
    };
    if range.hi < lo {
        return Vec::new();
    }
    let last = ((range.hi - lo) / q).min(c.count);
    if first > last {
        return Vec::new();
    }
    let copy = |t: usize| Interval::new(lo + t * q, hi + t * q);
    let mut out = Vec::with_capacity(3);
    let head = copy(first).intersect(&range);
    if first == last {
        out.push(IntervalChain::single(head, q));
        return out;
    }
    let tail = copy(last).intersect(&range);
    let mut middle = (first + 1, last - 1);
    if head == copy(first) {
        middle.0 = first;
    } else {
        out.push(IntervalChain::single(head, q));
    }
    let tail_full = tail == copy(last);
    if tail_full {
        middle.1 = last;
    }
    if middle.0 <= middle.1 {
        out.push(IntervalChain::new(copy(middle.0), q, middle.1 - middle.0));
    }
    if !tail_full {
        out.push(IntervalChain::single(tail, q));
    }
    out
}

/// Inclusive rectangle of grid cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rectangle {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl Rectangle {
    fn new(r1: usize, r2: usize, c1: usize, c2: usize) -> Self {
        Rectangle {
            rows: (r1, r2),
            cols: (c1, c2),
        }
    }
}

/// Rectangles of the width-`q` grid whose cells are exactly `[lo, hi]`.
fn interval_rectangles(iv: Interval, q: usize, out: &mut Vec<Rectangle>) {
    if iv.is_empty() {
        return;
    }
    let (r_lo, c_lo) = (iv.lo / q, iv.lo % q);
    let (r_hi, c_hi) = (iv.hi / q, iv.hi % q);
    if r_lo == r_hi {
        out.push(Rectangle::new(r_lo, r_lo, c_lo, c_hi));
        return;
    }
    let band_lo = if c_lo == 0 { r_lo } else { r_lo + 1 };
    let band_hi = if c_hi == q - 1 { r_hi } else { r_hi - 1 };
    if c_lo != 0 {
        out.push(Rectangle::new(r_lo, r_lo, c_lo, q - 1));
    }
    if band_lo <= band_hi {
        out.push(Rectangle::new(band_lo, band_hi, 0, q - 1));
    }
    if c_hi != q - 1 {
        out.push(Rectangle::new(r_hi, r_hi, 0, c_hi));
    }
}

/// At most three rectangles of the grid of width `c.difference` covering
/// exactly the chain.
pub fn chain_to_rectangles(c: &IntervalChain) -> Vec<Rectangle> {
    let mut out = Vec::with_capacity(3);
    push_chain_rectangles(c, &mut out);
    out
}

fn push_chain_rectangles(c: &IntervalChain, out: &mut Vec<Rectangle>) {
    if c.is_empty() {
        return;
    }
    let q = c.difference;
    let len = c.base.len();
    if len >= q || c.count == 0 {
        interval_rectangles(c.span(), q, out);
        return;
    }
    let (r0, c0) = (c.base.lo / q, c.base.lo % q);
    let end = c0 + len - 1;
    if end < q {
        out.push(Rectangle::new(r0, r0 + c.count, c0, end));
    } else {
        out.push(Rectangle::new(r0, r0 + c.count, c0, q - 1));
        out.push(Rectangle::new(r0 + 1, r0 + c.count + 1, 0, end - q));
    }
}

/// 2D difference counts over the width-`q` grid covering `[0, n]`.
#[derive(Debug, Clone)]
pub struct GridAccumulator {
    width: usize,
    n: usize,
    rows: usize,
    cells: Vec<i32>,
    scratch: Vec<Rectangle>,
}

impl GridAccumulator {
    pub fn new(n: usize, width: usize) -> Self {
        assert!(width >= 1, "grid width must be positive");
        let rows = n / width + 1;
        GridAccumulator {
            width,
            n,
            rows,
            cells: vec![0; (rows + 1) * (width + 1)],
            scratch: Vec::with_capacity(3),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn heap_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn reset(&mut self) {
        self.cells.iter_mut().for_each(|c| *c = 0);
    }

    #[inline]
    fn bump(&mut self, row: usize, col: usize, delta: i32) {
        self.cells[row * (self.width + 1) + col] += delta;
    }

    fn add_rectangle(&mut self, r: Rectangle) {
        let (r1, r2) = r.rows;
        let (c1, c2) = r.cols;
        debug_assert!(r2 < self.rows && c2 < self.width);
        self.bump(r1, c1, 1);
        self.bump(r2 + 1, c1, -1);
        self.bump(r1, c2 + 1, -1);
        self.bump(r2 + 1, c2 + 1, 1);
    }

    /// Adds a chain whose difference equals the grid width.
    pub fn add_chain(&mut self, c: &IntervalChain) -> Result<()> {
        if c.is_empty() {
            return Ok(());
        }
        if c.difference != self.width {
            return Err(Error::MixedDifferences {
                expected: self.width,
                found: c.difference,
            });
        }
        debug_assert!(c.span().hi <= self.n, "{c:?} outside [0, {}]", self.n);
        let mut rects = std::mem::take(&mut self.scratch);
        rects.clear();
        push_chain_rectangles(c, &mut rects);
        for &r in &rects {
            self.add_rectangle(r);
        }
        self.scratch = rects;
        Ok(())
    }

    /// Adds a plain interval; valid for any width.
    pub fn add_interval(&mut self, iv: Interval) {
        if iv.is_empty() {
            return;
        }
        debug_assert!(iv.hi <= self.n);
        let mut rects = std::mem::take(&mut self.scratch);
        rects.clear();
        interval_rectangles(iv, self.width, &mut rects);
        for &r in &rects {
            self.add_rectangle(r);
        }
        self.scratch = rects;
    }

    /// Runs the prefix sums in place and returns the covered positions as
    /// sorted disjoint intervals. The accumulator is left zeroed.
    pub fn finalize(&mut self) -> Vec<Interval> {
        let w = self.width + 1;
        for r in 0..=self.rows {
            for c in 1..w {
                self.cells[r * w + c] += self.cells[r * w + c - 1];
            }
        }
        for r in 1..=self.rows {
            for c in 0..w {
                self.cells[r * w + c] += self.cells[(r - 1) * w + c];
            }
        }
        let mut out: Vec<Interval> = Vec::new();
        for pos in 0..=self.n {
            let (r, c) = (pos / self.width, pos % self.width);
            if self.cells[r * w + c] > 0 {
                match out.last_mut() {
                    Some(last) if last.hi + 1 == pos => last.hi = pos,
                    _ => out.push(Interval::point(pos)),
                }
            }
        }
        self.reset();
        out
    }
}

/// Union of chains sharing difference `q`, all inside `[0, n]`.
pub fn union_chains(chains: &[IntervalChain], n: usize, q: usize) -> Result<Vec<Interval>> {
    let mut grid = GridAccumulator::new(n, q);
    for c in chains {
        grid.add_chain(c)?;
    }
    Ok(grid.finalize())
}

/// `{z in Z : z ≡ x (mod q) for some x in X}` as at most three disjoint
/// chains with difference `q`, in increasing order.
pub fn mod_filter(z: Interval, x: Interval, q: usize) -> Vec<IntervalChain> {
    assert!(q >= 1, "stride must be positive");
    if z.is_empty() || x.is_empty() {
        return Vec::new();
    }
    let len = x.len();
    if len >= q {
        return vec![IntervalChain::single(z, q)];
    }
    let (zl, zh) = (z.lo as i64, z.hi as i64);
    let (qi, li) = (q as i64, len as i64);
    let r0 = (x.lo % q) as i64;
    // Start of the residue block containing or preceding z.lo.
    let b0 = zl - (zl - r0).rem_euclid(qi);
    let last = (zh - b0) / qi;
    let block = |t: i64| (b0 + t * qi, b0 + t * qi + li - 1);
    let full = |t: i64| {
        let (a, b) = block(t);
        a >= zl && b <= zh
    };
    let first_full = if full(0) { 0 } else { 1 };
    let last_full = if full(last) { last } else { last - 1 };
    let piece = |t: i64| {
        let (a, b) = block(t);
        Interval::clamped(a.max(zl), b.min(zh))
    };

    let mut out = Vec::with_capacity(3);
    if first_full == 1 {
        let p = piece(0);
        if !p.is_empty() {
            out.push(IntervalChain::single(p, q));
        }
    }
    if first_full <= last_full {
        let (a, b) = block(first_full);
        out.push(IntervalChain::new(
            Interval::new(a as usize, b as usize),
            q,
            (last_full - first_full) as usize,
        ));
    }
    if last_full < last && last > 0 {
        let p = piece(last);
        if !p.is_empty() {
            out.push(IntervalChain::single(p, q));
        }
    }
    out
}
