//! Suffix array by induced sorting (SA-IS), Kasai's LCP array and a
//! block-decomposed range-minimum structure over it.

const BLOCK: usize = 32;

/// Suffix array of `s`; symbols must be `< sigma`.
pub(crate) fn suffix_array(s: &[u32], sigma: usize) -> Vec<u32> {
    debug_assert!(s.iter().all(|&c| (c as usize) < sigma.max(1)));
    sa_is(s, sigma.max(1) - 1)
}

/// Symbols are at most `upper`.
fn sa_is(s: &[u32], upper: usize) -> Vec<u32> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ if n < 10 => {
            let mut sa: Vec<u32> = (0..n as u32).collect();
            sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
            return sa;
        }
        _ => {}
    }
    const NONE: u32 = u32::MAX;
    let mut sa = vec![NONE; n];
    // S-type flags.
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }
    // Bucket starts: sum_l[c] for L-type, sum_s[c] for S-type suffixes.
    let mut sum_l = vec![0u32; upper + 1];
    let mut sum_s = vec![0u32; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i] as usize] += 1;
        } else {
            sum_l[s[i] as usize + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let mut buf = vec![0u32; upper + 1];
    let mut induce = |sa: &mut [u32], lms: &[u32]| {
        sa.fill(NONE);
        buf.copy_from_slice(&sum_s);
        for &d in lms {
            let d = d as usize;
            if d == n {
                continue;
            }
            let c = s[d] as usize;
            sa[buf[c] as usize] = d as u32;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c] as usize] = (n - 1) as u32;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c] as usize] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c] as usize] = v - 1;
            }
        }
    };

    // Leftmost S-type positions, numbered left to right.
    let mut lms_map = vec![NONE; n + 1];
    let mut lms: Vec<u32> = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    induce(&mut sa, &lms);

    let m = lms.len();
    if m > 0 {
        let mut sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| lms_map[v as usize] != NONE)
            .collect();
        let mut rec = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec[lms_map[sorted_lms[0] as usize] as usize] = 0;
        let end_of = |v: usize| {
            let id = lms_map[v] as usize;
            if id + 1 < m {
                lms[id + 1] as usize
            } else {
                n
            }
        };
        for w in 1..m {
            let (mut l, mut r) = (sorted_lms[w - 1] as usize, sorted_lms[w] as usize);
            let (end_l, end_r) = (end_of(l), end_of(r));
            let mut same = end_l - l == end_r - r;
            if same {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec[lms_map[sorted_lms[w] as usize] as usize] = rec_upper;
        }
        let rec_sa = sa_is(&rec, rec_upper as usize);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r as usize];
        }
        induce(&mut sa, &sorted_lms);
    }
    sa
}

/// `lcp[r] = lcp(suffix sa[r-1], suffix sa[r])`, `lcp[0] = 0`.
pub(crate) fn lcp_array(s: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Range minimum over a fixed array: in-block prefix/suffix minima plus a
/// sparse table over block minima.
#[derive(Debug, Clone)]
pub(crate) struct Rmq {
    values: Vec<u32>,
    prefix_min: Vec<u32>,
    suffix_min: Vec<u32>,
    sparse: Vec<Vec<u32>>,
}

impl Rmq {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let n = values.len();
        let mut prefix_min = values.clone();
        let mut suffix_min = values.clone();
        for b in (0..n).step_by(BLOCK) {
            let end = (b + BLOCK).min(n);
            for i in b + 1..end {
                prefix_min[i] = prefix_min[i].min(prefix_min[i - 1]);
            }
            for i in (b..end - 1).rev() {
                suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
            }
        }
        let blocks: Vec<u32> = (0..n).step_by(BLOCK).map(|b| suffix_min[b]).collect();
        let mut sparse = vec![blocks];
        let mut width = 1;
        while 2 * width < sparse[0].len() + 1 && sparse.last().unwrap().len() > width {
            let prev = sparse.last().unwrap();
            let len = prev.len() - width;
            let level: Vec<u32> = (0..len).map(|i| prev[i].min(prev[i + width])).collect();
            sparse.push(level);
            width *= 2;
        }
        Rmq {
            values,
            prefix_min,
            suffix_min,
            sparse,
        }
    }

    /// Minimum of `values[lo..=hi]`.
    #[inline]
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi && hi < self.values.len());
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return self.values[lo..=hi].iter().copied().min().unwrap();
        }
        let mut best = self.suffix_min[lo].min(self.prefix_min[hi]);
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let level = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let row = &self.sparse[level];
            best = best.min(row[a]).min(row[b + 1 - (1 << level)]);
        }
        best
    }

    pub(crate) fn heap_cells(&self) -> usize {
        self.values.len() * 3 + self.sparse.iter().map(Vec::len).sum::<usize>()
    }
}

/// Constant-time longest common prefix of two suffixes of one string.
#[derive(Debug, Clone)]
pub(crate) struct LcpOracle {
    rank: Vec<u32>,
    rmq: Rmq,
}

impl LcpOracle {
    pub(crate) fn new(s: &[u32], sigma: usize) -> Self {
        let sa = suffix_array(s, sigma);
        let mut rank = vec![0u32; s.len()];
        for (r, &i) in sa.iter().enumerate() {
            rank[i as usize] = r as u32;
        }
        let lcp = lcp_array(s, &sa, &rank);
        drop(sa);
        LcpOracle {
            rank,
            rmq: Rmq::new(lcp),
        }
    }

    /// `lcp(s[i..], s[j..])` for `i != j`.
    #[inline]
    pub(crate) fn lcp_distinct(&self, i: usize, j: usize) -> usize {
        let (ri, rj) = (self.rank[i] as usize, self.rank[j] as usize);
        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
        self.rmq.min(lo + 1, hi) as usize
    }

    pub(crate) fn heap_cells(&self) -> usize {
        self.rank.len() + self.rmq.heap_cells()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(s: &[u32]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..s.len() as u32).collect();
        sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        sa
    }

    #[test]
    fn banana() {
        let s: Vec<u32> = b"banana".iter().map(|&b| b as u32).collect();
        assert_eq!(suffix_array(&s, 256), vec![5, 3, 1, 0, 4, 2]);
    }

    #[test]
    fn unary_strings() {
        let s = vec![0u32; 37];
        let sa = suffix_array(&s, 1);
        assert_eq!(sa, (0..37u32).rev().collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn suffix_array_matches_sorting(s in prop::collection::vec(0u32..4, 0..200)) {
            prop_assert_eq!(suffix_array(&s, 4), naive_sa(&s));
        }

        #[test]
        fn suffix_array_on_repetitive_strings(block in prop::collection::vec(0u32..3, 1..5), reps in 1usize..60, tail in prop::collection::vec(0u32..3, 0..4)) {
            let mut s: Vec<u32> = block.iter().cycle().take(block.len() * reps).copied().collect();
            s.extend(tail);
            prop_assert_eq!(suffix_array(&s, 3), naive_sa(&s));
        }

        #[test]
        fn suffix_array_large_alphabet(s in prop::collection::vec(0u32..500, 0..300)) {
            prop_assert_eq!(suffix_array(&s, 500), naive_sa(&s));
        }

        #[test]
        fn rmq_matches_scan(v in prop::collection::vec(0u32..1000, 1..300), a in 0usize..300, b in 0usize..300) {
            let (a, b) = (a % v.len(), b % v.len());
            let (lo, hi) = (a.min(b), a.max(b));
            let rmq = Rmq::new(v.clone());
            prop_assert_eq!(rmq.min(lo, hi), *v[lo..=hi].iter().min().unwrap());
        }

        #[test]
        fn lcp_oracle_matches_comparison(s in prop::collection::vec(0u32..3, 2..150), a in 0usize..150, b in 0usize..150) {
            let (i, j) = (a % s.len(), b % s.len());
            prop_assume!(i != j);
            let oracle = LcpOracle::new(&s, 3);
            let naive = s[i..].iter().zip(&s[j..]).take_while(|(x, y)| x == y).count();
            prop_assert_eq!(oracle.lcp_distinct(i, j), naive);
        }
    }
}
