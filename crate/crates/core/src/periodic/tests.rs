use super::*;
use crate::geometry::chain_elements;
use crate::strings::rotation_distance;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn ranks(s: &str) -> Vec<u32> {
    s.bytes().map(|b| u32::from(b - b'a')).collect()
}

fn naive_misperiods(
    s: &[u32],
    i: usize,
    j: usize,
    limit: usize,
    bounds: Interval,
) -> (Vec<usize>, Vec<usize>) {
    let q = j - i + 1;
    let is_mis = |a: usize| {
        let b = if a < i {
            i + (q - (i - a) % q) % q
        } else {
            i + (a - i) % q
        };
        s[a] != s[b]
    };
    let mut left: Vec<usize> = (bounds.lo()..i)
        .rev()
        .filter(|&a| is_mis(a))
        .take(limit)
        .collect();
    left.reverse();
    let right = (j + 1..=bounds.hi())
        .filter(|&a| is_mis(a))
        .take(limit)
        .collect();
    (left, right)
}

/// Maximal progressions with difference `q` of exact occurrences.
fn naive_runs(text: &[u32], sample: &[u32], q: usize) -> Vec<SampleRun> {
    let occ: Vec<usize> = (0..(text.len() + 1).saturating_sub(sample.len()))
        .filter(|&i| &text[i..i + sample.len()] == sample)
        .collect();
    let mut runs: Vec<SampleRun> = Vec::new();
    for &i in &occ {
        match runs.last_mut() {
            Some(r) if r.start + r.len - sample.len() + q == i => r.len += q,
            _ => runs.push(SampleRun {
                start: i,
                len: sample.len(),
                stride: q,
            }),
        }
    }
    runs
}

fn expand(x: &[Interval], y: &[IntervalChain]) -> BTreeSet<usize> {
    x.iter()
        .flat_map(|i| i.iter())
        .chain(y.iter().flat_map(chain_elements))
        .collect()
}

#[test]
fn split_examples() {
    let lens: Vec<usize> = split_samples(&[0; 16], 1)
        .unwrap()
        .iter()
        .map(|s| s.len)
        .collect();
    assert_eq!(lens, vec![4, 3, 3, 3, 3]);
    let p: Vec<u32> = (0..7).collect();
    let s = split_samples(&p, 2).unwrap();
    assert!(s.iter().all(|s| s.len == 1 && !s.is_periodic()));
    let ab = ranks(&"ab".repeat(8));
    for s in split_samples(&ab, 1).unwrap() {
        assert_eq!(s.is_periodic(), s.len >= 4);
        if s.len >= 4 {
            assert_eq!(s.period, Some(2));
        }
    }
    assert!(matches!(
        split_samples(&p, 3),
        Err(Error::TooShortForSamples { m: 7, pieces: 9 })
    ));
}

#[test]
fn run_example() {
    let ctx = AnchorContext::new(&ranks("abab"), &ranks("bbabababaa"), 26, 0);
    let sample = Sample {
        start: 0,
        len: 4,
        period: Some(2),
    };
    assert_eq!(
        find_runs(&ctx, &sample),
        vec![SampleRun {
            start: 2,
            len: 6,
            stride: 2
        }]
    );
    let ctx = AnchorContext::new(&ranks("abab"), &ranks("bbbbb"), 26, 0);
    assert!(find_runs(&ctx, &sample).is_empty());
}

#[test]
fn misperiod_examples() {
    let idx = TextIndex::from_symbols(ranks("xaaaay"));
    let set = misperiods(&idx, 1, 1, 3, Interval::new(0, 5), Side::Both);
    assert_eq!((set.left, set.right), (vec![0], vec![5]));
    let idx = TextIndex::from_symbols(ranks(&"abc".repeat(5)));
    assert!(misperiods(&idx, 3, 5, 3, Interval::new(0, 14), Side::Both).is_empty());
}

#[test]
fn fully_periodic_ppm_covers_aligned_positions() {
    let inst = PpmInstance {
        u: SparseBinaryString::zeros(20),
        i: 3,
        v: SparseBinaryString::zeros(16),
        i_prime: 0,
        q: 4,
        k: 0,
        m: 10,
    };
    let got: BTreeSet<usize> = periodic_periodic_match(&inst)
        .iter()
        .flat_map(chain_elements)
        .collect();
    assert_eq!(got, (0..=10).collect());
}

/// A near-periodic string: a factor of `Q^inf` with a few substitutions.
fn near_periodic(sigma: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    (
        prop::collection::vec(0..sigma, 1..4),
        1..=max_len,
        0usize..8,
        prop::collection::vec((0usize..1000, 0..sigma), 0..4),
    )
        .prop_map(|(q, len, phase, edits)| {
            let mut s: Vec<u32> = (0..len).map(|t| q[(t + phase) % q.len()]).collect();
            for (at, c) in edits {
                let at = at % len;
                s[at] = c;
            }
            s
        })
}

/// Pattern, text (length in `[m, 2m]`) and `k` with `m >= 2k + 3`, both
/// near-periodic with the same block.
fn periodic_instance() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, usize)> {
    (
        1u32..=3,
        prop::collection::vec(0u32..3, 1..4),
        7usize..30,
        0usize..3,
        0usize..8,
        0usize..8,
    )
        .prop_flat_map(|(sigma, q, m, k, pp, tp)| {
            let q: Vec<u32> = q.into_iter().map(|c| c % sigma).collect();
            let k = k.min((m - 3) / 2);
            let gen = move |len: usize, phase: usize| -> Vec<u32> {
                (0..len).map(|t| q[(t + phase) % q.len()]).collect()
            };
            let p = gen(m, pp);
            (m..=2 * m).prop_flat_map(move |n| {
                let t = gen(n, tp);
                let (p, t) = (p.clone(), t);
                (
                    prop::collection::vec((0..m, 0..sigma), 0..3),
                    prop::collection::vec((0..n, 0..sigma), 0..5),
                )
                    .prop_map(move |(pe, te)| {
                        let (mut p, mut t) = (p.clone(), t.clone());
                        pe.into_iter().for_each(|(a, c)| p[a] = c);
                        te.into_iter().for_each(|(a, c)| t[a] = c);
                        (p, t, k)
                    })
            })
        })
}

/// Oracle occurrences `(p, x)` where the sample sits in `rot_x(P)` without
/// being cut and lands exactly inside the run.
fn sample_in_run_occurrences(
    t: &[u32],
    p: &[u32],
    k: usize,
    s: &Sample,
    run: &SampleRun,
) -> BTreeSet<usize> {
    let (n, m) = (t.len(), p.len());
    let mut out = BTreeSet::new();
    for pos in 0..=n - m {
        for x in 0..m {
            let offset = if s.start >= x {
                s.start - x
            } else if s.end() <= x {
                m - x + s.start
            } else {
                continue;
            };
            let at = pos + offset;
            let inside = at >= run.start && at + s.len <= run.start + run.len;
            if inside
                && t[at..at + s.len] == p[s.start..s.end()]
                && rotation_distance(&t[pos..pos + m], p, x, k).is_some()
            {
                out.insert(pos);
            }
        }
    }
    out
}

fn oracle_occurrences(t: &[u32], p: &[u32], k: usize) -> BTreeSet<usize> {
    let m = p.len();
    (0..=t.len() - m)
        .filter(|&pos| (0..m).any(|x| rotation_distance(&t[pos..pos + m], p, x, k).is_some()))
        .collect()
}

/// Some rotation of `P` has at most `k` misperiods around a length-`q` block.
fn some_rotation_k_periodic(p: &[u32], k: usize, q: usize) -> bool {
    let m = p.len();
    (0..m).any(|x| {
        let r: Vec<u32> = p[x..].iter().chain(&p[..x]).copied().collect();
        (0..=m - q).any(|i| {
            let (l, rr) = naive_misperiods(&r, i, i + q - 1, k + 1, Interval::new(0, m - 1));
            l.len() + rr.len() <= k
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn misperiods_match_naive_scan(s in near_periodic(3, 60), a in any::<prop::sample::Index>(), q in 1usize..5,
                                   limit in 0usize..5, cut in 0usize..6) {
        let n = s.len();
        let i = a.index(n);
        let j = (i + q - 1).min(n - 1);
        let bounds = Interval::new(i.saturating_sub(cut * 7), (j + cut * 5).min(n - 1));
        let idx = TextIndex::from_symbols(s.clone());
        let got = misperiods(&idx, i, j, limit, bounds, Side::Both);
        let (l, r) = naive_misperiods(&s, i, j, limit, bounds);
        prop_assert_eq!(got.left, l);
        prop_assert_eq!(got.right, r);
    }

    #[test]
    fn runs_match_naive_progressions(text in near_periodic(2, 80), q in prop::collection::vec(0u32..2, 1..4), reps in 2usize..4) {
        let sample: Vec<u32> = (0..q.len() * reps).map(|t| q[t % q.len()]).collect();
        let per = smallest_period(&sample);
        prop_assume!(2 * per <= sample.len());
        let ctx = AnchorContext::new(&sample, &text, 2, 0);
        let s = Sample { start: 0, len: sample.len(), period: Some(per) };
        prop_assert_eq!(find_runs(&ctx, &s), naive_runs(&text, &sample, per));
    }

    #[test]
    fn run_sample_matching_is_sound_and_complete((p, t, k) in periodic_instance()) {
        let ctx = AnchorContext::new(&p, &t, 3, k);
        let truth = oracle_occurrences(&t, &p, k);
        for s in split_samples(&p, k).unwrap().iter().filter(|s| s.is_periodic()) {
            for run in find_runs(&ctx, s) {
                let (x, y) = run_sample_matching(&ctx, s, &run);
                let got = expand(&x, &y);
                prop_assert!(got.is_subset(&truth), "unsound: {:?}", got.difference(&truth).collect::<Vec<_>>());
                let need = sample_in_run_occurrences(&t, &p, k, s, &run);
                prop_assert!(need.is_subset(&got), "missed: {:?}", need.difference(&got).collect::<Vec<_>>());
                for c in &y {
                    prop_assert_eq!(c.difference, s.period.unwrap());
                }
                if !y.is_empty() {
                    prop_assert!(some_rotation_k_periodic(&p, k, s.period.unwrap()));
                }
            }
        }
    }

    #[test]
    fn nonperiodic_samples_cover_their_occurrences((p, t, k) in periodic_instance()) {
        let ctx = AnchorContext::new(&p, &t, 3, k);
        let truth = oracle_occurrences(&t, &p, k);
        let mut union = BTreeSet::new();
        for s in split_samples(&p, k).unwrap() {
            if s.is_periodic() {
                for run in find_runs(&ctx, &s) {
                    let (x, y) = run_sample_matching(&ctx, &s, &run);
                    union.extend(expand(&x, &y));
                }
            } else {
                union.extend(expand(&sample_match_nonperiodic(&ctx, &s), &[]));
            }
        }
        prop_assert_eq!(union, truth);
    }
}
