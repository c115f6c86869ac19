//! Sequences over small integer alphabets, rotations, Hamming distance and the
//! exhaustive reference matcher every faster algorithm is checked against.

use std::fmt;

use crate::error::{Error, Result};

/// An immutable string over the alphabet `0..alphabet_size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Sequence {
    /// Builds a sequence whose alphabet is `0..=max(symbols)`.
    pub fn from_ranks(symbols: Vec<u32>) -> Self {
        let alphabet_size = symbols.iter().max().map_or(0, |&s| s + 1);
        Sequence {
            symbols,
            alphabet_size,
        }
    }

    pub fn with_alphabet(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                alphabet_size,
            });
        }
        Ok(Sequence {
            symbols,
            alphabet_size,
        })
    }

    /// Byte strings keep their byte values as ranks.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Sequence {
            symbols: bytes.iter().map(|&b| u32::from(b)).collect(),
            alphabet_size: 256,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.symbols[i]
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= 256 && self.symbols.iter().all(|&s| (32..127).contains(&s)) {
            let text: String = self.symbols.iter().map(|&s| s as u8 as char).collect();
            write!(f, "Sequence({text:?})")
        } else {
            f.debug_tuple("Sequence").field(&self.symbols).finish()
        }
    }
}

impl From<&str> for Sequence {
    fn from(s: &str) -> Self {
        Sequence::from_bytes(s.as_bytes())
    }
}

/// A rotation `x` of a length-`m` string: its length-`x` prefix moved to the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rotation(pub(crate) usize);

impl Rotation {
    pub fn new(x: usize, len: usize) -> Result<Self> {
        if x < len {
            Ok(Rotation(x))
        } else {
            Err(Error::RotationOutOfRange { x, len })
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Text position where `P[0]` lands for an occurrence at `position`.
    #[inline]
    pub fn anchor(self, position: usize, m: usize) -> usize {
        position + (m - self.0) % m
    }
}

/// A rotation witnessing an occurrence together with its exact distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub rotation: Rotation,
    pub mismatches: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub position: usize,
    pub witness: Option<Witness>,
}

impl Occurrence {
    pub fn anchor(&self, m: usize) -> Option<usize> {
        self.witness.map(|w| w.rotation.anchor(self.position, m))
    }
}

/// Occurrences in ascending order of position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccurrenceReport {
    pub occurrences: Vec<Occurrence>,
}

impl OccurrenceReport {
    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        OccurrenceReport {
            occurrences: positions
                .into_iter()
                .map(|position| Occurrence {
                    position,
                    witness: None,
                })
                .collect(),
        }
    }

    pub fn positions(&self) -> Vec<usize> {
        self.occurrences.iter().map(|o| o.position).collect()
    }

    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.occurrences
            .binary_search_by_key(&position, |o| o.position)
            .is_ok()
    }

    pub fn get(&self, position: usize) -> Option<&Occurrence> {
        self.occurrences
            .binary_search_by_key(&position, |o| o.position)
            .ok()
            .map(|i| &self.occurrences[i])
    }
}

/// `S[x..] ++ S[..x]`.
pub fn rotate(s: &Sequence, x: usize) -> Result<Sequence> {
    if x >= s.len() && !(x == 0 && s.is_empty()) {
        return Err(Error::RotationOutOfRange { x, len: s.len() });
    }
    let mut symbols = Vec::with_capacity(s.len());
    symbols.extend_from_slice(&s.symbols[x..]);
    symbols.extend_from_slice(&s.symbols[..x]);
    Ok(Sequence {
        symbols,
        alphabet_size: s.alphabet_size,
    })
}

/// Hamming distance if it does not exceed `limit`, `None` otherwise. Stops
/// scanning at the `limit + 1`-th mismatch.
pub fn hamming_bounded(a: &[u32], b: &[u32], limit: usize) -> Result<Option<usize>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut count = 0;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            count += 1;
            if count > limit {
                return Ok(None);
            }
        }
    }
    Ok(Some(count))
}

/// Distance between `window` and `rot_x(pattern)` if at most `limit`,
/// without materializing the rotation.
pub(crate) fn rotation_distance(
    window: &[u32],
    pattern: &[u32],
    x: usize,
    limit: usize,
) -> Option<usize> {
    let m = pattern.len();
    debug_assert_eq!(window.len(), m);
    let (tail, head) = pattern.split_at(x);
    let mut count = 0;
    for (w, p) in window.iter().zip(head.iter().chain(tail)) {
        if w != p {
            count += 1;
            if count > limit {
                return None;
            }
        }
    }
    Some(count)
}

/// `M(p, x) = {(i, (i - p + x) mod m) : i in [p, p + m)}` in text order.
pub fn matching_pairs(p: usize, x: Rotation, m: usize) -> Result<Vec<(usize, usize)>> {
    if x.get() >= m {
        return Err(Error::RotationOutOfRange { x: x.get(), len: m });
    }
    Ok((p..p + m).map(|i| (i, (i - p + x.get()) % m)).collect())
}

/// Exhaustive reference solution: every window against every rotation.
///
/// The witness is the rotation of minimum distance, smallest `x` on ties.
pub fn brute_force_cpm(text: &Sequence, pattern: &Sequence, k: usize) -> OccurrenceReport {
    let (n, m) = (text.len(), pattern.len());
    if m == 0 || n < m {
        return OccurrenceReport::default();
    }
    let t = text.as_slice();
    let p = pattern.as_slice();
    let mut occurrences = Vec::new();
    for pos in 0..=n - m {
        let window = &t[pos..pos + m];
        let mut best: Option<Witness> = None;
        for x in 0..m {
            let limit = best.map_or(k, |w| w.mismatches.saturating_sub(1));
            if best.is_some_and(|w| w.mismatches == 0) {
                break;
            }
            if let Some(d) = rotation_distance(window, p, x, limit) {
                best = Some(Witness {
                    rotation: Rotation(x),
                    mismatches: d,
                });
            }
        }
        if let Some(w) = best {
            occurrences.push(Occurrence {
                position: pos,
                witness: Some(w),
            });
        }
    }
    OccurrenceReport { occurrences }
}
