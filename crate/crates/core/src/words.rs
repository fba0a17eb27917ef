//! Double-occurrence words and the chord diagrams they encode.
//!
//! A [`ChordWord`] is always stored in normal form: reading left to right,
//! first occurrences of labels appear as `1, 2, ..., n`. Position 0 is the
//! first endpoint after the basepoint.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest chord count accepted by [`enumerate_words`].
pub const MAX_ENUMERATE_CHORDS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word: a chord diagram needs at least one chord")]
    Empty,
    #[error("not a double-occurrence word: label {label} occurs {count} time(s)")]
    NotDoubleOccurrence { label: u64, count: usize },
    #[error("malformed token {0:?}")]
    Malformed(String),
    #[error("chord count {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("restriction to an empty chord set")]
    EmptyResult,
}

/// A normalized double-occurrence word over `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordWord {
    letters: Vec<u32>,
}

/// The fixed-point-free involution pairing the two endpoints of each chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordPairing(Vec<usize>);

impl ChordPairing {
    pub fn partner(&self, position: usize) -> usize {
        self.0[position]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pairs `(i, j)` with `i < j`, ordered by `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub canonical: ChordWord,
    /// Number of distinct normalized words equivalent to `canonical`.
    pub size: usize,
}

impl ChordWord {
    /// Builds a word from arbitrary labels, renaming them to first-occurrence order.
    pub fn from_labels<I>(labels: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = u64>,
    {
        let raw: Vec<u64> = labels.into_iter().collect();
        if raw.is_empty() {
            return Err(WordError::Empty);
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &label in &raw {
            *counts.entry(label).or_default() += 1;
        }
        if let Some((&label, &count)) = counts.iter().find(|&(_, &c)| c != 2) {
            return Err(WordError::NotDoubleOccurrence { label, count });
        }
        let mut rename: BTreeMap<u64, u32> = BTreeMap::new();
        let letters = raw
            .iter()
            .map(|label| {
                let next = rename.len() as u32 + 1;
                *rename.entry(*label).or_insert(next)
            })
            .collect();
        Ok(ChordWord { letters })
    }

    /// Wraps letters that are already normalized. Caller guarantees the invariant.
    fn from_normalized(letters: Vec<u32>) -> Self {
        debug_assert!(is_normalized(&letters));
        ChordWord { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Number of chords.
    pub fn n(&self) -> usize {
        self.letters.len() / 2
    }

    /// Number of endpoints, `2n`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pairing(&self) -> ChordPairing {
        let mut partner = vec![usize::MAX; self.letters.len()];
        let mut first = vec![usize::MAX; self.n() + 1];
        for (i, &label) in self.letters.iter().enumerate() {
            let f = &mut first[label as usize];
            if *f == usize::MAX {
                *f = i;
            } else {
                partner[i] = *f;
                partner[*f] = i;
            }
        }
        ChordPairing(partner)
    }

    /// Cyclic shift: the result starts at position `shift` of `self`.
    pub fn rotate(&self, shift: usize) -> ChordWord {
        let len = self.len();
        normalize((0..len).map(|i| self.letters[(i + shift) % len]))
    }

    pub fn reverse(&self) -> ChordWord {
        normalize(self.letters.iter().rev().copied())
    }

    /// All distinct normalized words reachable by shifts, reversal and renaming.
    pub fn orbit(&self) -> BTreeSet<ChordWord> {
        let reversed = self.reverse();
        (0..self.len())
            .flat_map(|s| [self.rotate(s), reversed.rotate(s)])
            .collect()
    }
}

fn is_normalized(letters: &[u32]) -> bool {
    let mut next = 1;
    let mut counts = vec![0u8; letters.len() / 2 + 1];
    for &l in letters {
        if l == 0 || l as usize > letters.len() / 2 {
            return false;
        }
        if counts[l as usize] == 0 {
            if l != next {
                return false;
            }
            next += 1;
        }
        counts[l as usize] += 1;
    }
    letters.len().is_multiple_of(2) && counts[1..].iter().all(|&c| c == 2)
}

/// Renames labels of a valid double-occurrence sequence to first-occurrence order.
fn normalize<I: IntoIterator<Item = u32>>(letters: I) -> ChordWord {
    let letters: Vec<u32> = letters.into_iter().collect();
    let mut rename = vec![0u32; letters.len() + 1];
    let mut next = 0;
    let letters = letters
        .iter()
        .map(|&l| {
            let slot = &mut rename[l as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        })
        .collect();
    ChordWord::from_normalized(letters)
}

impl fmt::Display for ChordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.letters.iter().join(","))
        }
    }
}

impl FromStr for ChordWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for ChordWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChordWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses contiguous digits (`"123123"`) or separated labels (`"1,2,3,1,2,3"`).
pub fn parse(text: &str) -> Result<ChordWord, WordError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(WordError::Empty);
    }
    let separated = text.chars().any(|c| c == ',' || c.is_whitespace());
    let labels: Vec<u64> = if separated {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| WordError::Malformed(t.to_string()))
            })
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(u64::from)
                    .ok_or_else(|| WordError::Malformed(c.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    ChordWord::from_labels(labels)
}

/// Compares the normalized form of one rotation/reflection of `letters` against
/// `target`, stopping at the first differing position.
fn compare_variant(
    letters: &[u32],
    start: usize,
    reversed: bool,
    target: &[u32],
    rename: &mut [u32],
) -> Ordering {
    let len = letters.len();
    rename.iter_mut().for_each(|r| *r = 0);
    let mut next = 0;
    for (i, &t) in target.iter().enumerate() {
        let pos = if reversed {
            (start + len - i) % len
        } else {
            (start + i) % len
        };
        let slot = &mut rename[letters[pos] as usize];
        if *slot == 0 {
            next += 1;
            *slot = next;
        }
        match (*slot).cmp(&t) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn variant(letters: &[u32], start: usize, reversed: bool) -> ChordWord {
    let len = letters.len();
    normalize((0..len).map(|i| {
        if reversed {
            letters[(start + len - i) % len]
        } else {
            letters[(start + i) % len]
        }
    }))
}

/// Lexicographically least normalized word among all `2n` rotations of `w`
/// and of its reversal.
pub fn canonical_form(w: &ChordWord) -> ChordWord {
    let letters = w.letters();
    let mut rename = vec![0u32; w.n() + 1];
    let mut best = w.clone();
    for reversed in [false, true] {
        for start in 0..letters.len() {
            if compare_variant(letters, start, reversed, best.letters(), &mut rename)
                == Ordering::Less
            {
                best = variant(letters, start, reversed);
            }
        }
    }
    best
}

pub fn is_canonical(w: &ChordWord) -> bool {
    let letters = w.letters();
    let mut rename = vec![0u32; w.n() + 1];
    [false, true].into_iter().all(|reversed| {
        (0..letters.len()).all(|start| {
            compare_variant(letters, start, reversed, letters, &mut rename) != Ordering::Less
        })
    })
}

pub fn equivalent(a: &ChordWord, b: &ChordWord) -> bool {
    a.n() == b.n() && canonical_form(a) == canonical_form(b)
}

pub fn equivalence_class(w: &ChordWord) -> EquivalenceClass {
    let orbit = w.orbit();
    EquivalenceClass {
        canonical: orbit.iter().next().cloned().expect("orbit contains w"),
        size: orbit.len(),
    }
}

/// Streams every normalized word with `n` chords; there are `(2n-1)!!` of them.
#[derive(Debug, Clone)]
pub struct NormalizedWords {
    slots: Vec<u32>,
    first: Vec<usize>,
    second: Vec<usize>,
    pending: bool,
}

impl NormalizedWords {
    pub fn new(n: usize) -> Self {
        let mut it = NormalizedWords {
            slots: vec![0; 2 * n],
            first: vec![0; n],
            second: vec![0; n],
            pending: n > 0,
        };
        it.fill_from(0);
        it
    }

    fn next_empty(&self, after: usize) -> Option<usize> {
        (after..self.slots.len()).find(|&p| self.slots[p] == 0)
    }

    /// Places labels `k..n` greedily into the leftmost empty slots.
    fn fill_from(&mut self, k: usize) {
        for label in k..self.first.len() {
            let f = self.next_empty(0).expect("slots available");
            self.slots[f] = label as u32 + 1;
            let s = self.next_empty(f + 1).expect("slots available");
            self.slots[s] = label as u32 + 1;
            self.first[label] = f;
            self.second[label] = s;
        }
    }

    fn advance(&mut self) -> bool {
        let mut k = self.first.len();
        while k > 0 {
            k -= 1;
            self.slots[self.second[k]] = 0;
            if let Some(p) = self.next_empty(self.second[k] + 1) {
                self.slots[p] = k as u32 + 1;
                self.second[k] = p;
                self.fill_from(k + 1);
                return true;
            }
            self.slots[self.first[k]] = 0;
        }
        false
    }
}

impl Iterator for NormalizedWords {
    type Item = ChordWord;

    fn next(&mut self) -> Option<ChordWord> {
        if !self.pending {
            return None;
        }
        let out = ChordWord::from_normalized(self.slots.clone());
        self.pending = self.advance();
        Some(out)
    }
}

/// One canonical representative per equivalence class of words with `n` chords.
pub fn enumerate_words(n: usize) -> Result<impl Iterator<Item = ChordWord>, WordError> {
    if n == 0 {
        return Err(WordError::Empty);
    }
    if n > MAX_ENUMERATE_CHORDS {
        return Err(WordError::LimitExceeded {
            n,
            limit: MAX_ENUMERATE_CHORDS,
        });
    }
    Ok(NormalizedWords::new(n).filter(is_canonical))
}

/// Connected sum at the basepoints: `w2` relabeled after `w1`.
pub fn concat(w1: &ChordWord, w2: &ChordWord) -> ChordWord {
    let shift = w1.n() as u32;
    let letters = w1
        .letters
        .iter()
        .copied()
        .chain(w2.letters.iter().map(|l| l + shift))
        .collect();
    ChordWord::from_normalized(letters)
}

/// `k` copies of `w` joined by [`concat`].
pub fn power(w: &ChordWord, k: usize) -> ChordWord {
    assert!(k >= 1, "power needs k >= 1");
    (1..k).fold(w.clone(), |acc, _| concat(&acc, w))
}

/// `1122...nn`
pub fn family_u(n: usize) -> ChordWord {
    assert!(n >= 1);
    ChordWord::from_normalized((1..=n as u32).flat_map(|l| [l, l]).collect())
}

/// `12...n12...n`
pub fn family_r(n: usize) -> ChordWord {
    assert!(n >= 1);
    ChordWord::from_normalized((1..=n as u32).chain(1..=n as u32).collect())
}

/// `(1212)(3434)...`, i.e. `l` copies of `R_2`.
pub fn family_g(l: usize) -> ChordWord {
    power(&family_r(2), l)
}

/// `12341342`
pub fn family_x() -> ChordWord {
    ChordWord::from_normalized(vec![1, 2, 3, 4, 1, 3, 4, 2])
}

/// Keeps only the chords whose labels are in `chords`; the basepoint stays put.
pub fn restrict(w: &ChordWord, chords: &BTreeSet<u32>) -> Result<ChordWord, WordError> {
    let kept: Vec<u32> = w
        .letters
        .iter()
        .copied()
        .filter(|l| chords.contains(l))
        .collect();
    if kept.is_empty() {
        return Err(WordError::EmptyResult);
    }
    Ok(normalize(kept))
}

/// Whether some subset of `w`'s chords forms a diagram equivalent to `pattern`.
pub fn contains_subdiagram(w: &ChordWord, pattern: &ChordWord) -> bool {
    let k = pattern.n();
    if k > w.n() {
        return false;
    }
    let target = canonical_form(pattern);
    (1..=w.n() as u32).combinations(k).any(|subset| {
        let subset: BTreeSet<u32> = subset.into_iter().collect();
        restrict(w, &subset)
            .map(|sub| canonical_form(&sub) == target)
            .unwrap_or(false)
    })
}

/// Three nested parallel chords, `123321`.
pub fn nested_triple() -> ChordWord {
    ChordWord::from_normalized(vec![1, 2, 3, 3, 2, 1])
}

pub fn contains_nested_triple(w: &ChordWord) -> bool {
    w.n() >= 3 && contains_subdiagram(w, &nested_triple())
}
