//! Genus ranges over all `4^n` band attachments of a chord diagram.

mod sum;
mod table;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{genus_from_boundaries, EndEdgeTrace, FaceCounter, MAX_COUNTER_CHORDS};
use crate::words::{ChordWord, WordError};

pub use sum::{connected_sum_law, predicted_epsilons, SumLaw};
pub use table::{
    check_conjectures, check_nested_triple_lemma, conjectures_from_table, gr_table,
    nested_triple_lemma_from_table, ConjectureReport, NestedTripleReport, RangeTable, SetCheck,
    TwoElementCheck,
};
pub use witness::{
    realization_chart, realization_chart_from_table, theorem_construction, witness, ChartPoint,
    ChartStatus, Construction, RealizationChart, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("{n} chords exceeds the {what} budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("genus profile of {word} has a gap: {support:?}")]
    GapDetected { word: String, support: Vec<u32> },
    #[error("no construction is guaranteed for [{g}, {g_max}] with {n} chords")]
    NotGuaranteed { n: usize, g: u32, g_max: u32 },
    #[error("witness {word} for [{g}, {g_max}] has computed range {found}")]
    VerificationFailed {
        word: String,
        g: u32,
        g_max: u32,
        found: GenusRange,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Limits on exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest word whose `4^n` configurations may be scanned.
    pub profile_max_chords: usize,
    /// Largest `n` for which all equivalence classes may be tabulated.
    pub table_max_chords: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            profile_max_chords: 12,
            table_max_chords: 7,
        }
    }
}

impl Budget {
    /// Default limits with `n = 8` tables enabled.
    pub fn extended() -> Self {
        Budget {
            table_max_chords: 8,
            ..Budget::default()
        }
    }

    pub fn check_profile(&self, n: usize) -> Result<(), RangeError> {
        let limit = self.profile_max_chords.min(MAX_COUNTER_CHORDS);
        if n > limit {
            return Err(RangeError::BudgetExceeded {
                what: "exhaustive profile",
                n,
                limit,
            });
        }
        Ok(())
    }

    pub fn check_table(&self, n: usize) -> Result<(), RangeError> {
        if n > self.table_max_chords {
            return Err(RangeError::BudgetExceeded {
                what: "table",
                n,
                limit: self.table_max_chords,
            });
        }
        self.check_profile(n)
    }
}

/// The integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenusRange {
    pub lo: u32,
    pub hi: u32,
}

impl GenusRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(lo <= hi, "empty genus range [{lo}, {hi}]");
        GenusRange { lo, hi }
    }

    pub fn contains(&self, g: u32) -> bool {
        self.lo <= g && g <= self.hi
    }

    /// Number of integers in the range.
    pub fn size(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for GenusRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Number of attachment configurations per genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusProfile {
    pub n: usize,
    pub counts: BTreeMap<u32, u64>,
}

impl GenusProfile {
    fn from_boundary_counts(n: usize, by_b: &[u64]) -> Self {
        let counts = by_b
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(b, &c)| (genus_from_boundaries(n, b), c))
            .collect();
        GenusProfile { n, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn support(&self) -> Vec<u32> {
        self.counts.keys().copied().collect()
    }

    pub fn min_genus(&self) -> u32 {
        *self.counts.keys().next().expect("profile is never empty")
    }

    pub fn max_genus(&self) -> u32 {
        *self
            .counts
            .keys()
            .next_back()
            .expect("profile is never empty")
    }

    pub fn is_gap_free(&self) -> bool {
        self.counts.len() as u32 == self.max_genus() - self.min_genus() + 1
    }
}

/// Below this many configurations a scan stays on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 16;
const CHUNK_BITS: u32 = 14;

/// Sums `per_mask` results over `masks`, splitting into chunks for rayon when large.
fn scan<T, F>(masks: u64, init: T, per_mask: F) -> T
where
    T: Clone + Send + Sync + Merge,
    F: Fn(&mut T, u64) + Sync,
{
    if masks < PARALLEL_THRESHOLD {
        let mut acc = init;
        for mask in 0..masks {
            per_mask(&mut acc, mask);
        }
        return acc;
    }
    let chunks = masks >> CHUNK_BITS;
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = init.clone();
            let base = chunk << CHUNK_BITS;
            for mask in base..base + (1 << CHUNK_BITS) {
                per_mask(&mut acc, mask);
            }
            acc
        })
        .reduce(
            || init.clone(),
            |mut a, b| {
                a.merge(&b);
                a
            },
        )
}

trait Merge {
    fn merge(&mut self, other: &Self);
}

impl Merge for Vec<u64> {
    fn merge(&mut self, other: &Self) {
        self.iter_mut().zip(other).for_each(|(a, b)| *a += b);
    }
}

impl Merge for Vec<[u64; 2]> {
    fn merge(&mut self, other: &Self) {
        for (a, b) in self.iter_mut().zip(other) {
            a[0] += b[0];
            a[1] += b[1];
        }
    }
}

/// Counts of boundary components over all configurations, indexed by `b`.
///
/// Only masks with the top endpoint inside are traced; flipping every flag
/// leaves `b` unchanged, so each count is doubled.
fn boundary_histogram(counter: &FaceCounter) -> Vec<u64> {
    let n = counter.n();
    let half = 1u64 << (2 * n - 1);
    let mut hist = scan(half, vec![0u64; n + 3], |acc, mask| {
        acc[counter.boundaries(mask) as usize] += 1;
    });
    hist.iter_mut().for_each(|c| *c *= 2);
    hist
}

pub fn genus_profile(w: &ChordWord) -> Result<GenusProfile, RangeError> {
    genus_profile_with(w, &Budget::default())
}

pub fn genus_profile_with(w: &ChordWord, budget: &Budget) -> Result<GenusProfile, RangeError> {
    budget.check_profile(w.n())?;
    let hist = boundary_histogram(&FaceCounter::new(w));
    Ok(GenusProfile::from_boundary_counts(w.n(), &hist))
}

pub fn genus_range(w: &ChordWord) -> Result<GenusRange, RangeError> {
    genus_range_with(w, &Budget::default())
}

pub fn genus_range_with(w: &ChordWord, budget: &Budget) -> Result<GenusRange, RangeError> {
    range_of_profile(w, &genus_profile_with(w, budget)?)
}

pub fn range_of_profile(w: &ChordWord, profile: &GenusProfile) -> Result<GenusRange, RangeError> {
    if !profile.is_gap_free() {
        return Err(RangeError::GapDetected {
            word: w.to_string(),
            support: profile.support(),
        });
    }
    Ok(GenusRange::new(profile.min_genus(), profile.max_genus()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremum::Min => "min",
            Extremum::Max => "max",
        })
    }
}

/// Per-genus counts of configurations whose end edge is traced by one or two curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndEdgeSurvey {
    pub n: usize,
    /// genus -> `[single, double]`
    pub by_genus: BTreeMap<u32, [u64; 2]>,
}

impl EndEdgeSurvey {
    pub fn profile(&self) -> GenusProfile {
        GenusProfile {
            n: self.n,
            counts: self
                .by_genus
                .iter()
                .map(|(&g, c)| (g, c[0] + c[1]))
                .collect(),
        }
    }

    pub fn class(&self) -> EndEdgeClass {
        let at = |q: Extremum| {
            match q {
                Extremum::Min => self.by_genus.values().next(),
                Extremum::Max => self.by_genus.values().next_back(),
            }
            .copied()
            .expect("survey is never empty")
        };
        EndEdgeClass {
            min: at(Extremum::Min),
            max: at(Extremum::Max),
        }
    }
}

pub fn end_edge_survey(w: &ChordWord, budget: &Budget) -> Result<EndEdgeSurvey, RangeError> {
    let n = w.n();
    budget.check_profile(n)?;
    let counter = FaceCounter::new(w);
    let hist = scan(1u64 << (2 * n), vec![[0u64; 2]; n + 3], |acc, mask| {
        let (b, end) = counter.boundaries_with_end_edge(mask);
        acc[b as usize][end.curves() - 1] += 1;
    });
    let by_genus = hist
        .iter()
        .enumerate()
        .filter(|(_, c)| c[0] + c[1] > 0)
        .map(|(b, &c)| (genus_from_boundaries(n, b), c))
        .collect();
    Ok(EndEdgeSurvey { n, by_genus })
}

/// `A(q, c)` and `E(q, c)` flags, derived from end-edge counts at the extremal genera.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndEdgeClass {
    /// `[single, double]` counts at the minimum genus.
    pub min: [u64; 2],
    /// `[single, double]` counts at the maximum genus.
    pub max: [u64; 2],
}

impl EndEdgeClass {
    fn counts(&self, q: Extremum) -> [u64; 2] {
        match q {
            Extremum::Min => self.min,
            Extremum::Max => self.max,
        }
    }

    /// Every configuration of extremal genus `q` traces the end edge with `c` curves.
    pub fn all(&self, q: Extremum, c: EndEdgeTrace) -> bool {
        let counts = self.counts(q);
        let other = match c {
            EndEdgeTrace::Single => counts[1],
            EndEdgeTrace::Double => counts[0],
        };
        other == 0
    }

    /// Some configuration of extremal genus `q` traces the end edge with `c` curves.
    pub fn exists(&self, q: Extremum, c: EndEdgeTrace) -> bool {
        self.counts(q)[c.curves() - 1] > 0
    }

    /// Short form naming the condition that decides the connected-sum correction:
    /// `A(q,c)` when uniform, otherwise `E(min,1)` / `E(max,2)`.
    pub fn summary(&self) -> String {
        let part = |q: Extremum, mixed: EndEdgeTrace| {
            for c in [EndEdgeTrace::Single, EndEdgeTrace::Double] {
                if self.all(q, c) {
                    return format!("A({q},{})", c.curves());
                }
            }
            format!("E({q},{})", mixed.curves())
        };
        format!(
            "{}, {}",
            part(Extremum::Min, EndEdgeTrace::Single),
            part(Extremum::Max, EndEdgeTrace::Double)
        )
    }

    /// All eight flags as `(name, value)` pairs.
    pub fn flags(&self) -> Vec<(String, bool)> {
        let mut out = Vec::with_capacity(8);
        for q in [Extremum::Min, Extremum::Max] {
            for c in [EndEdgeTrace::Single, EndEdgeTrace::Double] {
                out.push((format!("A({q},{})", c.curves()), self.all(q, c)));
                out.push((format!("E({q},{})", c.curves()), self.exists(q, c)));
            }
        }
        out
    }
}

pub fn classify_end_edge(w: &ChordWord) -> Result<EndEdgeClass, RangeError> {
    classify_end_edge_with(w, &Budget::default())
}

pub fn classify_end_edge_with(w: &ChordWord, budget: &Budget) -> Result<EndEdgeClass, RangeError> {
    Ok(end_edge_survey(w, budget)?.class())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{concat, family_g, family_r, family_u, family_x, parse};
    use EndEdgeTrace::{Double, Single};
    use Extremum::{Max, Min};

    fn w(s: &str) -> ChordWord {
        parse(s).unwrap()
    }

    fn gr(s: &str) -> GenusRange {
        genus_range(&w(s)).unwrap()
    }

    #[test]
    fn profile_of_single_chord() {
        let p = genus_profile(&w("11")).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 2), (1, 2)]));
        assert_eq!(p.total(), 4);
    }

    #[test]
    fn point_values() {
        assert_eq!(gr("123123"), GenusRange::new(1, 2));
        assert_eq!(gr("12341342"), GenusRange::new(1, 2));
        assert_eq!(gr("12312345674675"), GenusRange::new(2, 4));
        assert!(gr("123321").size() >= 3);
    }

    #[test]
    fn profile_totals_and_survey_agree() {
        for s in ["1212", "123132", "12341342"] {
            let word = w(s);
            let p = genus_profile(&word).unwrap();
            assert_eq!(p.total(), 1 << (2 * word.n()));
            let survey = end_edge_survey(&word, &Budget::default()).unwrap();
            assert_eq!(survey.profile(), p);
        }
    }

    #[test]
    fn small_families() {
        for n in 1..=6 {
            assert_eq!(genus_range(&family_u(n)).unwrap(), GenusRange::new(0, 1));
        }
        for m in 1..=3 {
            assert_eq!(
                genus_range(&family_g(m)).unwrap(),
                GenusRange::new(0, m as u32)
            );
        }
        assert_eq!(
            genus_range(&concat(&family_r(3), &family_u(1))).unwrap(),
            GenusRange::new(1, 2)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget {
            profile_max_chords: 3,
            table_max_chords: 3,
        };
        assert!(matches!(
            genus_range_with(&family_u(4), &tight),
            Err(RangeError::BudgetExceeded { n: 4, limit: 3, .. })
        ));
    }

    #[test]
    fn gap_is_reported() {
        let profile = GenusProfile {
            n: 4,
            counts: BTreeMap::from([(0, 1), (2, 1)]),
        };
        assert!(matches!(
            range_of_profile(&family_u(4), &profile),
            Err(RangeError::GapDetected { .. })
        ));
    }

    #[test]
    fn end_edge_classes() {
        let u1 = classify_end_edge(&w("11")).unwrap();
        assert!(u1.all(Min, Double) && u1.all(Max, Single));
        assert_eq!(u1.summary(), "A(min,2), A(max,1)");

        // Genus 1 is reached by 6 single and 8 double end-edge tracings.
        let r2 = classify_end_edge(&w("1212")).unwrap();
        assert!(r2.all(Min, Double) && r2.exists(Max, Double));
        assert_eq!(r2.max, [6, 8]);

        let r3 = classify_end_edge(&w("123123")).unwrap();
        assert!(r3.exists(Min, Single) && r3.all(Max, Single));
        assert_eq!(r3.summary(), "E(min,1), A(max,1)");

        let x = classify_end_edge(&family_x()).unwrap();
        assert!(x.all(Min, Double) && x.exists(Max, Double));
    }

    #[test]
    fn end_edge_flag_laws() {
        for s in ["11", "1212", "123123", "123321", "12341342", "112332"] {
            let class = classify_end_edge(&w(s)).unwrap();
            for q in [Min, Max] {
                assert!(class.exists(q, Single) || class.exists(q, Double));
                for c in [Single, Double] {
                    assert!(!class.all(q, c) || class.exists(q, c));
                }
                assert_eq!(class.all(q, Single), !class.exists(q, Double));
                assert_eq!(class.all(q, Double), !class.exists(q, Single));
            }
        }
    }
}
