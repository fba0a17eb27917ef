use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{genus_range_with, Budget, GenusRange, RangeError};
use crate::words::{
    canonical_form, concat, contains_nested_triple, enumerate_words, family_r, family_u, ChordWord,
};

/// Genus range of every equivalence class with `n` chords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeTable {
    pub n: usize,
    pub classes: BTreeMap<ChordWord, GenusRange>,
    pub gr_set: BTreeSet<GenusRange>,
}

impl RangeTable {
    /// Number of classes per distinct range.
    pub fn class_counts(&self) -> BTreeMap<GenusRange, usize> {
        let mut counts = BTreeMap::new();
        for range in self.classes.values() {
            *counts.entry(*range).or_default() += 1;
        }
        counts
    }

    pub fn words_with(&self, range: GenusRange) -> Vec<ChordWord> {
        self.classes
            .iter()
            .filter(|(_, &r)| r == range)
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Classes whose range is a single value; expected to be empty.
    pub fn singletons(&self) -> Vec<ChordWord> {
        self.classes
            .iter()
            .filter(|(_, r)| r.is_singleton())
            .map(|(w, _)| w.clone())
            .collect()
    }
}

/// The result is independent of the rayon schedule: per-class ranges are
/// gathered into ordered maps.
pub fn gr_table(n: usize, budget: &Budget) -> Result<RangeTable, RangeError> {
    budget.check_table(n)?;
    let words: Vec<ChordWord> = enumerate_words(n)?.collect();
    let classes = words
        .into_par_iter()
        .map(|w| genus_range_with(&w, budget).map(|r| (w, r)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    let gr_set = classes.values().copied().collect();
    Ok(RangeTable { n, classes, gr_set })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoElementCheck {
    pub holds: bool,
    /// Classes with a two-element range other than `[0,1]` or `[1,2]`.
    pub counterexamples: Vec<ChordWord>,
}

/// Expected versus found class sets for one range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCheck {
    pub range: GenusRange,
    pub expected: Vec<ChordWord>,
    pub found: Vec<ChordWord>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    /// Two-element ranges are `[0,1]` or `[1,2]`.
    pub two_element_ranges: TwoElementCheck,
    /// `[0,1]` is realized only by `U_n` (both words for `n = 2`).
    pub zero_one_unique: SetCheck,
    /// `[1,2]` is realized only by `R_3 U_{n-3}` (several classes for `n = 4`).
    pub one_two_unique: SetCheck,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.two_element_ranges.holds && self.zero_one_unique.holds && self.one_two_unique.holds
    }
}

pub fn conjectures_from_table(table: &RangeTable) -> ConjectureReport {
    let n = table.n;
    let counterexamples: Vec<ChordWord> = table
        .classes
        .iter()
        .filter(|(_, r)| r.size() == 2 && r.lo > 1)
        .map(|(w, _)| w.clone())
        .collect();

    let zero_one = GenusRange::new(0, 1);
    let expected_zero_one: Vec<ChordWord> = if n == 2 {
        vec![family_u(2), family_r(2)]
    } else {
        vec![family_u(n)]
    }
    .iter()
    .map(canonical_form)
    .collect::<BTreeSet<_>>()
    .into_iter()
    .collect();
    let found_zero_one = table.words_with(zero_one);

    let one_two = GenusRange::new(1, 2);
    let expected_one_two: Vec<ChordWord> = if n >= 4 {
        vec![canonical_form(&concat(&family_r(3), &family_u(n - 3)))]
    } else if n == 3 {
        vec![canonical_form(&family_r(3))]
    } else {
        Vec::new()
    };
    let found_one_two = table.words_with(one_two);
    let one_two_holds = if n == 4 {
        found_one_two.len() > 1 && expected_one_two.iter().all(|w| found_one_two.contains(w))
    } else {
        found_one_two == expected_one_two
    };

    ConjectureReport {
        n,
        two_element_ranges: TwoElementCheck {
            holds: counterexamples.is_empty(),
            counterexamples,
        },
        zero_one_unique: SetCheck {
            range: zero_one,
            holds: found_zero_one == expected_zero_one,
            expected: expected_zero_one,
            found: found_zero_one,
        },
        one_two_unique: SetCheck {
            range: one_two,
            expected: expected_one_two,
            found: found_one_two,
            holds: one_two_holds,
        },
    }
}

pub fn check_conjectures(n: usize, budget: &Budget) -> Result<ConjectureReport, RangeError> {
    Ok(conjectures_from_table(&gr_table(n, budget)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedTripleReport {
    pub n: usize,
    /// Classes containing `123321` as a sub-diagram.
    pub checked: usize,
    /// Those among them whose range has fewer than three values.
    pub violations: Vec<ChordWord>,
    pub holds: bool,
}

pub fn nested_triple_lemma_from_table(table: &RangeTable) -> NestedTripleReport {
    let with_triple: Vec<(&ChordWord, &GenusRange)> = table
        .classes
        .iter()
        .filter(|(w, _)| contains_nested_triple(w))
        .collect();
    let violations: Vec<ChordWord> = with_triple
        .iter()
        .filter(|(_, r)| r.size() < 3)
        .map(|(w, _)| (*w).clone())
        .collect();
    NestedTripleReport {
        n: table.n,
        checked: with_triple.len(),
        holds: violations.is_empty(),
        violations,
    }
}

pub fn check_nested_triple_lemma(
    n: usize,
    budget: &Budget,
) -> Result<NestedTripleReport, RangeError> {
    Ok(nested_triple_lemma_from_table(&gr_table(n, budget)?))
}
