//! Explicit diagrams realizing prescribed genus ranges, and the realization chart.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{genus_range_with, gr_table, Budget, GenusRange, RangeError, RangeTable};
use crate::words::{concat, family_g, family_r, family_u, family_x, power, ChordWord};

/// Family-built words that realize the theorem's ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `R_3 U_pad`, range `[1,2]`.
    RepeatPadded { pad: usize },
    /// `X^k`, range `[k,2k]` with `4k` chords.
    HighGenus { k: usize },
    /// `X^(k-1) R_3`, range `[k,2k]` with `4k-1` chords.
    HighGenusOdd { k: usize },
    /// `V(h,k,l) = U_h X^k G_l`, range `[k, 2k+l+1]` for `h > 0`, `[k, 2k+l]` for `h = 0`.
    Layered { h: usize, k: usize, l: usize },
}

fn join(parts: impl IntoIterator<Item = ChordWord>) -> Option<ChordWord> {
    parts.into_iter().reduce(|acc, w| concat(&acc, &w))
}

impl Construction {
    pub fn word(&self) -> ChordWord {
        let word = match *self {
            Construction::RepeatPadded { pad } => {
                join(std::iter::once(family_r(3)).chain((pad > 0).then(|| family_u(pad))))
            }
            Construction::HighGenus { k } => Some(power(&family_x(), k)),
            Construction::HighGenusOdd { k } => join(
                (k > 1)
                    .then(|| power(&family_x(), k - 1))
                    .into_iter()
                    .chain([family_r(3)]),
            ),
            Construction::Layered { h, k, l } => join(
                (h > 0)
                    .then(|| family_u(h))
                    .into_iter()
                    .chain((k > 0).then(|| power(&family_x(), k)))
                    .chain((l > 0).then(|| family_g(l))),
            ),
        };
        word.expect("constructions are never empty")
    }

    /// The range the construction is known to have.
    pub fn expected_range(&self) -> GenusRange {
        match *self {
            Construction::RepeatPadded { .. } => GenusRange::new(1, 2),
            Construction::HighGenus { k } | Construction::HighGenusOdd { k } => {
                GenusRange::new(k as u32, 2 * k as u32)
            }
            Construction::Layered { h, k, l } => {
                let top = 2 * k + l + usize::from(h > 0);
                GenusRange::new(k as u32, top as u32)
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Construction::RepeatPadded { pad } => write!(f, "R_3 U_{pad}"),
            Construction::HighGenus { k } => write!(f, "X^{k}"),
            Construction::HighGenusOdd { k } => write!(f, "X^{} R_3", k - 1),
            Construction::Layered { h, k, l } => write!(f, "V({h},{k},{l})"),
        }
    }
}

impl Serialize for Construction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Maximum genus over all thickenings of an `n`-chord diagram.
pub fn max_genus(n: usize) -> u32 {
    n.div_ceil(2) as u32
}

/// Picks the construction for `[g, g_max]` with exactly `n` chords, or `None`
/// when `(n, g, g_max)` is outside the realizable cases:
/// `g_max = 2g` with `g = 1` or `g_max = ceil(n/2)`, or `2g < g_max <= ceil(n/2)`.
pub fn theorem_construction(n: usize, g: u32, g_max: u32) -> Option<Construction> {
    let m = max_genus(n);
    if n == 0 || g_max > m || g > g_max {
        return None;
    }
    let (n, g, g_max, m) = (n, g as usize, g_max as usize, m as usize);
    if g >= 1 && g_max == 2 * g && (g == 1 || g_max == m) {
        if g == 1 {
            return Some(Construction::RepeatPadded { pad: n - 3 });
        }
        return Some(if n == 4 * g {
            Construction::HighGenus { k: g }
        } else {
            Construction::HighGenusOdd { k: g }
        });
    }
    if 2 * g < g_max {
        if n % 2 == 0 && g_max == m {
            return Some(Construction::Layered {
                h: 0,
                k: g,
                l: g_max - 2 * g,
            });
        }
        let l = g_max - 2 * g - 1;
        let h = n.checked_sub(4 * g + 2 * l).filter(|&h| h > 0)?;
        return Some(Construction::Layered { h, k: g, l });
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub target: GenusRange,
    pub word: ChordWord,
    pub construction: Construction,
    /// Directly computed range; `None` when `n` exceeds the profile budget.
    pub verified: Option<GenusRange>,
}

pub fn witness(n: usize, g: u32, g_max: u32, budget: &Budget) -> Result<Witness, RangeError> {
    let construction =
        theorem_construction(n, g, g_max).ok_or(RangeError::NotGuaranteed { n, g, g_max })?;
    let word = construction.word();
    let target = GenusRange::new(g, g_max);
    let fail = |found: GenusRange| RangeError::VerificationFailed {
        word: word.to_string(),
        g,
        g_max,
        found,
    };
    if word.n() != n || construction.expected_range() != target {
        return Err(fail(construction.expected_range()));
    }
    let verified = if budget.check_profile(n).is_ok() {
        let found = genus_range_with(&word, budget)?;
        if found != target {
            return Err(fail(found));
        }
        Some(found)
    } else {
        None
    };
    Ok(Witness {
        n,
        target,
        word,
        construction,
        verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartStatus {
    Realized,
    Impossible,
    Unknown,
}

impl fmt::Display for ChartStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartStatus::Realized => "realized",
            ChartStatus::Impossible => "impossible",
            ChartStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub a: u32,
    pub b: u32,
    pub status: ChartStatus,
}

/// Status of every candidate range `[a, b]` with `a <= b <= ceil(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationChart {
    pub n: usize,
    pub max_genus: u32,
    /// Whether statuses come from exhaustive tabulation.
    pub exact: bool,
    pub points: Vec<ChartPoint>,
}

impl RealizationChart {
    pub fn status(&self, a: u32, b: u32) -> Option<ChartStatus> {
        self.points
            .iter()
            .find(|p| p.a == a && p.b == b)
            .map(|p| p.status)
    }
}

fn lattice(n: usize) -> impl Iterator<Item = (u32, u32)> {
    let m = max_genus(n);
    (0..=m).flat_map(move |a| (a..=m).map(move |b| (a, b)))
}

pub fn realization_chart_from_table(table: &RangeTable) -> RealizationChart {
    let points = lattice(table.n)
        .map(|(a, b)| {
            let status = if a < b && table.gr_set.contains(&GenusRange::new(a, b)) {
                ChartStatus::Realized
            } else {
                ChartStatus::Impossible
            };
            ChartPoint { a, b, status }
        })
        .collect();
    RealizationChart {
        n: table.n,
        max_genus: max_genus(table.n),
        exact: true,
        points,
    }
}

/// Exact for `n` within the table budget; otherwise realized points come from
/// the constructions and the rest of the off-diagonal points are unknown.
pub fn realization_chart(n: usize, budget: &Budget) -> Result<RealizationChart, RangeError> {
    if budget.check_table(n).is_ok() {
        return Ok(realization_chart_from_table(&gr_table(n, budget)?));
    }
    let points = lattice(n)
        .map(|(a, b)| {
            let status = if a == b {
                ChartStatus::Impossible
            } else if theorem_construction(n, a, b).is_some() {
                ChartStatus::Realized
            } else {
                ChartStatus::Unknown
            };
            ChartPoint { a, b, status }
        })
        .collect();
    Ok(RealizationChart {
        n,
        max_genus: max_genus(n),
        exact: false,
        points,
    })
}
