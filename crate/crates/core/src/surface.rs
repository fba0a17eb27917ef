//! Thickened chord diagrams as rotation systems.
//!
//! Each endpoint `i` of the backbone carries three darts: `n_i` on the arc
//! toward `i + 1`, `p_i` on the arc toward `i - 1`, and the chord dart `c_i`.
//! Endpoints are indexed counterclockwise. The edge involution `alpha` pairs
//! `n_i <-> p_{i+1}` and `c_i <-> c_{pair(i)}`; the rotation `rho` at endpoint
//! `i` is `(n_i c_i p_i)` for an inner band end and `(n_i p_i c_i)` for an
//! outer one. Boundary curves are the cycles of `rho . alpha`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::ChordWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("attachment has {found} flags but the word has {expected} endpoints")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed attachment flag {0:?}; expected 'i' or 'o'")]
    MalformedAttachment(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    In,
    Out,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::In => Side::Out,
            Side::Out => Side::In,
        }
    }
}

/// One band-end side per endpoint position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttachmentConfig {
    sides: Vec<Side>,
}

impl AttachmentConfig {
    pub fn new(sides: Vec<Side>) -> Self {
        AttachmentConfig { sides }
    }

    pub fn all_in(len: usize) -> Self {
        AttachmentConfig::new(vec![Side::In; len])
    }

    pub fn all_out(len: usize) -> Self {
        AttachmentConfig::new(vec![Side::Out; len])
    }

    /// Bit `i` of `mask` set means endpoint `i` is attached outside.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        AttachmentConfig::new(
            (0..len)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Side::Out
                    } else {
                        Side::In
                    }
                })
                .collect(),
        )
    }

    pub fn mask(&self) -> u64 {
        assert!(
            self.sides.len() <= 64,
            "mask form holds at most 64 endpoints"
        );
        self.sides
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Side::Out)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Parses `io...` strings, or the aliases `all-in` / `all-out` sized to `len`.
    pub fn parse(text: &str, len: usize) -> Result<Self, SurfaceError> {
        let text = text.trim();
        let config = match text {
            "all-in" => AttachmentConfig::all_in(len),
            "all-out" => AttachmentConfig::all_out(len),
            _ => text.parse()?,
        };
        if config.len() != len {
            return Err(SurfaceError::LengthMismatch {
                expected: len,
                found: config.len(),
            });
        }
        Ok(config)
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side(&self, position: usize) -> Side {
        self.sides[position]
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn complement(&self) -> Self {
        AttachmentConfig::new(self.sides.iter().map(|s| s.flip()).collect())
    }

    pub fn with_flipped(&self, position: usize) -> Self {
        let mut sides = self.sides.clone();
        sides[position] = sides[position].flip();
        AttachmentConfig::new(sides)
    }
}

impl FromStr for AttachmentConfig {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'i' | 'I' => Ok(Side::In),
                'o' | 'O' => Ok(Side::Out),
                other => Err(SurfaceError::MalformedAttachment(other)),
            })
            .collect::<Result<_, _>>()
            .map(AttachmentConfig::new)
    }
}

impl fmt::Display for AttachmentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sides {
            f.write_str(match s {
                Side::In => "i",
                Side::Out => "o",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DartKind {
    Next = 0,
    Chord = 1,
    Prev = 2,
}

/// Half-edge identifier `3 * endpoint + kind`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(endpoint: usize, kind: DartKind) -> Dart {
        Dart(3 * endpoint + kind as usize)
    }

    pub fn endpoint(self) -> usize {
        self.0 / 3
    }

    pub fn kind(self) -> DartKind {
        match self.0 % 3 {
            0 => DartKind::Next,
            1 => DartKind::Chord,
            _ => DartKind::Prev,
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind() {
            DartKind::Next => 'n',
            DartKind::Chord => 'c',
            DartKind::Prev => 'p',
        };
        write!(f, "{tag}{}", self.endpoint())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    alpha: Vec<usize>,
    rho: Vec<usize>,
}

impl RotationSystem {
    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.alpha.len()).map(Dart)
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        Dart(self.alpha[d.0])
    }

    pub fn rho(&self, d: Dart) -> Dart {
        Dart(self.rho[d.0])
    }

    /// The face permutation `rho . alpha`.
    pub fn phi(&self, d: Dart) -> Dart {
        Dart(self.rho[self.alpha[d.0]])
    }

    /// Cyclic order of darts at an endpoint, starting from `n_i`.
    pub fn rotation_at(&self, endpoint: usize) -> [Dart; 3] {
        let first = Dart::new(endpoint, DartKind::Next);
        let second = self.rho(first);
        [first, second, self.rho(second)]
    }
}

pub fn build_rotation_system(
    w: &ChordWord,
    config: &AttachmentConfig,
) -> Result<RotationSystem, SurfaceError> {
    let len = w.len();
    if config.len() != len {
        return Err(SurfaceError::LengthMismatch {
            expected: len,
            found: config.len(),
        });
    }
    let pairing = w.pairing();
    let mut alpha = vec![0; 3 * len];
    let mut rho = vec![0; 3 * len];
    for i in 0..len {
        let n_i = Dart::new(i, DartKind::Next).0;
        let c_i = Dart::new(i, DartKind::Chord).0;
        let p_i = Dart::new(i, DartKind::Prev).0;
        let p_next = Dart::new((i + 1) % len, DartKind::Prev).0;
        alpha[n_i] = p_next;
        alpha[p_next] = n_i;
        alpha[c_i] = Dart::new(pairing.partner(i), DartKind::Chord).0;
        let cycle = match config.side(i) {
            Side::In => [n_i, c_i, p_i],
            Side::Out => [n_i, p_i, c_i],
        };
        for k in 0..3 {
            rho[cycle[k]] = cycle[(k + 1) % 3];
        }
    }
    Ok(RotationSystem { alpha, rho })
}

/// Boundary curves as cycles of `rho . alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDecomposition {
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

impl FaceDecomposition {
    /// Number of boundary components.
    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }
}

pub fn trace_faces(rs: &RotationSystem) -> FaceDecomposition {
    let total = rs.dart_count();
    let mut face_of = vec![usize::MAX; total];
    let mut faces = Vec::new();
    for start in rs.darts() {
        if face_of[start.0] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut face = Vec::new();
        let mut d = start;
        loop {
            assert_eq!(
                face_of[d.0],
                usize::MAX,
                "face permutation is not a bijection"
            );
            face_of[d.0] = id;
            face.push(d);
            d = rs.phi(d);
            if d == start {
                break;
            }
        }
        faces.push(face);
    }
    FaceDecomposition { faces, face_of }
}

/// `g = (n - b + 2) / 2`. Panics when the counts are inconsistent, which can
/// only come from a tracing bug.
pub fn genus_from_boundaries(n: usize, b: usize) -> u32 {
    let twice = (n + 2)
        .checked_sub(b)
        .unwrap_or_else(|| panic!("{b} boundary curves exceed n + 2 = {}", n + 2));
    assert!(
        twice.is_multiple_of(2),
        "parity violation: n = {n} and b = {b} differ in parity"
    );
    (twice / 2) as u32
}

pub fn genus(w: &ChordWord, config: &AttachmentConfig) -> Result<u32, SurfaceError> {
    let faces = trace_faces(&build_rotation_system(w, config)?);
    Ok(genus_from_boundaries(w.n(), faces.count()))
}

/// How many boundary curves run along the end edge (the arc through the basepoint).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndEdgeTrace {
    Single,
    Double,
}

impl EndEdgeTrace {
    /// The `c` of the `A(q, c)` / `E(q, c)` conditions.
    pub fn curves(self) -> usize {
        match self {
            EndEdgeTrace::Single => 1,
            EndEdgeTrace::Double => 2,
        }
    }
}

pub fn end_edge_of(w: &ChordWord, faces: &FaceDecomposition) -> EndEdgeTrace {
    let last = Dart::new(w.len() - 1, DartKind::Next);
    let first = Dart::new(0, DartKind::Prev);
    if faces.face_of(last) == faces.face_of(first) {
        EndEdgeTrace::Single
    } else {
        EndEdgeTrace::Double
    }
}

pub fn end_edge_trace(
    w: &ChordWord,
    config: &AttachmentConfig,
) -> Result<EndEdgeTrace, SurfaceError> {
    let faces = trace_faces(&build_rotation_system(w, config)?);
    Ok(end_edge_of(w, &faces))
}

/// Largest chord count supported by [`FaceCounter`] (chord darts fit in a `u64`).
pub const MAX_COUNTER_CHORDS: usize = 31;

/// Boundary counting for one word over many attachment masks.
///
/// Walks the first-return map of `rho . alpha` on chord darts only. Leaving
/// `c_k`, the walk crosses the chord to its partner `j`; an inner end turns
/// onto `p_j` and runs backward to the previous inner endpoint, an outer end
/// turns onto `n_j` and runs forward to the next outer endpoint. Both runs are
/// single bit scans. The only faces without chord darts are the all-`n` face
/// of the all-in configuration and the all-`p` face of the all-out one.
#[derive(Debug, Clone)]
pub struct FaceCounter {
    n: usize,
    partner: Vec<u8>,
    full: u64,
}

/// A chord-to-chord step, with flags for runs that cross the end edge.
struct Step {
    to: usize,
    through_last_next: bool,
    through_first_prev: bool,
}

impl FaceCounter {
    pub fn new(w: &ChordWord) -> Self {
        let n = w.n();
        assert!(
            n <= MAX_COUNTER_CHORDS,
            "FaceCounter supports at most {MAX_COUNTER_CHORDS} chords"
        );
        let pairing = w.pairing();
        FaceCounter {
            n,
            partner: (0..w.len()).map(|i| pairing.partner(i) as u8).collect(),
            full: (1u64 << w.len()) - 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    fn step(&self, k: usize, outs: u64, ins: u64) -> Step {
        let j = self.partner[k] as usize;
        if outs >> j & 1 == 0 {
            let below = ins & ((1u64 << j) - 1);
            let wrapped = below == 0;
            let pool = if wrapped { ins } else { below };
            Step {
                to: 63 - pool.leading_zeros() as usize,
                through_last_next: false,
                through_first_prev: wrapped,
            }
        } else {
            let above = outs & !((2u64 << j) - 1);
            let wrapped = above == 0;
            let pool = if wrapped { outs } else { above };
            Step {
                to: pool.trailing_zeros() as usize,
                through_last_next: wrapped,
                through_first_prev: false,
            }
        }
    }

    fn chord_free_faces(&self, outs: u64) -> u32 {
        u32::from(outs == 0) + u32::from(outs == self.full)
    }

    /// Number of boundary curves for the configuration `mask`.
    pub fn boundaries(&self, mask: u64) -> u32 {
        let outs = mask & self.full;
        let ins = !outs & self.full;
        let mut b = self.chord_free_faces(outs);
        let mut unvisited = self.full;
        while unvisited != 0 {
            let start = unvisited.trailing_zeros() as usize;
            let mut k = start;
            loop {
                unvisited &= !(1u64 << k);
                k = self.step(k, outs, ins).to;
                if k == start {
                    break;
                }
            }
            b += 1;
        }
        b
    }

    pub fn boundaries_with_end_edge(&self, mask: u64) -> (u32, EndEdgeTrace) {
        let outs = mask & self.full;
        let ins = !outs & self.full;
        let mut b = self.chord_free_faces(outs);
        let mut end = EndEdgeTrace::Double;
        let mut unvisited = self.full;
        while unvisited != 0 {
            let start = unvisited.trailing_zeros() as usize;
            let mut k = start;
            let (mut last_next, mut first_prev) = (false, false);
            loop {
                unvisited &= !(1u64 << k);
                let step = self.step(k, outs, ins);
                last_next |= step.through_last_next;
                first_prev |= step.through_first_prev;
                k = step.to;
                if k == start {
                    break;
                }
            }
            if last_next && first_prev {
                end = EndEdgeTrace::Single;
            }
            b += 1;
        }
        (b, end)
    }

    pub fn genus(&self, mask: u64) -> u32 {
        genus_from_boundaries(self.n, self.boundaries(mask) as usize)
    }
}
