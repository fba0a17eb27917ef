#![allow(dead_code)]

use genus_range::{AttachmentConfig, ChordWord, EndEdgeTrace, Side};
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;

/// Boundary curves counted from side segments instead of darts.
///
/// Every backbone arc `a_k` (from endpoint `k` to `k + 1`) has an inner side
/// `I_k` and an outer side `O_k`. The annulus boundary runs counterclockwise
/// on the outer circle and clockwise on the inner one. At endpoint `i` the
/// band end occupies an interval of one boundary circle; `s_i` is where the
/// boundary enters that interval and `t_i` where it leaves. An untwisted band
/// for chord `(i, j)` joins `s_i` to `t_j` and `s_j` to `t_i`, and the side
/// of the backbone without a band end runs straight through the junction.
pub struct SideSegments {
    pub components: usize,
    pub end_edge: EndEdgeTrace,
}

pub fn side_segment_oracle(w: &ChordWord, config: &AttachmentConfig) -> SideSegments {
    let len = w.len();
    let inner = |k: usize| 2 * (k % len);
    let outer = |k: usize| 2 * (k % len) + 1;
    let mut uf = UnionFind::<usize>::new(2 * len);
    // (entry, exit) of each band-end interval
    let ends: Vec<(usize, usize)> = (0..len)
        .map(|i| {
            let before = i + len - 1;
            match config.side(i) {
                Side::In => {
                    uf.union(outer(before), outer(i));
                    (inner(i), inner(before))
                }
                Side::Out => {
                    uf.union(inner(before), inner(i));
                    (outer(before), outer(i))
                }
            }
        })
        .collect();
    for (i, j) in w.pairing().pairs() {
        uf.union(ends[i].0, ends[j].1);
        uf.union(ends[j].0, ends[i].1);
    }
    let labels = uf.into_labeling();
    let mut roots = labels.clone();
    roots.sort_unstable();
    roots.dedup();
    let last = len - 1;
    let end_edge = if labels[inner(last)] == labels[outer(last)] {
        EndEdgeTrace::Single
    } else {
        EndEdgeTrace::Double
    };
    SideSegments {
        components: roots.len(),
        end_edge,
    }
}

/// Uniformly random perfect matching on `2n` points, normalized.
pub fn random_word<R: Rng>(n: usize, rng: &mut R) -> ChordWord {
    let mut labels: Vec<u64> = (1..=n as u64).flat_map(|l| [l, l]).collect();
    labels.shuffle(rng);
    ChordWord::from_labels(labels).expect("shuffled labels form a double-occurrence word")
}

pub fn random_config<R: Rng>(len: usize, rng: &mut R) -> AttachmentConfig {
    AttachmentConfig::from_mask(len, rng.gen::<u64>() & ((1u64 << len) - 1))
}

pub fn double_factorial_odd(n: usize) -> usize {
    (1..=n).map(|k| 2 * k - 1).product()
}
