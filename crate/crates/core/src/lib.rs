//! Genus ranges of thickened chord diagrams.
//!
//! A chord diagram with `n` chords, thickened so that each band end sits on
//! either the inner or the outer boundary of the backbone annulus, yields
//! `4^n` orientable surfaces. This crate computes their genera, tabulates
//! the resulting genus ranges over all diagrams up to equivalence, and builds
//! diagrams that realize prescribed ranges.
//!
//! ```
//! use genus_range::{genus_range, parse, GenusRange};
//!
//! let w = parse("12312345674675").unwrap();
//! assert_eq!(genus_range(&w).unwrap(), GenusRange::new(2, 4));
//! ```

pub mod cache;
pub mod ranges;
pub mod surface;
pub mod words;

pub use ranges::{
    check_conjectures, check_nested_triple_lemma, classify_end_edge, classify_end_edge_with,
    connected_sum_law, end_edge_survey, genus_profile, genus_profile_with, genus_range,
    genus_range_with, gr_table, realization_chart, witness, Budget, ChartStatus, ConjectureReport,
    EndEdgeClass, Extremum, GenusProfile, GenusRange, RangeError, RangeTable, RealizationChart,
    Witness,
};
pub use surface::{
    build_rotation_system, end_edge_trace, genus, trace_faces, AttachmentConfig, Dart,
    EndEdgeTrace, FaceCounter, FaceDecomposition, RotationSystem, Side, SurfaceError,
};
pub use words::{
    canonical_form, concat, contains_nested_triple, enumerate_words, equivalent, parse, restrict,
    ChordWord, WordError,
};
