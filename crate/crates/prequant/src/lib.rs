//! Classification of the inequivalent U(1) prequantizations of a multiply
//! connected configuration space, together with a small numerical laboratory
//! that realizes the corresponding Feynman factors and homotopy-sector
//! propagators on discrete models.
//!
//! The crate is organized around four layers:
//!
//! - [`homology`] — exact integer linear algebra: group words, abelianization,
//!   Smith normal form, first homology, and the character group of the
//!   fundamental group with its component structure.
//! - [`complex`] — 2-dimensional CW complexes, edge paths and loops, spanning
//!   trees, fundamental-group presentations, and 2-cycle bases.
//! - [`bundle`] — discrete connection geometry: edge/face cochains, chart
//!   atlases with U(1) transition functions, horizontal lifts, Feynman-factor
//!   gluing, the Weil integrality check, and flat-connection classification.
//! - [`propagator`] — lattice path integrals split by homology sector,
//!   character-weighted propagators, Aharonov-Bohm interference scans, and
//!   two-particle exchange statistics.
//!
//! [`fixtures`] builds the small reference complexes used throughout the test
//! suite and the CLI, and [`io`] defines the JSON wire formats.

pub mod bundle;
pub mod complex;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod propagator;

/// Default tolerance for flatness, Weil integrality, and angle comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

pub use bundle::{
    atlas_consistency, classify_connection, feynman_factor_chart, feynman_factor_glued,
    holonomy, horizontal_lift, prequantizations_equivalent, weil_check, ChartAtlas,
    DiscreteOneForm, DiscreteTwoForm, LiftedPath, Prequantization,
};
pub use complex::{CWComplex, EdgePath, Loop, SpanningTree};
pub use homology::{
    character_group, enumerate_characters, smith_normal_form, Character,
    CharacterGroupSummary, FinitePresentation, FirstHomology, GroupWord, IntegerMatrix,
    SmithDecomposition,
};
pub use propagator::{
    ab_interference_scan, exchange_statistics_demo, lift_invariance_check, regauge_wavefunction,
    sector_propagators, sector_propagators_enumerated, weighted_propagator, SectorPropagator,
    StepRule, WaveFunction,
};
