//! Discrete prequantization geometry: chart potentials and U(1) transition
//! functions, Weil integrality, horizontal lifts, Feynman factors with
//! cross-chart gluing, flat-connection holonomy, and bundle/connection
//! classification.
//!
//! Discretization conventions: 1-forms are edge cochains, 2-forms face
//! cochains, and the exterior derivative is a signed boundary sum, so Stokes
//! holds exactly. The transition relation carries an explicit ħ:
//! θⱼ − θₖ = ħ·dφⱼₖ on overlap edges, up to 2πħ·integer. Form values are in
//! action units; angles in radians.

mod atlas;
mod classify;
mod forms;
mod lift;

pub use atlas::{atlas_consistency, AtlasViolation, Chart, ChartAtlas};
pub use classify::{
    classify_connection, holonomy, prequantizations_equivalent, weil_check,
    ConnectionClassification, EquivalenceReport, Prequantization, WeilCycleCheck, WeilReport,
};
pub use forms::{DiscreteOneForm, DiscreteTwoForm};
pub use lift::{feynman_factor_chart, feynman_factor_glued, horizontal_lift, GluedFactor, LiftedPath};
pub(crate) use lift::glued_walk;

use thiserror::Error;

use crate::complex::ComplexError;
use crate::homology::HomologyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("one-form has {got} values but the complex has {expected} edges")]
    OneFormSize { expected: usize, got: usize },
    #[error("two-form has {got} values but the complex has {expected} faces")]
    TwoFormSize { expected: usize, got: usize },
    #[error("chart index {chart} out of range ({n_charts} charts)")]
    BadChart { chart: usize, n_charts: usize },
    #[error("path leaves chart {chart} at step {step}")]
    ChartEscape { chart: usize, step: usize },
    #[error("no chart covers step {step} of the path")]
    CoverageGap { step: usize },
    #[error("missing transition angle between charts {from} and {to} at vertex {vertex}")]
    MissingTransition {
        from: usize,
        to: usize,
        vertex: usize,
    },
    #[error("chart schedule has {got} entries for a path of {expected} steps")]
    ScheduleLength { expected: usize, got: usize },
    #[error("scheduled chart {chart} does not cover step {step}")]
    ScheduleEscape { chart: usize, step: usize },
    #[error("connection is not flat: face {face} has curvature {curvature:.3e} (tolerance {tol:.1e})")]
    NotFlat {
        face: usize,
        curvature: f64,
        tol: f64,
    },
    #[error("ħ must be positive, got {0}")]
    NonPositiveHbar(f64),
    #[error("non-finite value in input")]
    NonFiniteValue,
}
