//! Lattice path-integral laboratory: propagators split by homology sector,
//! character weighting, Aharonov-Bohm interference, exchange statistics, and
//! equivariant wave-function bookkeeping.

mod ab;
mod exchange;
mod rule;
mod sectors;
mod wavefunction;

pub use ab::{ab_interference_scan, AbScan, AbScanRow};
pub use exchange::{exchange_statistics_demo, ExchangeReport, TwoParticleSpace};
pub use rule::StepRule;
pub use sectors::{
    plain_propagator, sector_propagators, sector_propagators_enumerated, transfer_matrix,
    weighted_propagator, SectorPropagator, DEFAULT_PATH_CAP,
};
pub use wavefunction::{lift_invariance_check, regauge_wavefunction, WaveFunction};

use thiserror::Error;

use crate::bundle::BundleError;
use crate::complex::ComplexError;
use crate::homology::HomologyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PropagatorError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("step rule has {got} edge amplitudes but the complex has {expected} edges")]
    EdgeAmplitudeCount { expected: usize, got: usize },
    #[error("step rule has {got} stay amplitudes but the complex has {expected} vertices")]
    StayAmplitudeCount { expected: usize, got: usize },
    #[error("non-finite amplitude in step rule")]
    NonFiniteAmplitude,
    #[error("resource guard exceeded: {count} {what} (cap {cap})")]
    SizeGuard {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("homology sector keys have length {key_len} but the homology has {expected} generators")]
    SectorKeyMismatch { key_len: usize, expected: usize },
    #[error("expected a complex with b₁ = 1, found b₁ = {betti} with {torsion} torsion invariants")]
    WrongTopology { betti: usize, torsion: usize },
    #[error("vertex {vertex} out of range ({n_vertices} vertices)")]
    BadVertex { vertex: usize, n_vertices: usize },
    #[error("reference path for vertex {vertex} ends at {end}, not at the basepoint {root}")]
    ReferencePathEnd {
        vertex: usize,
        end: usize,
        root: usize,
    },
    #[error("base graph must have at least 2 vertices, got {0}")]
    BaseGraphTooSmall(usize),
    #[error("base graph for the exchange construction must have no faces")]
    BaseGraphHasFaces,
    #[error("two-particle quotient space is disconnected for this base graph")]
    QuotientDisconnected,
    #[error("wave function support vertex {vertex} lies outside the chart overlap")]
    OutsideOverlap { vertex: usize },
}
