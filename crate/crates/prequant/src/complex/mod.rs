//! Discrete configuration-space geometry: 2-dimensional CW complexes, edge
//! paths and loops, spanning trees, fundamental-group presentations, and
//! 2-cycle bases.

mod cw;
mod path;

pub use cw::{CWComplex, ComplexPresentation, SpanningTree};
pub use path::{EdgePath, Loop};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("bad endpoint: edge {edge} references vertex {vertex} but the complex has {n_vertices} vertices")]
    BadEndpoint {
        edge: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("edge index {edge} out of range ({n_edges} edges)")]
    BadEdgeIndex { edge: usize, n_edges: usize },
    #[error("step direction must be +1 or -1, got {0}")]
    BadDirection(i8),
    #[error("open face boundary: face {face} does not close up")]
    OpenFaceBoundary { face: usize },
    #[error("face {face} has an empty boundary word")]
    EmptyFaceBoundary { face: usize },
    #[error("complex is disconnected: reached {reached} of {total} vertices")]
    Disconnected { reached: usize, total: usize },
    #[error("path breaks at step {step}: step tail {found} does not match current vertex {expected}")]
    BrokenPath {
        step: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex index {vertex} out of range ({n_vertices} vertices)")]
    BadVertex { vertex: usize, n_vertices: usize },
    #[error("not a loop: path starts at {start} but ends at {end}")]
    NotALoop { start: usize, end: usize },
    #[error("cannot compose: first path ends at {end}, second starts at {start}")]
    CompositionMismatch { end: usize, start: usize },
}
