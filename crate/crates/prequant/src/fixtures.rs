//! Small reference complexes and atlases used by the test suite and the CLI
//! demos.

use std::collections::BTreeMap;

use crate::bundle::{Chart, ChartAtlas};
use crate::complex::CWComplex;

/// Cycle graph Cₙ: vertices 0..n, edge i → (i+1) mod n, no faces. The
/// standard annulus model: b₁ = 1.
pub fn ring(n: usize) -> CWComplex {
    assert!(n >= 1);
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    CWComplex::new(n, edges, vec![])
}

/// One vertex carrying a single loop edge: π₁ = ℤ.
pub fn circle() -> CWComplex {
    CWComplex::new(1, vec![(0, 0)], vec![])
}

/// Path graph on n vertices: contractible.
pub fn path_graph(n: usize) -> CWComplex {
    assert!(n >= 1);
    let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    CWComplex::new(n, edges, vec![])
}

/// Cycle Cₙ with a single face filling it: a disc, simply connected.
pub fn disc(n: usize) -> CWComplex {
    assert!(n >= 3);
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let boundary = (0..n).map(|e| (e, 1)).collect();
    CWComplex::new(n, edges, vec![boundary])
}

/// Wedge of two circles at a single vertex: b₁ = 2.
pub fn wedge_two_circles() -> CWComplex {
    CWComplex::new(1, vec![(0, 0), (0, 0)], vec![])
}

/// Torus: one vertex, two loop edges a, b, one face glued along the
/// commutator a b a⁻¹ b⁻¹. H₁ = ℤ², and every 1-cochain is flat.
pub fn torus() -> CWComplex {
    CWComplex::new(
        1,
        vec![(0, 0), (0, 0)],
        vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]],
    )
}

/// Klein bottle: one vertex, two loop edges, face glued along a b a b⁻¹.
/// H₁ = ℤ ⊕ ℤ₂ — free and torsion parts in one fixture.
pub fn klein_bottle() -> CWComplex {
    CWComplex::new(
        1,
        vec![(0, 0), (0, 0)],
        vec![vec![(0, 1), (1, 1), (0, 1), (1, -1)]],
    )
}

/// Surface of a cube: 8 vertices, 12 edges, 6 coherently oriented faces, so
/// the 2-cycle basis is the all-ones face vector. Vertices 0–3 are the
/// bottom square, 4–7 the top; edge k+8 rises from vertex k.
pub fn cube_surface() -> CWComplex {
    let edges = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 4),
        (0, 4),
        (1, 5),
        (2, 6),
        (3, 7),
    ];
    let faces = vec![
        // bottom, seen from outside
        vec![(3, -1), (2, -1), (1, -1), (0, -1)],
        // four sides
        vec![(0, 1), (9, 1), (4, -1), (8, -1)],
        vec![(1, 1), (10, 1), (5, -1), (9, -1)],
        vec![(2, 1), (11, 1), (6, -1), (10, -1)],
        vec![(3, 1), (8, 1), (7, -1), (11, -1)],
        // top
        vec![(4, 1), (5, 1), (6, 1), (7, 1)],
    ];
    CWComplex::new(8, edges, faces)
}

/// The two-chart annulus: a C₆ ring covered by two overlapping arcs with a
/// nontrivial U(1) transition between them.
///
/// Chart 0 covers vertices {5,0,1,2,3}, chart 1 covers {2,3,4,5,0}; they
/// share edges 2 and 5, where the potentials differ by ħ·dφ (plus one
/// deliberate 2πħ jump on edge 5 to exercise the mod-2πħ compatibility).
pub fn two_chart_annulus(hbar: f64) -> (CWComplex, ChartAtlas) {
    use std::f64::consts::TAU;
    let complex = ring(6);

    // transition angles on the overlap {0, 2, 3, 5}
    let phi: BTreeMap<usize, f64> =
        [(0, 1.1), (2, 0.3), (3, 0.9), (5, -0.4)].into();

    // chart 0 potential on edges 5,0,1,2
    let theta0: BTreeMap<usize, f64> = [
        (5, 0.25 * hbar),
        (0, 0.5 * hbar),
        (1, -0.2 * hbar),
        (2, 0.7 * hbar),
    ]
    .into();
    // chart 1 potential on edges 2,3,4,5; on the shared edges
    // θ₀ − θ₁ = ħ(φ(head) − φ(tail)), up to the 2πħ jump on edge 5.
    let theta1: BTreeMap<usize, f64> = [
        (2, 0.7 * hbar - hbar * (phi[&3] - phi[&2])),
        (3, 0.45 * hbar),
        (4, 0.85 * hbar),
        (5, 0.25 * hbar - hbar * (phi[&0] - phi[&5]) + TAU * hbar),
    ]
    .into();

    let charts = vec![
        Chart::new([5, 0, 1, 2, 3], theta0),
        Chart::new([2, 3, 4, 5, 0], theta1),
    ];
    let mut transitions = BTreeMap::new();
    transitions.insert((0, 1), phi);
    let atlas = ChartAtlas::new(charts, transitions);
    (complex, atlas)
}
