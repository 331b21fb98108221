//! Homotopy-sector propagators.
//!
//! Paths are sorted by the homology class of their closure (path plus
//! reversed reference paths). With tree-geodesic reference paths the closure
//! offsets vanish, so a path's sector is simply the signed traversal count
//! of each generator edge.
//!
//! Two independent engines compute the same decomposition:
//!
//! - [`sector_propagators`] evolves amplitudes on the maximal-abelian cover,
//!   tracking (vertex, winding vector) states — polynomial in practice since
//!   only reachable windings are stored.
//! - [`sector_propagators_enumerated`] walks every path explicitly —
//!   exponential, capped, and kept as ground truth.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complex::{CWComplex, EdgePath, SpanningTree};
use crate::homology::{Character, FirstHomology};

use super::rule::StepRule;
use super::PropagatorError;

/// Default cap on enumerated paths (and on cover states per evolution step).
pub const DEFAULT_PATH_CAP: usize = 10_000_000;

/// Per-homology-class propagator matrices for a fixed step count.
///
/// `sectors[m][(x', x)]` is the sum over n-step paths from `x` to `x'` in
/// class `m` of the product of step amplitudes. Summing all sectors yields
/// the plain transfer-matrix propagator.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorPropagator {
    n_vertices: usize,
    n_steps: usize,
    sector_dim: usize,
    sectors: BTreeMap<Vec<i64>, DMatrix<Complex64>>,
    basepath_convention: &'static str,
}

impl SectorPropagator {
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Length of the sector keys: the number of π₁ generators.
    pub fn sector_dim(&self) -> usize {
        self.sector_dim
    }

    pub fn sectors(&self) -> &BTreeMap<Vec<i64>, DMatrix<Complex64>> {
        &self.sectors
    }

    pub fn sector(&self, class: &[i64]) -> Option<&DMatrix<Complex64>> {
        self.sectors.get(class)
    }

    /// How open paths were closed into loops to assign sectors.
    pub fn basepath_convention(&self) -> &str {
        self.basepath_convention
    }

    /// Sum of all sectors: the character-free propagator.
    pub fn total(&self) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.n_vertices, self.n_vertices);
        for matrix in self.sectors.values() {
            out += matrix;
        }
        out
    }

    /// Re-keys the sectors as if open paths were closed through the given
    /// reference paths (one per vertex, ending at the tree root) instead of
    /// the tree geodesics. Character-weighted propagators built from the
    /// result differ from the tree-closed ones only by endpoint-dependent
    /// phases, so intensities are unchanged.
    pub fn reclose_with_reference_paths(
        &self,
        c: &CWComplex,
        tree: &SpanningTree,
        refs: &[EdgePath],
    ) -> Result<SectorPropagator, PropagatorError> {
        if refs.len() != self.n_vertices {
            return Err(PropagatorError::BadVertex {
                vertex: refs.len(),
                n_vertices: self.n_vertices,
            });
        }
        let mut offsets = Vec::with_capacity(refs.len());
        for (v, r) in refs.iter().enumerate() {
            if r.start != v {
                return Err(PropagatorError::BadVertex {
                    vertex: r.start,
                    n_vertices: self.n_vertices,
                });
            }
            let end = r.end(c)?;
            if end != tree.root() {
                return Err(PropagatorError::ReferencePathEnd {
                    vertex: v,
                    end,
                    root: tree.root(),
                });
            }
            let mut class = vec![0i64; self.sector_dim];
            for &(edge, dir) in &r.steps {
                if let Some(g) = tree.generator_of_edge(edge) {
                    class[g] += dir as i64;
                }
            }
            offsets.push(class);
        }
        let mut sectors: BTreeMap<Vec<i64>, DMatrix<Complex64>> = BTreeMap::new();
        for (class, matrix) in &self.sectors {
            for x in 0..self.n_vertices {
                for x_prime in 0..self.n_vertices {
                    let amp = matrix[(x_prime, x)];
                    if amp == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    // closure = reverse(ref_x) · path · ref_{x'}
                    let shifted: Vec<i64> = (0..self.sector_dim)
                        .map(|g| class[g] - offsets[x][g] + offsets[x_prime][g])
                        .collect();
                    let entry = sectors
                        .entry(shifted)
                        .or_insert_with(|| DMatrix::zeros(self.n_vertices, self.n_vertices));
                    entry[(x_prime, x)] += amp;
                }
            }
        }
        Ok(SectorPropagator {
            n_vertices: self.n_vertices,
            n_steps: self.n_steps,
            sector_dim: self.sector_dim,
            sectors,
            basepath_convention: "caller-supplied reference paths",
        })
    }
}

/// One-step transfer matrix: `T[(x', x)]` is the amplitude to move from `x`
/// to `x'` in a single step.
pub fn transfer_matrix(c: &CWComplex, rule: &StepRule) -> DMatrix<Complex64> {
    let n = c.n_vertices();
    let mut t = DMatrix::zeros(n, n);
    for v in 0..n {
        t[(v, v)] += rule.stay_amplitude(v);
    }
    for (e, &(tail, head)) in c.edges().iter().enumerate() {
        let amp = rule.edge_amplitude(e);
        t[(head, tail)] += amp;
        t[(tail, head)] += amp;
    }
    t
}

/// The plain n-step propagator: the n-th power of the transfer matrix.
pub fn plain_propagator(c: &CWComplex, rule: &StepRule, n_steps: usize) -> DMatrix<Complex64> {
    let n = c.n_vertices();
    let t = transfer_matrix(c, rule);
    let mut out = DMatrix::identity(n, n);
    for _ in 0..n_steps {
        out = &t * out;
    }
    out
}

/// Sector decomposition by amplitude evolution on the maximal-abelian cover:
/// states are (vertex, winding vector) pairs, where the winding vector
/// counts signed traversals of each generator (non-tree) edge.
pub fn sector_propagators(
    c: &CWComplex,
    tree: &SpanningTree,
    rule: &StepRule,
    n_steps: usize,
) -> Result<SectorPropagator, PropagatorError> {
    sector_propagators_capped(c, tree, rule, n_steps, DEFAULT_PATH_CAP)
}

pub fn sector_propagators_capped(
    c: &CWComplex,
    tree: &SpanningTree,
    rule: &StepRule,
    n_steps: usize,
    state_cap: usize,
) -> Result<SectorPropagator, PropagatorError> {
    let n = c.n_vertices();
    let k = tree.generator_edges().len();
    let mut sectors: BTreeMap<Vec<i64>, DMatrix<Complex64>> = BTreeMap::new();

    for start in 0..n {
        // amplitude per (winding, vertex) state
        let mut state: BTreeMap<(Vec<i64>, usize), Complex64> = BTreeMap::new();
        state.insert((vec![0i64; k], start), Complex64::new(1.0, 0.0));
        for _ in 0..n_steps {
            let mut next: BTreeMap<(Vec<i64>, usize), Complex64> = BTreeMap::new();
            for ((winding, vertex), amp) in &state {
                let stay = rule.stay_amplitude(*vertex);
                *next.entry((winding.clone(), *vertex)).or_default() += amp * stay;
                for (e, &(tail, head)) in c.edges().iter().enumerate() {
                    let hop = rule.edge_amplitude(e);
                    let generator = tree.generator_of_edge(e);
                    if tail == *vertex {
                        let mut w = winding.clone();
                        if let Some(g) = generator {
                            w[g] += 1;
                        }
                        *next.entry((w, head)).or_default() += amp * hop;
                    }
                    if head == *vertex {
                        let mut w = winding.clone();
                        if let Some(g) = generator {
                            w[g] -= 1;
                        }
                        *next.entry((w, tail)).or_default() += amp * hop;
                    }
                }
            }
            if next.len() > state_cap {
                return Err(PropagatorError::SizeGuard {
                    what: "cover states",
                    count: next.len(),
                    cap: state_cap,
                });
            }
            state = next;
        }
        for ((winding, vertex), amp) in state {
            let entry = sectors
                .entry(winding)
                .or_insert_with(|| DMatrix::zeros(n, n));
            entry[(vertex, start)] += amp;
        }
    }

    Ok(SectorPropagator {
        n_vertices: n,
        n_steps,
        sector_dim: k,
        sectors,
        basepath_convention: "tree geodesics to the root (zero closure offset)",
    })
}

/// Ground-truth sector decomposition by exhaustive path enumeration.
///
/// Walks every n-step trajectory (stay or traverse an incident edge at each
/// step) from every start vertex. The per-start path count is
/// (1 + deg)^n_steps; `path_cap` bounds the total before the walk begins.
pub fn sector_propagators_enumerated(
    c: &CWComplex,
    tree: &SpanningTree,
    rule: &StepRule,
    n_steps: usize,
    path_cap: usize,
) -> Result<SectorPropagator, PropagatorError> {
    let n = c.n_vertices();
    let k = tree.generator_edges().len();

    // One-step move table: destination, amplitude, and the winding change
    // when a generator edge is crossed.
    #[derive(Clone, Copy)]
    struct Move {
        dest: usize,
        amp: Complex64,
        delta: Option<(usize, i64)>,
    }
    let mut moves: Vec<Vec<Move>> = (0..n)
        .map(|v| {
            vec![Move {
                dest: v,
                amp: rule.stay_amplitude(v),
                delta: None,
            }]
        })
        .collect();
    for (e, &(tail, head)) in c.edges().iter().enumerate() {
        let hop = rule.edge_amplitude(e);
        let delta = tree.generator_of_edge(e);
        moves[tail].push(Move {
            dest: head,
            amp: hop,
            delta: delta.map(|g| (g, 1)),
        });
        moves[head].push(Move {
            dest: tail,
            amp: hop,
            delta: delta.map(|g| (g, -1)),
        });
    }

    let total_paths = moves.iter().fold(0usize, |acc, m| {
        acc.saturating_add(m.len().checked_pow(n_steps as u32).unwrap_or(usize::MAX))
    });
    if total_paths > path_cap {
        return Err(PropagatorError::SizeGuard {
            what: "enumerated paths",
            count: total_paths,
            cap: path_cap,
        });
    }

    struct Walk<'a> {
        moves: &'a [Vec<Move>],
        sectors: BTreeMap<Vec<i64>, DMatrix<Complex64>>,
        n: usize,
        start: usize,
    }

    impl Walk<'_> {
        fn go(&mut self, at: usize, winding: &mut Vec<i64>, amp: Complex64, steps_left: usize) {
            if steps_left == 0 {
                let entry = self
                    .sectors
                    .entry(winding.clone())
                    .or_insert_with(|| DMatrix::zeros(self.n, self.n));
                entry[(at, self.start)] += amp;
                return;
            }
            for i in 0..self.moves[at].len() {
                let Move { dest, amp: hop, delta } = self.moves[at][i];
                if let Some((g, d)) = delta {
                    winding[g] += d;
                }
                self.go(dest, winding, amp * hop, steps_left - 1);
                if let Some((g, d)) = delta {
                    winding[g] -= d;
                }
            }
        }
    }

    let mut walk = Walk {
        moves: &moves,
        sectors: BTreeMap::new(),
        n,
        start: 0,
    };
    for start in 0..n {
        walk.start = start;
        let mut winding = vec![0i64; k];
        walk.go(start, &mut winding, Complex64::new(1.0, 0.0), n_steps);
    }
    let sectors = walk.sectors;

    Ok(SectorPropagator {
        n_vertices: n,
        n_steps,
        sector_dim: k,
        sectors,
        basepath_convention: "tree geodesics to the root (zero closure offset)",
    })
}

/// Character-weighted propagator: K_χ = Σ_m χ(m)·K_m.
pub fn weighted_propagator(
    sp: &SectorPropagator,
    chi: &Character,
    h: &FirstHomology,
) -> Result<DMatrix<Complex64>, PropagatorError> {
    if h.n_generators() != sp.sector_dim() {
        return Err(PropagatorError::SectorKeyMismatch {
            key_len: sp.sector_dim(),
            expected: h.n_generators(),
        });
    }
    let n = sp.n_vertices();
    let mut out = DMatrix::zeros(n, n);
    for (class, matrix) in sp.sectors() {
        let weight = chi.evaluate_exponents(h, class)?;
        out += matrix.map(|a| a * weight);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::FirstHomology;

    fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_steps_is_identity_in_sector_zero() {
        let ring = fixtures::ring(4);
        let tree = ring.spanning_tree().unwrap();
        let rule = StepRule::default_for(&ring);
        let sp = sector_propagators(&ring, &tree, &rule, 0).unwrap();
        assert_eq!(sp.sectors().len(), 1);
        let zero_sector = sp.sector(&[0]).unwrap();
        assert_eq!(zero_sector, &DMatrix::identity(4, 4));
    }

    #[test]
    fn c3_three_step_windings_are_pure_circuits() {
        // On C₃, the only 3-step paths from 0 back to 0 with winding ±1 are
        // the two full circuits, each with amplitude (edge amp)³.
        let ring = fixtures::ring(3);
        let tree = ring.spanning_tree().unwrap();
        let lambda = 0.1;
        let rule = StepRule::uniform(&ring, lambda);
        let sp = sector_propagators(&ring, &tree, &rule, 3).unwrap();
        let hop = Complex64::new(0.0, lambda);
        let circuit = hop * hop * hop;
        for class in [1i64, -1] {
            let sector = sp.sector(&[class]).unwrap();
            assert!(
                (sector[(0, 0)] - circuit).norm() < 1e-15,
                "winding {class}"
            );
        }
    }

    #[test]
    fn sector_sum_is_plain_propagator() {
        for (c, steps) in [
            (fixtures::ring(4), 5),
            (fixtures::wedge_two_circles(), 4),
            (fixtures::path_graph(3), 6),
        ] {
            let tree = c.spanning_tree().unwrap();
            let rule = StepRule::default_for(&c);
            let sp = sector_propagators(&c, &tree, &rule, steps).unwrap();
            let plain = plain_propagator(&c, &rule, steps);
            assert!(max_abs_diff(&sp.total(), &plain) < 1e-12);
        }
    }

    #[test]
    fn engines_agree_exactly() {
        for (c, steps) in [
            (fixtures::ring(3), 5),
            (fixtures::ring(6), 4),
            (fixtures::wedge_two_circles(), 5),
            (fixtures::torus(), 4),
        ] {
            let tree = c.spanning_tree().unwrap();
            let rule = StepRule::default_for(&c);
            let fast = sector_propagators(&c, &tree, &rule, steps).unwrap();
            let slow =
                sector_propagators_enumerated(&c, &tree, &rule, steps, DEFAULT_PATH_CAP)
                    .unwrap();
            assert_eq!(
                fast.sectors().keys().collect::<Vec<_>>(),
                slow.sectors().keys().collect::<Vec<_>>()
            );
            for (class, matrix) in fast.sectors() {
                let other = slow.sector(class).unwrap();
                assert!(
                    max_abs_diff(matrix, other) < 1e-12,
                    "sector {class:?} differs"
                );
            }
        }
    }

    #[test]
    fn identity_character_reproduces_plain_propagator() {
        let ring = fixtures::ring(5);
        let tree = ring.spanning_tree().unwrap();
        let rule = StepRule::default_for(&ring);
        let sp = sector_propagators(&ring, &tree, &rule, 5).unwrap();
        let cp = ring.fundamental_presentation(0).unwrap();
        let h = FirstHomology::of_presentation(&cp.presentation);
        let chi = Character::identity(&h);
        let weighted = weighted_propagator(&sp, &chi, &h).unwrap();
        let plain = plain_propagator(&ring, &rule, 5);
        assert!(max_abs_diff(&weighted, &plain) < 1e-12);
    }

    #[test]
    fn path_cap_guard_trips() {
        let ring = fixtures::ring(6);
        let tree = ring.spanning_tree().unwrap();
        let rule = StepRule::default_for(&ring);
        let err = sector_propagators_enumerated(&ring, &tree, &rule, 10, 100);
        assert!(matches!(err, Err(PropagatorError::SizeGuard { .. })));
    }

    #[test]
    fn recloser_only_rephases_weighted_entries() {
        use crate::complex::EdgePath;
        let ring = fixtures::ring(4);
        let tree = ring.spanning_tree().unwrap();
        let rule = StepRule::default_for(&ring);
        let sp = sector_propagators(&ring, &tree, &rule, 4).unwrap();

        // Alternative reference paths: walk the long way around the ring.
        let refs: Vec<EdgePath> = (0..4)
            .map(|v| {
                // from v onward to 4 ≡ 0 through increasing edges
                let steps: Vec<(usize, i8)> = (v..4).map(|e| (e, 1)).collect();
                EdgePath::new(v, steps)
            })
            .collect();
        let reclosed = sp.reclose_with_reference_paths(&ring, &tree, &refs).unwrap();

        // Totals are unchanged: re-keying moves amplitude between sectors
        // only.
        assert!(max_abs_diff(&sp.total(), &reclosed.total()) < 1e-12);

        // Character weighting changes entries by unit phases only.
        let cp = ring.fundamental_presentation(0).unwrap();
        let h = FirstHomology::of_presentation(&cp.presentation);
        let chi = Character::new(&h, vec![1.234], vec![]).unwrap();
        let a = weighted_propagator(&sp, &chi, &h).unwrap();
        let b = weighted_propagator(&reclosed, &chi, &h).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((a[(i, j)].norm() - b[(i, j)].norm()).abs() < 1e-12);
            }
        }
    }
}
