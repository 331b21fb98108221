//! Two identical particles on a graph: the ordered-pair configuration space,
//! its quotient by the swap, and the boson/fermion propagators.
//!
//! The swap acts freely on ordered distinct pairs (the diagonal — collisions
//! — is excluded), so the quotient map is a double cover. A loop downstairs
//! is "even" when its lift comes back to the same ordered pair and "odd"
//! when the particles come back exchanged; bosons weight both sectors with
//! +1, fermions weight the odd sector with −1.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complex::{CWComplex, Loop};
use crate::homology::{Character, FirstHomology};

use super::rule::StepRule;
use super::sectors::{plain_propagator, sector_propagators, weighted_propagator};
use super::PropagatorError;

/// The two-particle configuration spaces over a base graph, with the maps
/// between them.
#[derive(Debug, Clone)]
pub struct TwoParticleSpace {
    /// Ordered distinct pairs; may be disconnected (it is for a 2-vertex
    /// base), which is fine — only the quotient needs a spanning tree.
    pub cover: CWComplex,
    /// Unordered distinct pairs: the physical configuration space.
    pub quotient: CWComplex,
    /// Cover vertex index → ordered pair of base vertices.
    pub cover_pairs: Vec<(usize, usize)>,
    /// The swap involution on cover vertices.
    pub swap: Vec<usize>,
    /// Cover vertex → quotient vertex.
    pub project_vertex: Vec<usize>,
    /// Quotient vertex → its canonical lift (u, v) with u < v.
    pub lift_vertex: Vec<usize>,
}

impl TwoParticleSpace {
    /// Builds the cover and quotient over a base graph (no faces, ≥ 2
    /// vertices).
    ///
    /// Quotient edge `i` is covered by cover edges `2i` (first particle
    /// moves) and `2i+1` (second particle moves), which are swapped by the
    /// involution.
    pub fn build(base: &CWComplex) -> Result<Self, PropagatorError> {
        if base.n_vertices() < 2 {
            return Err(PropagatorError::BaseGraphTooSmall(base.n_vertices()));
        }
        if base.n_faces() > 0 {
            return Err(PropagatorError::BaseGraphHasFaces);
        }
        base.validate()?;
        let n = base.n_vertices();

        let mut cover_pairs = Vec::new();
        let mut pair_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    pair_index.insert((u, v), cover_pairs.len());
                    cover_pairs.push((u, v));
                }
            }
        }
        let swap: Vec<usize> = cover_pairs.iter().map(|&(u, v)| pair_index[&(v, u)]).collect();

        let mut quotient_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut quotient_vertices = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                quotient_index.insert((u, v), quotient_vertices.len());
                quotient_vertices.push((u, v));
            }
        }
        let project_vertex: Vec<usize> = cover_pairs
            .iter()
            .map(|&(u, v)| quotient_index[&(u.min(v), u.max(v))])
            .collect();
        let lift_vertex: Vec<usize> = quotient_vertices
            .iter()
            .map(|&(u, v)| pair_index[&(u, v)])
            .collect();

        let mut cover_edges = Vec::new();
        let mut quotient_edges = Vec::new();
        for &(a, b) in base.edges() {
            for w in 0..n {
                if w == a || w == b {
                    continue;
                }
                // first particle moves a → b, spectator w
                cover_edges.push((pair_index[&(a, w)], pair_index[&(b, w)]));
                // second particle moves, the swapped copy
                cover_edges.push((pair_index[&(w, a)], pair_index[&(w, b)]));
                quotient_edges.push((
                    quotient_index[&(a.min(w), a.max(w))],
                    quotient_index[&(b.min(w), b.max(w))],
                ));
            }
        }

        let cover = CWComplex::new(cover_pairs.len(), cover_edges, vec![]);
        let quotient = CWComplex::new(quotient_vertices.len(), quotient_edges, vec![]);
        if quotient.validate().is_err() {
            return Err(PropagatorError::QuotientDisconnected);
        }
        Ok(TwoParticleSpace {
            cover,
            quotient,
            cover_pairs,
            swap,
            project_vertex,
            lift_vertex,
        })
    }

    /// Lifts one quotient step starting at the given cover vertex; `None`
    /// when the step does not start over that vertex.
    pub fn lift_step(&self, cover_at: usize, edge: usize, dir: i8) -> Option<usize> {
        for ce in [2 * edge, 2 * edge + 1] {
            let (tail, head) = self.cover.edge(ce);
            match dir {
                1 if tail == cover_at => return Some(head),
                -1 if head == cover_at => return Some(tail),
                _ => {}
            }
        }
        None
    }

    /// Lifts a quotient path from the canonical lift of its start; returns
    /// the final cover vertex.
    pub fn lift_path_end(&self, path: &crate::complex::EdgePath) -> Option<usize> {
        let mut at = self.lift_vertex[path.start];
        for &(edge, dir) in &path.steps {
            at = self.lift_step(at, edge, dir)?;
        }
        Some(at)
    }

    /// Deck parity of a quotient loop: false when its lift closes up, true
    /// when it comes back swapped.
    pub fn loop_parity(&self, l: &Loop) -> bool {
        let start = self.lift_vertex[l.basepoint()];
        let end = self
            .lift_path_end(l.path())
            .expect("valid quotient loops always lift");
        if end == start {
            false
        } else {
            debug_assert_eq!(end, self.swap[start]);
            true
        }
    }
}

/// Everything the exchange demo produces.
#[derive(Debug, Clone)]
pub struct ExchangeReport {
    pub space: TwoParticleSpace,
    pub n_steps: usize,
    /// Plain propagator on the cover; its (x', x) entry is the direct
    /// (even-sector) amplitude.
    pub direct: DMatrix<Complex64>,
    /// Exchange amplitudes: direct with the arrival point swapped.
    pub exchange: DMatrix<Complex64>,
    /// direct + exchange, indexed by cover vertices.
    pub boson: DMatrix<Complex64>,
    /// direct − exchange, indexed by cover vertices.
    pub fermion: DMatrix<Complex64>,
    /// Character-weighted propagators on the quotient, for cross-checking
    /// against the cover route.
    pub boson_quotient: DMatrix<Complex64>,
    pub fermion_quotient: DMatrix<Complex64>,
    /// max |boson(swap x', x) − boson(x', x)|
    pub boson_symmetry_residual: f64,
    /// max |fermion(swap x', x) + fermion(x', x)|
    pub fermion_antisymmetry_residual: f64,
    /// max |boson + fermion − 2·direct|
    pub sum_identity_residual: f64,
    /// max |quotient-route − cover-route| after aligning reference-path
    /// parities.
    pub quotient_cover_residual: f64,
}

/// Runs the two-particle demo: builds the quotient, splits its propagator
/// into homology sectors, weights with the trivial and the alternating
/// character, and checks the symmetry identities on the cover.
pub fn exchange_statistics_demo(
    base: &CWComplex,
    n_steps: usize,
    lambda: f64,
) -> Result<ExchangeReport, PropagatorError> {
    let space = TwoParticleSpace::build(base)?;

    // Cover route: plain two-particle propagator, then read off direct and
    // exchange amplitudes.
    let cover_rule = StepRule::uniform(&space.cover, lambda);
    let direct = plain_propagator(&space.cover, &cover_rule, n_steps);
    let nc = space.cover.n_vertices();
    let mut exchange = DMatrix::zeros(nc, nc);
    for x in 0..nc {
        for x_prime in 0..nc {
            exchange[(x_prime, x)] = direct[(space.swap[x_prime], x)];
        }
    }
    let boson = &direct + &exchange;
    let fermion = &direct - &exchange;

    // Quotient route: sector propagators weighted by the two characters of
    // the deck ℤ₂, pulled back to H₁ of the quotient through the parity of
    // each generator loop.
    let tree = space.quotient.spanning_tree()?;
    let cp = space.quotient.fundamental_presentation(0)?;
    let h = FirstHomology::of_presentation(&cp.presentation);
    let generator_parities: Vec<bool> = (0..tree.generator_edges().len())
        .map(|g| space.loop_parity(&tree.generator_loop(&space.quotient, g)))
        .collect();
    let parity_angles: Vec<f64> = generator_parities
        .iter()
        .map(|&odd| if odd { PI } else { 0.0 })
        .collect();
    let quotient_rule = StepRule::uniform(&space.quotient, lambda);
    let sp = sector_propagators(&space.quotient, &tree, &quotient_rule, n_steps)?;
    let boson_chi = Character::identity(&h);
    let fermion_chi = Character::new(&h, parity_angles, vec![])?;
    let boson_quotient = weighted_propagator(&sp, &boson_chi, &h)?;
    let fermion_quotient = weighted_propagator(&sp, &fermion_chi, &h)?;

    // Residuals.
    let mut boson_symmetry_residual: f64 = 0.0;
    let mut fermion_antisymmetry_residual: f64 = 0.0;
    let mut sum_identity_residual: f64 = 0.0;
    for x in 0..nc {
        for x_prime in 0..nc {
            let bs = (boson[(space.swap[x_prime], x)] - boson[(x_prime, x)]).norm();
            let fa = (fermion[(space.swap[x_prime], x)] + fermion[(x_prime, x)]).norm();
            let si =
                (boson[(x_prime, x)] + fermion[(x_prime, x)] - 2.0 * direct[(x_prime, x)]).norm();
            boson_symmetry_residual = boson_symmetry_residual.max(bs);
            fermion_antisymmetry_residual = fermion_antisymmetry_residual.max(fa);
            sum_identity_residual = sum_identity_residual.max(si);
        }
    }

    // Quotient route equals cover route once the reference-path parities
    // c(v) are taken into account:
    //   K_fermion^Q(q', q) = (−1)^{c(q)+c(q')} · fermion(L(q'), L(q)).
    let nq = space.quotient.n_vertices();
    let ref_parity: Vec<f64> = (0..nq)
        .map(|v| {
            let r = tree.path_to_root_on(&space.quotient, v);
            let start = space.lift_vertex[v];
            let mut at = start;
            for &(edge, dir) in &r.steps {
                at = space
                    .lift_step(at, edge, dir)
                    .expect("tree paths lift");
            }
            if at == space.lift_vertex[tree.root()] {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    let mut quotient_cover_residual: f64 = 0.0;
    for q in 0..nq {
        for q_prime in 0..nq {
            let sign = ref_parity[q] * ref_parity[q_prime];
            let via_cover =
                fermion[(space.lift_vertex[q_prime], space.lift_vertex[q])] * sign;
            let d_f = (fermion_quotient[(q_prime, q)] - via_cover).norm();
            let via_cover_b = boson[(space.lift_vertex[q_prime], space.lift_vertex[q])];
            let d_b = (boson_quotient[(q_prime, q)] - via_cover_b).norm();
            quotient_cover_residual = quotient_cover_residual.max(d_f).max(d_b);
        }
    }

    Ok(ExchangeReport {
        space,
        n_steps,
        direct,
        exchange,
        boson,
        fermion,
        boson_quotient,
        fermion_quotient,
        boson_symmetry_residual,
        fermion_antisymmetry_residual,
        sum_identity_residual,
        quotient_cover_residual,
    })
}
