//! CW complexes of dimension ≤ 2 and the constructions that connect them to
//! group presentations: spanning trees, edge-path-group presentations,
//! homology classes of loops, and 2-cycle bases.

use num_bigint::BigInt;

use crate::homology::{smith_normal_form, FinitePresentation, GroupWord, IntegerMatrix};

use super::path::{EdgePath, Loop};
use super::ComplexError;

/// A connected 2-dimensional CW complex: oriented edges over a vertex set,
/// and faces attached along closed edge words.
///
/// Everything the bundle classification needs — π₁, H₁, H₂ pairings — lives
/// in dimensions ≤ 2, so no higher cells are modeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWComplex {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<(usize, i8)>>,
}

impl CWComplex {
    pub fn new(
        n_vertices: usize,
        edges: Vec<(usize, usize)>,
        faces: Vec<Vec<(usize, i8)>>,
    ) -> Self {
        CWComplex {
            n_vertices,
            edges,
            faces,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<(usize, i8)>] {
        &self.faces
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// (tail, head) of a signed step, validating the edge index and
    /// direction.
    pub fn step_endpoints(&self, edge: usize, dir: i8) -> Result<(usize, usize), ComplexError> {
        let &(tail, head) = self
            .edges
            .get(edge)
            .ok_or(ComplexError::BadEdgeIndex {
                edge,
                n_edges: self.edges.len(),
            })?;
        match dir {
            1 => Ok((tail, head)),
            -1 => Ok((head, tail)),
            d => Err(ComplexError::BadDirection(d)),
        }
    }

    /// Confirms every type invariant, naming the first violated one:
    /// vertices exist, edge endpoints are valid, face boundaries are closed
    /// edge paths, and the complex is connected.
    pub fn validate(&self) -> Result<(), ComplexError> {
        if self.n_vertices == 0 {
            return Err(ComplexError::Empty);
        }
        for (e, &(tail, head)) in self.edges.iter().enumerate() {
            for v in [tail, head] {
                if v >= self.n_vertices {
                    return Err(ComplexError::BadEndpoint {
                        edge: e,
                        vertex: v,
                        n_vertices: self.n_vertices,
                    });
                }
            }
        }
        for (f, boundary) in self.faces.iter().enumerate() {
            if boundary.is_empty() {
                return Err(ComplexError::EmptyFaceBoundary { face: f });
            }
            let mut at = None;
            let mut first = None;
            for &(edge, dir) in boundary {
                let (tail, head) = self.step_endpoints(edge, dir)?;
                if let Some(current) = at {
                    if current != tail {
                        return Err(ComplexError::OpenFaceBoundary { face: f });
                    }
                } else {
                    first = Some(tail);
                }
                at = Some(head);
            }
            if at != first {
                return Err(ComplexError::OpenFaceBoundary { face: f });
            }
        }
        let reached = self.reachable_from(0);
        if reached < self.n_vertices {
            return Err(ComplexError::Disconnected {
                reached,
                total: self.n_vertices,
            });
        }
        Ok(())
    }

    fn reachable_from(&self, root: usize) -> usize {
        let mut visited = vec![false; self.n_vertices];
        if root >= self.n_vertices {
            return 0;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(tail, head) in &self.edges {
                let other = if tail == v {
                    head
                } else if head == v {
                    tail
                } else {
                    continue;
                };
                if other < self.n_vertices && !visited[other] {
                    visited[other] = true;
                    queue.push_back(other);
                }
            }
        }
        visited.iter().filter(|&&b| b).count()
    }

    /// Breadth-first spanning tree rooted at vertex 0.
    pub fn spanning_tree(&self) -> Result<SpanningTree, ComplexError> {
        SpanningTree::build(self, 0)
    }

    /// Edge-path-group presentation of π₁ with the given basepoint: one
    /// generator per non-tree edge, one relator per face (its boundary word
    /// with tree edges dropped).
    pub fn fundamental_presentation(
        &self,
        basepoint: usize,
    ) -> Result<ComplexPresentation, ComplexError> {
        let tree = SpanningTree::build(self, basepoint)?;
        let mut relators = Vec::with_capacity(self.faces.len());
        for boundary in &self.faces {
            let letters = boundary.iter().filter_map(|&(edge, dir)| {
                tree.generator_of_edge(edge)
                    .map(|g| (g, dir as i64))
            });
            relators.push(GroupWord::new(letters));
        }
        let presentation =
            FinitePresentation::new(tree.generator_edges().len(), relators)
                .expect("generators indexed by non-tree edges are always in range");
        Ok(ComplexPresentation { tree, presentation })
    }

    /// Integer basis of the kernel of the face-boundary map ∂₂. Each basis
    /// vector assigns a coefficient to every face; the corresponding chain
    /// has zero boundary, exactly.
    pub fn two_cycle_basis(&self) -> Vec<Vec<BigInt>> {
        if self.faces.is_empty() {
            return Vec::new();
        }
        let boundary = self.face_boundary_matrix();
        let snf = smith_normal_form(&boundary);
        let rank = snf.rank();
        let n_faces = self.faces.len();
        (rank..n_faces)
            .map(|j| {
                (0..n_faces)
                    .map(|i| snf.v().get(i, j).clone())
                    .collect()
            })
            .collect()
    }

    /// The matrix of ∂₂: rows are edges, columns faces; entry (e, f) is the
    /// signed number of times face f's boundary traverses edge e.
    pub fn face_boundary_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.edges.len(), self.faces.len());
        for (f, boundary) in self.faces.iter().enumerate() {
            for &(edge, dir) in boundary {
                let updated = m.get(edge, f) + BigInt::from(dir);
                m.set(edge, f, updated);
            }
        }
        m
    }
}

/// A spanning tree plus the generator bookkeeping derived from it: non-tree
/// edges in index order are the generators of π₁, and every vertex knows the
/// tree step leading back toward the root.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    root: usize,
    in_tree: Vec<bool>,
    generator_edges: Vec<usize>,
    edge_generator: Vec<Option<usize>>,
    /// Per vertex: the step (edge, dir) that moves one hop toward the root.
    toward_root: Vec<Option<(usize, i8)>>,
}

impl SpanningTree {
    /// Deterministic breadth-first construction: vertices are discovered in
    /// queue order, scanning edges in index order from each vertex.
    pub fn build(c: &CWComplex, root: usize) -> Result<Self, ComplexError> {
        if c.n_vertices() == 0 {
            return Err(ComplexError::Empty);
        }
        if root >= c.n_vertices() {
            return Err(ComplexError::BadVertex {
                vertex: root,
                n_vertices: c.n_vertices(),
            });
        }
        c.validate()?;
        let mut in_tree = vec![false; c.n_edges()];
        let mut toward_root: Vec<Option<(usize, i8)>> = vec![None; c.n_vertices()];
        let mut visited = vec![false; c.n_vertices()];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for (e, &(tail, head)) in c.edges().iter().enumerate() {
                let (other, dir_back) = if tail == v && !visited[head] {
                    (head, -1)
                } else if head == v && !visited[tail] {
                    (tail, 1)
                } else {
                    continue;
                };
                visited[other] = true;
                in_tree[e] = true;
                // traversing (e, dir_back) from `other` lands on v
                toward_root[other] = Some((e, dir_back));
                queue.push_back(other);
                reached += 1;
            }
        }
        if reached < c.n_vertices() {
            return Err(ComplexError::Disconnected {
                reached,
                total: c.n_vertices(),
            });
        }
        let generator_edges: Vec<usize> =
            (0..c.n_edges()).filter(|&e| !in_tree[e]).collect();
        let mut edge_generator = vec![None; c.n_edges()];
        for (g, &e) in generator_edges.iter().enumerate() {
            edge_generator[e] = Some(g);
        }
        Ok(SpanningTree {
            root,
            in_tree,
            generator_edges,
            edge_generator,
            toward_root,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// The non-tree edges, ascending; generator `g` of π₁ is the loop
    /// through `generator_edges()[g]`.
    pub fn generator_edges(&self) -> &[usize] {
        &self.generator_edges
    }

    pub fn generator_of_edge(&self, edge: usize) -> Option<usize> {
        self.edge_generator[edge]
    }

    /// Tree geodesic from `v` to the root.
    pub fn path_to_root_on(&self, c: &CWComplex, v: usize) -> EdgePath {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some((edge, dir)) = self.toward_root[at] {
            steps.push((edge, dir));
            let (_, head) = c
                .step_endpoints(edge, dir)
                .expect("tree steps are valid by construction");
            at = head;
        }
        EdgePath::new(v, steps)
    }

    /// The generator loop for non-tree edge `g`: root → tail, across the
    /// edge, head → root.
    pub fn generator_loop(&self, c: &CWComplex, g: usize) -> Loop {
        let edge = self.generator_edges[g];
        let (tail, head) = c.edge(edge);
        let to_tail = self
            .path_to_root_on(c, tail)
            .reverse(c)
            .expect("tree paths are valid");
        let across = EdgePath::new(tail, vec![(edge, 1)]);
        let back = self.path_to_root_on(c, head);
        let path = to_tail
            .compose(&across, c)
            .and_then(|p| p.compose(&back, c))
            .expect("generator loop chains by construction");
        Loop::new(c, path).expect("generator loop closes at the root")
    }

    /// Homology class of a loop: the signed traversal count of each
    /// generator (non-tree) edge. Tree edges contribute nothing.
    pub fn homology_class(&self, l: &Loop) -> Vec<i64> {
        let mut class = vec![0i64; self.generator_edges.len()];
        for &(edge, dir) in &l.path().steps {
            if let Some(g) = self.edge_generator[edge] {
                class[g] += dir as i64;
            }
        }
        class
    }
}

/// A π₁ presentation extracted from a complex, with the spanning tree that
/// defines its generators.
#[derive(Debug, Clone)]
pub struct ComplexPresentation {
    pub tree: SpanningTree,
    pub presentation: FinitePresentation,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Zero;

    #[test]
    fn validate_accepts_point() {
        let point = CWComplex::new(1, vec![], vec![]);
        assert!(point.validate().is_ok());
    }

    #[test]
    fn validate_names_bad_endpoint() {
        let c = CWComplex::new(2, vec![(0, 5)], vec![]);
        assert!(matches!(
            c.validate(),
            Err(ComplexError::BadEndpoint {
                edge: 0,
                vertex: 5,
                ..
            })
        ));
    }

    #[test]
    fn validate_names_open_face() {
        // Two edges 0→1, both traversed forward: head 1 never returns to 0.
        let c = CWComplex::new(2, vec![(0, 1), (0, 1)], vec![vec![(0, 1), (1, 1)]]);
        assert!(matches!(
            c.validate(),
            Err(ComplexError::OpenFaceBoundary { face: 0 })
        ));
    }

    #[test]
    fn validate_names_disconnection() {
        let c = CWComplex::new(3, vec![(0, 1)], vec![]);
        assert!(matches!(
            c.validate(),
            Err(ComplexError::Disconnected {
                reached: 2,
                total: 3
            })
        ));
    }

    #[test]
    fn spanning_tree_sizes() {
        // Triangle: |tree| = 2.
        let triangle = fixtures::ring(3);
        let tree = triangle.spanning_tree().unwrap();
        assert_eq!(tree.tree_edges().len(), 2);
        assert_eq!(tree.generator_edges().len(), 1);

        // Single vertex with a loop edge: empty tree.
        let circle = fixtures::circle();
        let tree = circle.spanning_tree().unwrap();
        assert!(tree.tree_edges().is_empty());
        assert_eq!(tree.generator_edges(), &[0]);

        // Path graph: every edge is in the tree.
        let path = fixtures::path_graph(5);
        let tree = path.spanning_tree().unwrap();
        assert_eq!(tree.tree_edges().len(), 4);
        assert!(tree.generator_edges().is_empty());
    }

    #[test]
    fn presentation_of_circle_is_free() {
        let circle = fixtures::circle();
        let cp = circle.fundamental_presentation(0).unwrap();
        assert_eq!(cp.presentation.n_generators(), 1);
        assert!(cp.presentation.relators().is_empty());
    }

    #[test]
    fn presentation_of_ring_matches_cycle_rank() {
        // Independent oracle for a graph: cycle rank = E − V + 1.
        for n in 3..=7 {
            let ring = fixtures::ring(n);
            let cp = ring.fundamental_presentation(0).unwrap();
            let expected = ring.n_edges() - ring.n_vertices() + 1;
            assert_eq!(cp.presentation.n_generators(), expected);
            assert!(cp.presentation.relators().is_empty());
        }
    }

    #[test]
    fn presentation_of_disc_is_trivial() {
        let disc = fixtures::disc(3);
        let cp = disc.fundamental_presentation(0).unwrap();
        assert_eq!(cp.presentation.n_generators(), 1);
        assert_eq!(cp.presentation.relators().len(), 1);
        // The single relator is the generator itself: ⟨a | a±¹⟩.
        let relator = &cp.presentation.relators()[0];
        assert_eq!(relator.letters().len(), 1);
        assert_eq!(relator.letters()[0].0, 0);
        assert_eq!(relator.letters()[0].1.abs(), 1);
    }

    #[test]
    fn homology_class_of_tree_loop_vanishes() {
        let ring = fixtures::ring(4);
        let tree = ring.spanning_tree().unwrap();
        // Walk out and back inside the tree.
        let out = tree.path_to_root_on(&ring, 2).reverse(&ring).unwrap();
        let back = tree.path_to_root_on(&ring, 2);
        let l = Loop::new(&ring, out.compose(&back, &ring).unwrap()).unwrap();
        assert_eq!(tree.homology_class(&l), vec![0]);
    }

    #[test]
    fn homology_class_of_generator_loop_is_unit() {
        let ring = fixtures::ring(5);
        let tree = ring.spanning_tree().unwrap();
        for g in 0..tree.generator_edges().len() {
            let l = tree.generator_loop(&ring, g);
            let mut expected = vec![0i64; tree.generator_edges().len()];
            expected[g] = 1;
            assert_eq!(tree.homology_class(&l), expected);
        }
    }

    #[test]
    fn commutator_loop_has_zero_class() {
        // Wedge of two circles at one vertex: a b a⁻¹ b⁻¹ traverses each
        // generator edge once in each direction, so every signed count is 0.
        let wedge = fixtures::wedge_two_circles();
        let tree = wedge.spanning_tree().unwrap();
        let commutator = EdgePath::new(0, vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        let l = Loop::new(&wedge, commutator).unwrap();
        assert_eq!(tree.homology_class(&l), vec![0, 0]);
    }

    #[test]
    fn homology_class_is_additive_and_antisymmetric() {
        let wedge = fixtures::wedge_two_circles();
        let tree = wedge.spanning_tree().unwrap();
        let p = EdgePath::new(0, vec![(0, 1), (1, -1), (0, 1)]);
        let q = EdgePath::new(0, vec![(1, 1), (1, 1), (0, -1)]);
        let lp = Loop::new(&wedge, p.clone()).unwrap();
        let lq = Loop::new(&wedge, q.clone()).unwrap();
        let composed = Loop::new(&wedge, p.compose(&q, &wedge).unwrap()).unwrap();
        let cp = tree.homology_class(&lp);
        let cq = tree.homology_class(&lq);
        let cc = tree.homology_class(&composed);
        for i in 0..cp.len() {
            assert_eq!(cc[i], cp[i] + cq[i]);
        }
        let reversed = lp.reverse(&wedge).unwrap();
        let cr = tree.homology_class(&reversed);
        for i in 0..cp.len() {
            assert_eq!(cr[i], -cp[i]);
        }
    }

    #[test]
    fn cube_has_one_two_cycle() {
        // Frozen from the rank oracle on the explicit ∂₂ matrix: the cube
        // surface has rank ∂₂ = 5, so ker ∂₂ is one-dimensional, spanned by
        // the coherently oriented sum of all six faces.
        let cube = fixtures::cube_surface();
        let basis = cube.two_cycle_basis();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(v.iter().all(|c| c.magnitude() == v[0].magnitude()));
        assert!(!v[0].is_zero());
        // The basis vector genuinely lies in ker ∂₂.
        let boundary = cube.face_boundary_matrix();
        for e in 0..cube.n_edges() {
            let mut acc = BigInt::zero();
            for f in 0..cube.n_faces() {
                acc += boundary.get(e, f) * &v[f];
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn disc_has_no_two_cycles() {
        assert!(fixtures::disc(4).two_cycle_basis().is_empty());
    }

    #[test]
    fn wedge_of_discs_has_no_two_cycles() {
        // Two filled triangles sharing a single vertex: both faces have
        // nontrivial boundary and there is no cancellation between them.
        let c = CWComplex::new(
            5,
            vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
            vec![
                vec![(0, 1), (1, 1), (2, 1)],
                vec![(3, 1), (4, 1), (5, 1)],
            ],
        );
        c.validate().unwrap();
        assert!(c.two_cycle_basis().is_empty());
    }
}
