//! Edge paths and loops on a CW complex.

use super::cw::CWComplex;
use super::ComplexError;

/// A walk along oriented edges: each step is `(edge index, ±1)`, where `+1`
/// traverses tail → head and `-1` head → tail. Consecutive steps must chain
/// head-to-tail; [`EdgePath::check`] verifies this against a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub start: usize,
    pub steps: Vec<(usize, i8)>,
}

impl EdgePath {
    pub fn new(start: usize, steps: Vec<(usize, i8)>) -> Self {
        EdgePath { start, steps }
    }

    /// The constant path at `v`.
    pub fn empty(v: usize) -> Self {
        EdgePath {
            start: v,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Validates indices and chaining and returns the end vertex.
    pub fn end(&self, c: &CWComplex) -> Result<usize, ComplexError> {
        Ok(*self.vertices(c)?.last().unwrap())
    }

    /// The visited vertex sequence, of length `steps + 1`.
    pub fn vertices(&self, c: &CWComplex) -> Result<Vec<usize>, ComplexError> {
        if self.start >= c.n_vertices() {
            return Err(ComplexError::BadVertex {
                vertex: self.start,
                n_vertices: c.n_vertices(),
            });
        }
        let mut at = self.start;
        let mut visited = Vec::with_capacity(self.steps.len() + 1);
        visited.push(at);
        for (i, &(edge, dir)) in self.steps.iter().enumerate() {
            let (tail, head) = c.step_endpoints(edge, dir)?;
            if tail != at {
                return Err(ComplexError::BrokenPath {
                    step: i,
                    expected: at,
                    found: tail,
                });
            }
            at = head;
            visited.push(at);
        }
        Ok(visited)
    }

    pub fn check(&self, c: &CWComplex) -> Result<(), ComplexError> {
        self.end(c).map(|_| ())
    }

    /// Concatenation; the second path must start where this one ends.
    pub fn compose(&self, other: &EdgePath, c: &CWComplex) -> Result<EdgePath, ComplexError> {
        let end = self.end(c)?;
        if end != other.start {
            return Err(ComplexError::CompositionMismatch {
                end,
                start: other.start,
            });
        }
        other.check(c)?;
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(EdgePath {
            start: self.start,
            steps,
        })
    }

    /// Orientation reversal: starts at the old end, traverses each edge the
    /// opposite way.
    pub fn reverse(&self, c: &CWComplex) -> Result<EdgePath, ComplexError> {
        let end = self.end(c)?;
        Ok(EdgePath {
            start: end,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(e, d)| (e, -d))
                .collect(),
        })
    }
}

/// A closed edge path. Construction verifies closedness, so every `Loop`
/// value is a genuine cycle on its complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    path: EdgePath,
}

impl Loop {
    pub fn new(c: &CWComplex, path: EdgePath) -> Result<Self, ComplexError> {
        let end = path.end(c)?;
        if end != path.start {
            return Err(ComplexError::NotALoop {
                start: path.start,
                end,
            });
        }
        Ok(Loop { path })
    }

    pub fn path(&self) -> &EdgePath {
        &self.path
    }

    pub fn basepoint(&self) -> usize {
        self.path.start
    }

    pub fn reverse(&self, c: &CWComplex) -> Result<Loop, ComplexError> {
        Loop::new(c, self.path.reverse(c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn path_chaining_and_end() {
        let ring = fixtures::ring(4);
        let p = EdgePath::new(0, vec![(0, 1), (1, 1)]);
        assert_eq!(p.end(&ring).unwrap(), 2);
        assert_eq!(p.vertices(&ring).unwrap(), vec![0, 1, 2]);

        let broken = EdgePath::new(0, vec![(0, 1), (0, 1)]);
        assert!(matches!(
            broken.end(&ring),
            Err(ComplexError::BrokenPath { step: 1, .. })
        ));
    }

    #[test]
    fn compose_and_reverse() {
        let ring = fixtures::ring(4);
        let p = EdgePath::new(0, vec![(0, 1), (1, 1)]);
        let q = EdgePath::new(2, vec![(2, 1)]);
        let pq = p.compose(&q, &ring).unwrap();
        assert_eq!(pq.end(&ring).unwrap(), 3);

        // compose with the empty path is the identity
        let idle = EdgePath::empty(3);
        assert_eq!(pq.compose(&idle, &ring).unwrap(), pq);

        // reverse twice returns the original
        let back = p.reverse(&ring).unwrap();
        assert_eq!(back.start, 2);
        assert_eq!(back.reverse(&ring).unwrap(), p);

        // p followed by its reverse closes into a loop
        let closed = p.compose(&back, &ring).unwrap();
        let looped = Loop::new(&ring, closed).unwrap();
        assert_eq!(looped.basepoint(), 0);

        let mismatch = q.compose(&p, &ring);
        assert!(matches!(
            mismatch,
            Err(ComplexError::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn loop_rejects_open_path() {
        let ring = fixtures::ring(4);
        let open = EdgePath::new(0, vec![(0, 1)]);
        assert!(matches!(
            Loop::new(&ring, open),
            Err(ComplexError::NotALoop { .. })
        ));
    }
}
