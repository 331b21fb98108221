//! Single-step amplitudes for the lattice walk.

use num_complex::Complex64;

use crate::complex::CWComplex;

use super::PropagatorError;

/// Amplitudes for one time step: traverse an edge (either direction, same
/// amplitude) or stay put. A discrete stand-in for the path measure, which
/// the continuum theory leaves undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRule {
    edge_amplitudes: Vec<Complex64>,
    stay_amplitudes: Vec<Complex64>,
}

impl StepRule {
    pub fn new(
        c: &CWComplex,
        edge_amplitudes: Vec<Complex64>,
        stay_amplitudes: Vec<Complex64>,
    ) -> Result<Self, PropagatorError> {
        if edge_amplitudes.len() != c.n_edges() {
            return Err(PropagatorError::EdgeAmplitudeCount {
                expected: c.n_edges(),
                got: edge_amplitudes.len(),
            });
        }
        if stay_amplitudes.len() != c.n_vertices() {
            return Err(PropagatorError::StayAmplitudeCount {
                expected: c.n_vertices(),
                got: stay_amplitudes.len(),
            });
        }
        if edge_amplitudes
            .iter()
            .chain(&stay_amplitudes)
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(PropagatorError::NonFiniteAmplitude);
        }
        Ok(StepRule {
            edge_amplitudes,
            stay_amplitudes,
        })
    }

    /// Free-evolution stencil: every edge gets amplitude iλ and every vertex
    /// stays with 1 − deg(v)·iλ. A self-loop contributes 2 to the degree,
    /// matching its two traversal directions.
    pub fn uniform(c: &CWComplex, lambda: f64) -> Self {
        let mut degree = vec![0usize; c.n_vertices()];
        for &(tail, head) in c.edges() {
            degree[tail] += 1;
            degree[head] += 1;
        }
        let hop = Complex64::new(0.0, lambda);
        StepRule {
            edge_amplitudes: vec![hop; c.n_edges()],
            stay_amplitudes: degree
                .iter()
                .map(|&d| Complex64::new(1.0, 0.0) - hop * d as f64)
                .collect(),
        }
    }

    /// The default stencil with λ = 0.1.
    pub fn default_for(c: &CWComplex) -> Self {
        StepRule::uniform(c, 0.1)
    }

    pub fn edge_amplitude(&self, edge: usize) -> Complex64 {
        self.edge_amplitudes[edge]
    }

    pub fn stay_amplitude(&self, vertex: usize) -> Complex64 {
        self.stay_amplitudes[vertex]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn uniform_rule_counts_degrees() {
        let wedge = fixtures::wedge_two_circles();
        let rule = StepRule::uniform(&wedge, 0.1);
        // Two self-loops: degree 4.
        assert!((rule.stay_amplitude(0) - Complex64::new(1.0, -0.4)).norm() < 1e-15);
    }

    #[test]
    fn size_checks() {
        let ring = fixtures::ring(3);
        assert!(StepRule::new(&ring, vec![Complex64::ZERO; 2], vec![Complex64::ZERO; 3]).is_err());
        assert!(StepRule::new(&ring, vec![Complex64::ZERO; 3], vec![Complex64::ZERO; 2]).is_err());
        assert!(StepRule::new(&ring, vec![Complex64::ZERO; 3], vec![Complex64::ZERO; 3]).is_ok());
    }
}
