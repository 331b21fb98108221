//! Edge and face cochains in action units.

use crate::complex::{CWComplex, EdgePath};

use super::BundleError;

/// A discrete 1-form: one real value (action units) per edge of the ambient
/// complex. Models the Cartan form θ or a closed flux form α.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOneForm {
    values: Vec<f64>,
}

impl DiscreteOneForm {
    pub fn zeros(c: &CWComplex) -> Self {
        DiscreteOneForm {
            values: vec![0.0; c.n_edges()],
        }
    }

    pub fn from_values(c: &CWComplex, values: Vec<f64>) -> Result<Self, BundleError> {
        if values.len() != c.n_edges() {
            return Err(BundleError::OneFormSize {
                expected: c.n_edges(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(BundleError::NonFiniteValue);
        }
        Ok(DiscreteOneForm { values })
    }

    pub fn value(&self, edge: usize) -> f64 {
        self.values[edge]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn set(&mut self, edge: usize, value: f64) {
        self.values[edge] = value;
    }

    /// Signed sum of the form along a path: the discrete line integral.
    pub fn integrate(&self, path: &EdgePath) -> f64 {
        path.steps
            .iter()
            .map(|&(edge, dir)| dir as f64 * self.values[edge])
            .sum()
    }

    /// The exterior derivative: a face cochain whose value on each face is
    /// the signed boundary sum. Exact Stokes by construction.
    pub fn exterior_derivative(&self, c: &CWComplex) -> DiscreteTwoForm {
        let values = c
            .faces()
            .iter()
            .map(|boundary| {
                boundary
                    .iter()
                    .map(|&(edge, dir)| dir as f64 * self.values[edge])
                    .sum()
            })
            .collect();
        DiscreteTwoForm { values }
    }
}

/// A discrete 2-form: one real value (action units) per face. Models the
/// presymplectic form σ; any coupling constant is absorbed into the stored
/// values.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTwoForm {
    values: Vec<f64>,
}

impl DiscreteTwoForm {
    pub fn zeros(c: &CWComplex) -> Self {
        DiscreteTwoForm {
            values: vec![0.0; c.n_faces()],
        }
    }

    pub fn from_values(c: &CWComplex, values: Vec<f64>) -> Result<Self, BundleError> {
        if values.len() != c.n_faces() {
            return Err(BundleError::TwoFormSize {
                expected: c.n_faces(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(BundleError::NonFiniteValue);
        }
        Ok(DiscreteTwoForm { values })
    }

    pub fn value(&self, face: usize) -> f64 {
        self.values[face]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
