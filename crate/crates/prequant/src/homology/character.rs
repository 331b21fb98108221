//! Characters of the fundamental group — homomorphisms into U(1) — and the
//! component structure of the character group.
//!
//! A character splits into a continuous part (one flux angle per free
//! homology generator, stored as flux/ħ so it is dimensionless) and a
//! discrete part (one label per torsion invariant). Two characters define
//! topologically equivalent bundles exactly when their torsion labels agree;
//! within a component the flux angles parametrize the flat connections.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::first_homology::{FirstHomology, HomologyClass};
use super::word::GroupWord;
use super::HomologyError;

/// Normalizes an angle into `[0, 2π)`.
pub(crate) fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub(crate) fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// A homomorphism `π₁ → U(1)`: flux angles `aⱼ ∈ [0, 2π)` on the free part
/// and integer labels `kᵢ ∈ [0, dᵢ)` on the torsion part.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    free_angles: Vec<f64>,
    torsion_labels: Vec<BigInt>,
}

impl Character {
    /// Builds a character compatible with `h`, normalizing angles into
    /// `[0, 2π)` and labels into `[0, dᵢ)`.
    pub fn new(
        h: &FirstHomology,
        free_angles: Vec<f64>,
        torsion_labels: Vec<BigInt>,
    ) -> Result<Self, HomologyError> {
        if free_angles.len() != h.betti() {
            return Err(HomologyError::DimensionMismatch {
                expected: h.betti(),
                got: free_angles.len(),
            });
        }
        if torsion_labels.len() != h.torsion().len() {
            return Err(HomologyError::DimensionMismatch {
                expected: h.torsion().len(),
                got: torsion_labels.len(),
            });
        }
        if free_angles.iter().any(|a| !a.is_finite()) {
            return Err(HomologyError::NonFiniteValue);
        }
        let labels: Vec<BigInt> = torsion_labels
            .into_iter()
            .zip(h.torsion())
            .map(|(k, d)| k.mod_floor(d))
            .collect();
        Ok(Character {
            free_angles: free_angles.into_iter().map(normalize_angle).collect(),
            torsion_labels: labels,
        })
    }

    /// The trivial character χ ≡ 1.
    pub fn identity(h: &FirstHomology) -> Self {
        Character {
            free_angles: vec![0.0; h.betti()],
            torsion_labels: vec![BigInt::zero(); h.torsion().len()],
        }
    }

    pub fn free_angles(&self) -> &[f64] {
        &self.free_angles
    }

    pub fn torsion_labels(&self) -> &[BigInt] {
        &self.torsion_labels
    }

    /// The component of the character group this character lies in: its
    /// torsion-label tuple. Two characters give topologically equivalent
    /// bundles iff these agree.
    pub fn component(&self) -> &[BigInt] {
        &self.torsion_labels
    }

    /// Evaluates the character on a homology class:
    /// `exp[i Σⱼ aⱼ mⱼ] · exp[2πi Σᵢ kᵢ tᵢ / dᵢ]`.
    pub fn evaluate(
        &self,
        h: &FirstHomology,
        class: &HomologyClass,
    ) -> Result<Complex64, HomologyError> {
        if class.free.len() != self.free_angles.len() {
            return Err(HomologyError::DimensionMismatch {
                expected: self.free_angles.len(),
                got: class.free.len(),
            });
        }
        if class.torsion.len() != self.torsion_labels.len() {
            return Err(HomologyError::DimensionMismatch {
                expected: self.torsion_labels.len(),
                got: class.torsion.len(),
            });
        }
        let mut angle = 0.0;
        for (a, m) in self.free_angles.iter().zip(&class.free) {
            angle += a * m.to_f64().expect("homology coordinate out of f64 range");
        }
        for ((k, t), d) in self.torsion_labels.iter().zip(&class.torsion).zip(h.torsion()) {
            let residue = (k * t).mod_floor(d);
            angle += TAU * residue.to_f64().unwrap() / d.to_f64().unwrap();
        }
        Ok(Complex64::from_polar(1.0, angle))
    }

    pub fn evaluate_word(
        &self,
        h: &FirstHomology,
        word: &GroupWord,
    ) -> Result<Complex64, HomologyError> {
        self.evaluate(h, &h.class_of_word(word)?)
    }

    pub fn evaluate_exponents(
        &self,
        h: &FirstHomology,
        exponents: &[i64],
    ) -> Result<Complex64, HomologyError> {
        self.evaluate(h, &h.class_of_machine_exponents(exponents)?)
    }

    /// True when the two characters are equal as homomorphisms: identical
    /// torsion labels and flux angles congruent mod 2π within `tol`.
    ///
    /// Flux periodicity in the underlying connection is 2πħ; angles already
    /// store flux/ħ, so it becomes 2π here.
    pub fn equivalent(&self, other: &Character, tol: f64) -> bool {
        self.free_angles.len() == other.free_angles.len()
            && self.torsion_labels == other.torsion_labels
            && self
                .free_angles
                .iter()
                .zip(&other.free_angles)
                .all(|(a, b)| circle_distance(*a, *b) <= tol)
    }
}

/// Shape of the character group `H¹(E, U(1))`: a `(S¹)^b₁` identity
/// component replicated once per torsion class.
#[derive(Debug, Clone)]
pub struct CharacterGroupSummary {
    /// Number of connected components = number of topologically distinct
    /// bundle classes = Π dᵢ (always finite here).
    pub n_components: BigInt,
    /// Dimension of each component: the first Betti number.
    pub identity_component_dim: usize,
    /// One zero-flux character per component, in lexicographic label order;
    /// index 0 is the identity character.
    pub component_representatives: Vec<Character>,
}

/// Enumerates the component structure of the character group of `h`.
pub fn character_group(h: &FirstHomology) -> CharacterGroupSummary {
    let n_components = h
        .torsion()
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d);
    let component_representatives = torsion_label_tuples(h.torsion())
        .into_iter()
        .map(|labels| Character {
            free_angles: vec![0.0; h.betti()],
            torsion_labels: labels,
        })
        .collect();
    CharacterGroupSummary {
        n_components,
        identity_component_dim: h.betti(),
        component_representatives,
    }
}

/// All torsion-label tuples `(k₁, …, kₛ)` with `0 ≤ kᵢ < dᵢ`, lexicographic.
fn torsion_label_tuples(torsion: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut tuples = vec![Vec::new()];
    for d in torsion {
        let mut next = Vec::new();
        for prefix in &tuples {
            let mut k = BigInt::zero();
            while &k < d {
                let mut tuple = prefix.clone();
                tuple.push(k.clone());
                next.push(tuple);
                k += 1;
            }
        }
        tuples = next;
    }
    tuples
}

/// Tabulates characters over a grid of flux angles: the Cartesian product of
/// the per-generator grids with all torsion labels.
///
/// An empty grid for some free generator yields an empty list; that is the
/// documented behaviour, not an error.
pub fn enumerate_characters(
    h: &FirstHomology,
    free_angle_grid: &[Vec<f64>],
) -> Result<Vec<Character>, HomologyError> {
    if free_angle_grid.len() != h.betti() {
        return Err(HomologyError::GridSizeMismatch {
            expected: h.betti(),
            got: free_angle_grid.len(),
        });
    }
    if free_angle_grid
        .iter()
        .any(|axis| axis.iter().any(|a| !a.is_finite()))
    {
        return Err(HomologyError::NonFiniteValue);
    }
    let labels = torsion_label_tuples(h.torsion());
    let mut angle_tuples: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in free_angle_grid {
        let mut next = Vec::new();
        for prefix in &angle_tuples {
            for &a in axis {
                let mut tuple = prefix.clone();
                tuple.push(normalize_angle(a));
                next.push(tuple);
            }
        }
        angle_tuples = next;
    }
    let mut characters = Vec::with_capacity(angle_tuples.len() * labels.len());
    for angles in &angle_tuples {
        for label in &labels {
            characters.push(Character {
                free_angles: angles.clone(),
                torsion_labels: label.clone(),
            });
        }
    }
    Ok(characters)
}
