//! Weil integrality, holonomy, and the classification of flat connections by
//! characters of the fundamental group.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;

use crate::complex::{CWComplex, Loop};
use crate::homology::{normalize_angle, Character, FirstHomology};

use super::forms::{DiscreteOneForm, DiscreteTwoForm};
use super::BundleError;

/// One basis 2-cycle's contribution to the Weil check.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilCycleCheck {
    pub cycle: usize,
    /// (1/2πħ)·∫_S σ over this basis cycle.
    pub value: f64,
    pub nearest_integer: i64,
    pub deviation: f64,
}

/// Outcome of the integrality test over a basis of 2-cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilReport {
    pub cycles: Vec<WeilCycleCheck>,
    pub accepted: bool,
}

/// Checks the prequantization condition: σ must integrate to 2πħ·integer
/// over every 2-cycle. Only a basis of ker ∂₂ needs testing; the report
/// lists each basis cycle's value.
pub fn weil_check(
    c: &CWComplex,
    sigma: &DiscreteTwoForm,
    hbar: f64,
    tol: f64,
) -> Result<WeilReport, BundleError> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(BundleError::NonPositiveHbar(hbar));
    }
    if sigma.values().len() != c.n_faces() {
        return Err(BundleError::TwoFormSize {
            expected: c.n_faces(),
            got: sigma.values().len(),
        });
    }
    let mut cycles = Vec::new();
    for (index, coefficients) in c.two_cycle_basis().iter().enumerate() {
        let integral: f64 = coefficients
            .iter()
            .zip(sigma.values())
            .map(|(coeff, &s)| coeff.to_f64().unwrap() * s)
            .sum();
        let value = integral / (TAU * hbar);
        let nearest_integer = value.round() as i64;
        let deviation = (value - nearest_integer as f64).abs();
        cycles.push(WeilCycleCheck {
            cycle: index,
            value,
            nearest_integer,
            deviation,
        });
    }
    let accepted = cycles.iter().all(|c| c.deviation <= tol);
    Ok(WeilReport { cycles, accepted })
}

/// Holonomy of a connection 1-form around a loop: exp[(i/ħ)∮ α].
pub fn holonomy(conn: &DiscreteOneForm, l: &Loop, hbar: f64) -> Result<Complex64, BundleError> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(BundleError::NonPositiveHbar(hbar));
    }
    Ok(Complex64::from_polar(1.0, conn.integrate(l.path()) / hbar))
}

/// A flat connection classified by its holonomy character.
#[derive(Debug, Clone)]
pub struct ConnectionClassification {
    pub character: Character,
    pub homology: FirstHomology,
    /// Holonomy angle (flux/ħ, mod 2π) of each generator loop.
    pub generator_angles: Vec<f64>,
}

/// Classifies a flat connection: evaluates its holonomy on each generator
/// loop (the non-tree edge closed up through the spanning tree), projects
/// onto the free homology coordinates, and attaches the supplied torsion
/// label. The resulting character reproduces the holonomy of arbitrary
/// loops through [`Character::evaluate`].
///
/// A global 1-form can only produce identity-component characters; the
/// torsion label selects which bundle the connection is placed on.
pub fn classify_connection(
    c: &CWComplex,
    conn: &DiscreteOneForm,
    torsion_label: &[BigInt],
    hbar: f64,
    tol: f64,
) -> Result<ConnectionClassification, BundleError> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(BundleError::NonPositiveHbar(hbar));
    }
    // Flatness: every face's boundary circulation must vanish (in action
    // units relative to ħ). This is exact vanishing, not mod 2πħ: the flat
    // part α is a closed form.
    let curvature = conn.exterior_derivative(c);
    let mut worst: Option<(usize, f64)> = None;
    for (face, &value) in curvature.values().iter().enumerate() {
        let scaled = (value / hbar).abs();
        if worst.is_none_or(|(_, w)| scaled > w) {
            worst = Some((face, scaled));
        }
    }
    if let Some((face, scaled)) = worst {
        if scaled > tol {
            return Err(BundleError::NotFlat {
                face,
                curvature: scaled,
                tol,
            });
        }
    }

    let cp = c.fundamental_presentation(0)?;
    let homology = FirstHomology::of_presentation(&cp.presentation);
    // Unnormalized angles feed the linear projection onto the free block;
    // normalization applies only to the final character angles.
    let raw_angles: Vec<f64> = (0..cp.tree.generator_edges().len())
        .map(|g| {
            let l = cp.tree.generator_loop(c, g);
            conn.integrate(l.path()) / hbar
        })
        .collect();
    let free_angles = homology.free_functional(&raw_angles)?;
    let character = Character::new(&homology, free_angles, torsion_label.to_vec())?;
    Ok(ConnectionClassification {
        character,
        homology,
        generator_angles: raw_angles.iter().map(|&a| normalize_angle(a)).collect(),
    })
}

/// A prequantization: a connection cochain together with its classification
/// image and the ħ it was classified at.
#[derive(Debug, Clone)]
pub struct Prequantization {
    pub connection: DiscreteOneForm,
    pub character: Character,
    pub hbar: f64,
}

impl Prequantization {
    /// Classifies `conn` on `c` and packages the result.
    pub fn classify(
        c: &CWComplex,
        conn: DiscreteOneForm,
        torsion_label: &[BigInt],
        hbar: f64,
        tol: f64,
    ) -> Result<Self, BundleError> {
        let class = classify_connection(c, &conn, torsion_label, hbar, tol)?;
        Ok(Prequantization {
            connection: conn,
            character: class.character,
            hbar,
        })
    }
}

/// Answer to "same bundle? same connection?" for two prequantizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Topologically equivalent bundles: equal torsion labels.
    pub same_bundle: bool,
    /// Same bundle and flux angles congruent mod 2π (i.e. fluxes differing
    /// by an integer multiple of 2πħ).
    pub same_connection: bool,
}

/// Compares two prequantizations over the same homology.
pub fn prequantizations_equivalent(
    p1: &Prequantization,
    p2: &Prequantization,
    tol: f64,
) -> Result<EquivalenceReport, BundleError> {
    let c1 = &p1.character;
    let c2 = &p2.character;
    if c1.free_angles().len() != c2.free_angles().len() {
        return Err(BundleError::Homology(
            crate::homology::HomologyError::DimensionMismatch {
                expected: c1.free_angles().len(),
                got: c2.free_angles().len(),
            },
        ));
    }
    if c1.torsion_labels().len() != c2.torsion_labels().len() {
        return Err(BundleError::Homology(
            crate::homology::HomologyError::DimensionMismatch {
                expected: c1.torsion_labels().len(),
                got: c2.torsion_labels().len(),
            },
        ));
    }
    let same_bundle = c1.torsion_labels() == c2.torsion_labels();
    let same_connection = same_bundle && c1.equivalent(c2, tol);
    Ok(EquivalenceReport {
        same_bundle,
        same_connection,
    })
}
