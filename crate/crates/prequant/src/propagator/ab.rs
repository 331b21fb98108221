//! Aharonov-Bohm interference scan: detector intensity as a function of the
//! enclosed flux, on an annulus-type complex.

use num_complex::Complex64;

use crate::complex::CWComplex;
use crate::homology::{normalize_angle, Character, FirstHomology};

use super::rule::StepRule;
use super::sectors::{sector_propagators, weighted_propagator};
use super::PropagatorError;

/// One row of the scan table.
#[derive(Debug, Clone, PartialEq)]
pub struct AbScanRow {
    /// Flux in action units.
    pub flux: f64,
    /// |K_Φ(detector, source)|².
    pub intensity: f64,
    pub re_amplitude: f64,
    pub im_amplitude: f64,
}

/// The scan table plus the run parameters it was produced with.
#[derive(Debug, Clone, PartialEq)]
pub struct AbScan {
    pub rows: Vec<AbScanRow>,
    pub n_steps: usize,
    pub source: usize,
    pub detector: usize,
    pub hbar: f64,
}

/// Runs the flux scan: for each flux Φ the winding sectors are weighted by
/// the character with angle Φ/ħ and the detector amplitude is tabulated.
/// The intensity is exactly 2πħ-periodic in Φ because the winding numbers
/// are integers.
///
/// Requires b₁ = 1 (annulus topology); any torsion labels are fixed at
/// zero since the scan moves through the identity component only.
pub fn ab_interference_scan(
    c: &CWComplex,
    rule: &StepRule,
    n_steps: usize,
    source: usize,
    detector: usize,
    flux_grid: &[f64],
    hbar: f64,
) -> Result<AbScan, PropagatorError> {
    for v in [source, detector] {
        if v >= c.n_vertices() {
            return Err(PropagatorError::BadVertex {
                vertex: v,
                n_vertices: c.n_vertices(),
            });
        }
    }
    let cp = c.fundamental_presentation(0)?;
    let h = FirstHomology::of_presentation(&cp.presentation);
    if h.betti() != 1 {
        return Err(PropagatorError::WrongTopology {
            betti: h.betti(),
            torsion: h.torsion().len(),
        });
    }
    let sp = sector_propagators(c, &cp.tree, rule, n_steps)?;
    let zero_labels = vec![num_bigint::BigInt::from(0); h.torsion().len()];
    let mut rows = Vec::with_capacity(flux_grid.len());
    for &flux in flux_grid {
        let chi = Character::new(&h, vec![normalize_angle(flux / hbar)], zero_labels.clone())?;
        let k = weighted_propagator(&sp, &chi, &h)?;
        let amplitude: Complex64 = k[(detector, source)];
        rows.push(AbScanRow {
            flux,
            intensity: amplitude.norm_sqr(),
            re_amplitude: amplitude.re,
            im_amplitude: amplitude.im,
        });
    }
    Ok(AbScan {
        rows,
        n_steps,
        source,
        detector,
        hbar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::TAU;

    #[test]
    fn too_few_steps_to_wind_gives_flat_scan() {
        // Two steps on C₆ cannot complete a circuit, so only sector 0 is
        // populated and the intensity cannot depend on the flux.
        let ring = fixtures::ring(6);
        let rule = StepRule::default_for(&ring);
        let grid: Vec<f64> = (0..9).map(|i| i as f64 * 0.7).collect();
        let scan = ab_interference_scan(&ring, &rule, 2, 0, 2, &grid, 1.0).unwrap();
        let first = scan.rows[0].intensity;
        for row in &scan.rows {
            assert!((row.intensity - first).abs() < 1e-12);
        }
    }

    #[test]
    fn intensity_is_periodic_in_flux() {
        let ring = fixtures::ring(6);
        let rule = StepRule::default_for(&ring);
        let hbar = 0.85;
        let grid: Vec<f64> = vec![0.3, 0.3 + TAU * hbar, 1.9, 1.9 + TAU * hbar];
        let scan = ab_interference_scan(&ring, &rule, 6, 0, 3, &grid, hbar).unwrap();
        assert!((scan.rows[0].intensity - scan.rows[1].intensity).abs() < 1e-12);
        assert!((scan.rows[2].intensity - scan.rows[3].intensity).abs() < 1e-12);
    }

    #[test]
    fn interference_is_visible_at_six_steps() {
        // Frozen from the exact sector enumeration: at 6 steps on C₆ the
        // ±1 winding sectors are populated, so flux 0 and flux πħ differ.
        let ring = fixtures::ring(6);
        let rule = StepRule::default_for(&ring);
        let hbar = 1.0;
        let grid = vec![0.0, std::f64::consts::PI * hbar];
        let scan = ab_interference_scan(&ring, &rule, 6, 0, 3, &grid, hbar).unwrap();
        assert!(
            (scan.rows[0].intensity - scan.rows[1].intensity).abs() > 1e-8,
            "no interference: {} vs {}",
            scan.rows[0].intensity,
            scan.rows[1].intensity
        );
    }

    #[test]
    fn wrong_topology_is_rejected() {
        let wedge = fixtures::wedge_two_circles();
        let rule = StepRule::default_for(&wedge);
        let err = ab_interference_scan(&wedge, &rule, 3, 0, 0, &[0.0], 1.0);
        assert!(matches!(err, Err(PropagatorError::WrongTopology { betti: 2, .. })));

        let disc = fixtures::disc(4);
        let rule = StepRule::default_for(&disc);
        let err = ab_interference_scan(&disc, &rule, 3, 0, 1, &[0.0], 1.0);
        assert!(matches!(err, Err(PropagatorError::WrongTopology { betti: 0, .. })));
    }
}
