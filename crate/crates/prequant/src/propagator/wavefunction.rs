//! Chart-local wave functions and the lift invariance of the Feynman factor.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundle::{glued_walk, BundleError, ChartAtlas};
use crate::complex::{CWComplex, EdgePath};

use super::PropagatorError;

/// A wave function in a local trivialization: complex amplitudes on a vertex
/// subset, tagged by the chart the representative lives in. On overlaps the
/// representatives of the same section are related by the transition
/// rotation: ψⱼ(v) = e^{iφⱼₖ(v)}·ψₖ(v).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub chart: usize,
    pub amplitudes: BTreeMap<usize, Complex64>,
}

impl WaveFunction {
    pub fn new(chart: usize, amplitudes: BTreeMap<usize, Complex64>) -> Self {
        WaveFunction { chart, amplitudes }
    }
}

/// Re-expresses a wave function in another chart: ψₖ(v) = e^{−iφⱼₖ(v)}·ψⱼ(v).
///
/// Every support vertex must lie in the overlap with a tabulated transition
/// angle. Regauging j→k→j is the identity and j→k→l composes along the
/// cocycle.
pub fn regauge_wavefunction(
    psi: &WaveFunction,
    to_chart: usize,
    atlas: &ChartAtlas,
) -> Result<WaveFunction, PropagatorError> {
    if to_chart >= atlas.n_charts() {
        return Err(PropagatorError::Bundle(BundleError::BadChart {
            chart: to_chart,
            n_charts: atlas.n_charts(),
        }));
    }
    if psi.chart >= atlas.n_charts() {
        return Err(PropagatorError::Bundle(BundleError::BadChart {
            chart: psi.chart,
            n_charts: atlas.n_charts(),
        }));
    }
    let mut out = BTreeMap::new();
    for (&v, &amp) in &psi.amplitudes {
        if !(atlas.chart(psi.chart).contains_vertex(v)
            && atlas.chart(to_chart).contains_vertex(v))
        {
            return Err(PropagatorError::OutsideOverlap { vertex: v });
        }
        let phi = atlas
            .phi(psi.chart, to_chart, v)
            .ok_or(PropagatorError::Bundle(BundleError::MissingTransition {
                from: psi.chart,
                to: to_chart,
                vertex: v,
            }))?;
        out.insert(v, amp * Complex64::from_polar(1.0, -phi));
    }
    Ok(WaveFunction {
        chart: to_chart,
        amplitudes: out,
    })
}

/// Verifies that the Feynman factor read off a lift is the same for every
/// lift above the path.
///
/// Draws `n_random_lifts` arbitrary (non-horizontal) lifts — a random fiber
/// angle at each visited position — and evaluates
/// `exp[i(Σ (θ/ħ + Δζ))]·exp[i(ζ₀ − ζ_end)]`, the discrete integral of the
/// prequantum form along the lift times the endpoint fiber correction. All
/// values must coincide with the horizontal-lift factor; the maximum
/// pairwise deviation is returned.
pub fn lift_invariance_check(
    c: &CWComplex,
    atlas: &ChartAtlas,
    path: &EdgePath,
    hbar: f64,
    n_random_lifts: usize,
    seed: u64,
) -> Result<f64, PropagatorError> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(PropagatorError::Bundle(BundleError::NonPositiveHbar(hbar)));
    }
    let walk = glued_walk(c, atlas, path, None).map_err(PropagatorError::Bundle)?;
    let reference = walk.factor(hbar);

    let n = path.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![reference];
    for _ in 0..n_random_lifts {
        let zeta: Vec<f64> = (0..=n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        // ∫ω along the lift, in units of ħ: per step the base contribution
        // θ/ħ plus the fiber increment, with the increment measured in the
        // chart of the step (transition angles convert the stored ζ).
        let mut omega_over_hbar = 0.0;
        for m in 0..n {
            let arriving = if m + 1 < n { walk.switch_phi[m + 1] } else { 0.0 };
            let zeta_next_in_chart = zeta[m + 1] - arriving;
            omega_over_hbar +=
                walk.step_theta[m] / hbar + (zeta_next_in_chart - zeta[m]);
        }
        let value = Complex64::from_polar(1.0, omega_over_hbar)
            * Complex64::from_polar(1.0, zeta[0] - zeta[n]);
        values.push(value);
    }

    let mut max_deviation: f64 = 0.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            max_deviation = max_deviation.max((values[i] - values[j]).norm());
        }
    }
    Ok(max_deviation)
}
