//! Horizontal lifts and Feynman factors, within one chart and glued across
//! charts.
//!
//! Conventions, fixed once here and used everywhere:
//!
//! - Horizontal transport across a signed step with potential value θ moves
//!   the fiber angle by −θ/ħ.
//! - Switching the local trivialization from chart j to chart k at vertex v
//!   shifts the fiber angle by +φⱼₖ(v). Together with the compatibility
//!   relation θⱼ − θₖ = ħ·dφⱼₖ this makes the glued factor independent of
//!   interior chart choices.
//! - The Feynman factor is exp[i(z_start − z_end)] for the horizontal lift,
//!   which within one chart equals exp[(i/ħ)∫θ].
//!
//! Changing the start chart j→k multiplies the factor by exp[+iφⱼₖ(start)];
//! changing the end chart j→k multiplies it by exp[−iφⱼₖ(end)]. Changing
//! both endpoints at once therefore multiplies by
//! exp[i(φⱼₖ(start) − φⱼₖ(end))] — the endpoint transition ratio.

use num_complex::Complex64;

use crate::complex::{CWComplex, EdgePath};

use super::atlas::ChartAtlas;
use super::BundleError;

/// A lift of a base path to the prequantum circle bundle: one fiber angle
/// per visited vertex (radians), in the trivialization of the chart the path
/// is lifted in.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedPath {
    pub base: EdgePath,
    pub fiber_angles: Vec<f64>,
}

impl LiftedPath {
    /// exp[i(z_first − z_last)]: the Feynman factor read off the lift.
    pub fn factor(&self) -> Complex64 {
        let first = self.fiber_angles.first().copied().unwrap_or(0.0);
        let last = self.fiber_angles.last().copied().unwrap_or(0.0);
        Complex64::from_polar(1.0, first - last)
    }
}

/// Horizontally lifts a path lying inside a single chart, starting from the
/// given fiber angle.
pub fn horizontal_lift(
    c: &CWComplex,
    atlas: &ChartAtlas,
    chart: usize,
    path: &EdgePath,
    hbar: f64,
    initial_angle: f64,
) -> Result<LiftedPath, BundleError> {
    check_hbar(hbar)?;
    check_chart(atlas, chart)?;
    path.check(c)?;
    let ch = atlas.chart(chart);
    let mut angles = Vec::with_capacity(path.len() + 1);
    let mut z = initial_angle;
    angles.push(z);
    for (step, &(edge, dir)) in path.steps.iter().enumerate() {
        if !ch.covers_edge(c, edge) {
            return Err(BundleError::ChartEscape { chart, step });
        }
        let theta = ch.theta(edge).expect("covers_edge checked the potential");
        z -= dir as f64 * theta / hbar;
        angles.push(z);
    }
    Ok(LiftedPath {
        base: path.clone(),
        fiber_angles: angles,
    })
}

/// Feynman factor of a path inside one chart: exp[(i/ħ)·Σ signed θ].
///
/// Equals [`LiftedPath::factor`] of the horizontal lift; the two code paths
/// accumulate independently and are cross-checked in the tests.
pub fn feynman_factor_chart(
    c: &CWComplex,
    atlas: &ChartAtlas,
    chart: usize,
    path: &EdgePath,
    hbar: f64,
) -> Result<Complex64, BundleError> {
    check_hbar(hbar)?;
    check_chart(atlas, chart)?;
    path.check(c)?;
    let ch = atlas.chart(chart);
    let mut action = 0.0;
    for (step, &(edge, dir)) in path.steps.iter().enumerate() {
        if !ch.covers_edge(c, edge) {
            return Err(BundleError::ChartEscape { chart, step });
        }
        action += dir as f64 * ch.theta(edge).unwrap();
    }
    Ok(Complex64::from_polar(1.0, action / hbar))
}

/// A glued Feynman factor together with the charts used at the endpoints.
/// The value depends on those endpoint charts (by exactly the transition
/// ratio) but not on any interior chart choice.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedFactor {
    pub value: Complex64,
    pub start_chart: usize,
    pub end_chart: usize,
    /// The chart each step was lifted in.
    pub schedule: Vec<usize>,
}

/// The per-step data of a glued horizontal walk, shared by the factor
/// computation and the lift-invariance checker.
#[derive(Debug, Clone)]
pub(crate) struct GluedWalk {
    pub schedule: Vec<usize>,
    /// Signed potential value (action units) of each step in its chart.
    pub step_theta: Vec<f64>,
    /// Transition angle applied at position m (before step m) when the
    /// schedule switches charts there; 0 otherwise. Entry 0 is always 0.
    pub switch_phi: Vec<f64>,
    pub start_chart: usize,
    pub end_chart: usize,
}

impl GluedWalk {
    /// Fiber drift of the horizontal lift: z accumulates −θ/ħ per step and
    /// +φ at each chart switch; the factor is exp[−i·drift].
    pub fn factor(&self, hbar: f64) -> Complex64 {
        let mut z = 0.0;
        for m in 0..self.step_theta.len() {
            z += self.switch_phi[m];
            z -= self.step_theta[m] / hbar;
        }
        Complex64::from_polar(1.0, -z)
    }
}

pub(crate) fn glued_walk(
    c: &CWComplex,
    atlas: &ChartAtlas,
    path: &EdgePath,
    schedule: Option<&[usize]>,
) -> Result<GluedWalk, BundleError> {
    let vertices = path.vertices(c)?;
    let n = path.len();

    let schedule: Vec<usize> = match schedule {
        Some(s) => {
            if s.len() != n {
                return Err(BundleError::ScheduleLength {
                    expected: n,
                    got: s.len(),
                });
            }
            for (step, &chart) in s.iter().enumerate() {
                check_chart(atlas, chart)?;
                if !atlas.chart(chart).covers_edge(c, path.steps[step].0) {
                    return Err(BundleError::ScheduleEscape { chart, step });
                }
            }
            s.to_vec()
        }
        None => {
            // Greedy: stay in the current chart while it covers the next
            // step, otherwise switch to the lowest-index covering chart.
            let mut out = Vec::with_capacity(n);
            let mut current: Option<usize> = None;
            for (step, &(edge, _)) in path.steps.iter().enumerate() {
                let keep = current
                    .filter(|&j| atlas.chart(j).covers_edge(c, edge));
                let chart = match keep {
                    Some(j) => j,
                    None => *atlas
                        .charts_covering_step(c, edge)
                        .first()
                        .ok_or(BundleError::CoverageGap { step })?,
                };
                out.push(chart);
                current = Some(chart);
            }
            out
        }
    };

    // Empty path: factor 1 in the chart of the start vertex.
    if n == 0 {
        let chart = atlas
            .chart_containing_vertex(path.start)
            .ok_or(BundleError::CoverageGap { step: 0 })?;
        return Ok(GluedWalk {
            schedule: Vec::new(),
            step_theta: Vec::new(),
            switch_phi: Vec::new(),
            start_chart: chart,
            end_chart: chart,
        });
    }

    let mut step_theta = Vec::with_capacity(n);
    let mut switch_phi = vec![0.0; n];
    for (m, &(edge, dir)) in path.steps.iter().enumerate() {
        let chart = schedule[m];
        if m > 0 && schedule[m - 1] != chart {
            let v = vertices[m];
            switch_phi[m] = atlas.phi(schedule[m - 1], chart, v).ok_or(
                BundleError::MissingTransition {
                    from: schedule[m - 1],
                    to: chart,
                    vertex: v,
                },
            )?;
        }
        let theta = atlas
            .chart(chart)
            .theta(edge)
            .ok_or(BundleError::ScheduleEscape { chart, step: m })?;
        step_theta.push(dir as f64 * theta);
    }

    Ok(GluedWalk {
        start_chart: schedule[0],
        end_chart: *schedule.last().unwrap(),
        schedule,
        step_theta,
        switch_phi,
    })
}

/// Feynman factor for a path that may cross charts, glued by applying the
/// transition rotation at every chart switch.
///
/// With `chart_schedule = None` the deterministic greedy schedule is used.
/// Any two schedules agreeing on the first and last chart give the same
/// value; changing an endpoint chart multiplies the value by the endpoint
/// transition ratio (see the module docs for the exact orientation).
pub fn feynman_factor_glued(
    c: &CWComplex,
    atlas: &ChartAtlas,
    path: &EdgePath,
    hbar: f64,
    chart_schedule: Option<&[usize]>,
) -> Result<GluedFactor, BundleError> {
    check_hbar(hbar)?;
    let walk = glued_walk(c, atlas, path, chart_schedule)?;
    Ok(GluedFactor {
        value: walk.factor(hbar),
        start_chart: walk.start_chart,
        end_chart: walk.end_chart,
        schedule: walk.schedule,
    })
}

fn check_hbar(hbar: f64) -> Result<(), BundleError> {
    if hbar > 0.0 && hbar.is_finite() {
        Ok(())
    } else {
        Err(BundleError::NonPositiveHbar(hbar))
    }
}

fn check_chart(atlas: &ChartAtlas, chart: usize) -> Result<(), BundleError> {
    if chart < atlas.n_charts() {
        Ok(())
    } else {
        Err(BundleError::BadChart {
            chart,
            n_charts: atlas.n_charts(),
        })
    }
}
