//! Chart atlases: local potentials on vertex subsets and U(1) transition
//! functions on their overlaps, with the consistency checker.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use crate::complex::CWComplex;
use crate::homology::circle_distance;

/// One chart: a vertex subset together with a local potential defined on the
/// edges inside it.
///
/// The continuum theory takes the subsets contractible; here only the
/// compatibility and cocycle conditions are checked, which is the testable
/// content. Choosing genuinely contractible charts is the modeling
/// responsibility of the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    vertices: BTreeSet<usize>,
    /// Potential θⱼ, in action units, on edges with both endpoints in the
    /// chart.
    potential: BTreeMap<usize, f64>,
}

impl Chart {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        potential: BTreeMap<usize, f64>,
    ) -> Self {
        Chart {
            vertices: vertices.into_iter().collect(),
            potential,
        }
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn potential(&self) -> &BTreeMap<usize, f64> {
        &self.potential
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// True when the chart's subcomplex contains the edge and a potential
    /// value is assigned to it.
    pub fn covers_edge(&self, c: &CWComplex, edge: usize) -> bool {
        let (tail, head) = c.edge(edge);
        self.vertices.contains(&tail)
            && self.vertices.contains(&head)
            && self.potential.contains_key(&edge)
    }

    pub fn theta(&self, edge: usize) -> Option<f64> {
        self.potential.get(&edge).copied()
    }
}

/// A collection of charts covering the complex, with transition angles
/// φⱼₖ: U_j ∩ U_k → ℝ (radians, i.e. Z_jk = e^{iφⱼₖ}).
///
/// Tables are stored for `j < k`; the reversed direction is `φₖⱼ = −φⱼₖ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartAtlas {
    charts: Vec<Chart>,
    transitions: BTreeMap<(usize, usize), BTreeMap<usize, f64>>,
}

impl ChartAtlas {
    /// Builds an atlas, canonicalizing transition tables to `j < k` keys
    /// (negating angles given in the reversed orientation).
    pub fn new(
        charts: Vec<Chart>,
        transitions: BTreeMap<(usize, usize), BTreeMap<usize, f64>>,
    ) -> Self {
        let mut canonical: BTreeMap<(usize, usize), BTreeMap<usize, f64>> = BTreeMap::new();
        for ((j, k), table) in transitions {
            if j == k {
                continue;
            }
            let (key, flip) = if j < k { ((j, k), false) } else { ((k, j), true) };
            let entry = canonical.entry(key).or_default();
            for (v, angle) in table {
                entry.insert(v, if flip { -angle } else { angle });
            }
        }
        ChartAtlas {
            charts,
            transitions: canonical,
        }
    }

    /// Single-chart atlas with the given global potential.
    pub fn single(chart: Chart) -> Self {
        ChartAtlas {
            charts: vec![chart],
            transitions: BTreeMap::new(),
        }
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn n_charts(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, j: usize) -> &Chart {
        &self.charts[j]
    }

    pub fn transitions(&self) -> &BTreeMap<(usize, usize), BTreeMap<usize, f64>> {
        &self.transitions
    }

    /// Transition angle φⱼₖ(v); 0 when j = k, antisymmetric in (j, k).
    /// `None` when no value is tabulated at `v`.
    pub fn phi(&self, j: usize, k: usize, v: usize) -> Option<f64> {
        if j == k {
            return Some(0.0);
        }
        if j < k {
            self.transitions.get(&(j, k))?.get(&v).copied()
        } else {
            self.transitions.get(&(k, j))?.get(&v).map(|a| -a)
        }
    }

    /// Charts whose subcomplex covers the signed step, ascending.
    pub fn charts_covering_step(&self, c: &CWComplex, edge: usize) -> Vec<usize> {
        (0..self.charts.len())
            .filter(|&j| self.charts[j].covers_edge(c, edge))
            .collect()
    }

    /// Lowest-index chart containing a vertex.
    pub fn chart_containing_vertex(&self, v: usize) -> Option<usize> {
        (0..self.charts.len()).find(|&j| self.charts[j].contains_vertex(v))
    }
}

/// A defect found by [`atlas_consistency`].
#[derive(Debug, Clone, PartialEq)]
pub enum AtlasViolation {
    /// A vertex of the complex lies in no chart.
    UncoveredVertex { vertex: usize },
    /// A chart's vertex subset induces a disconnected subcomplex.
    DisconnectedChart { chart: usize },
    /// An edge inside a chart has no potential value.
    MissingPotential { chart: usize, edge: usize },
    /// No transition angle at a vertex of a nonempty overlap.
    MissingTransition { from: usize, to: usize, vertex: usize },
    /// θⱼ − θₖ ≠ ħ·dφⱼₖ (mod 2πħ) on an overlap edge; deviation in angle
    /// units (i.e. divided by ħ, reduced mod 2π).
    EdgeCompatibility {
        from: usize,
        to: usize,
        edge: usize,
        deviation: f64,
    },
    /// φⱼₖ + φₖₗ ≠ φⱼₗ (mod 2π) at a triple-overlap vertex.
    CocycleDefect {
        charts: (usize, usize, usize),
        vertex: usize,
        deviation: f64,
    },
}

impl std::fmt::Display for AtlasViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AtlasViolation::UncoveredVertex { vertex } => {
                write!(f, "vertex {vertex} is not covered by any chart")
            }
            AtlasViolation::DisconnectedChart { chart } => {
                write!(f, "chart {chart} induces a disconnected subcomplex")
            }
            AtlasViolation::MissingPotential { chart, edge } => {
                write!(f, "chart {chart} has no potential value on its edge {edge}")
            }
            AtlasViolation::MissingTransition { from, to, vertex } => write!(
                f,
                "no transition angle between charts {from} and {to} at overlap vertex {vertex}"
            ),
            AtlasViolation::EdgeCompatibility {
                from,
                to,
                edge,
                deviation,
            } => write!(
                f,
                "charts {from}/{to} violate the transition relation on edge {edge} (deviation {deviation:.3e} rad)"
            ),
            AtlasViolation::CocycleDefect {
                charts,
                vertex,
                deviation,
            } => write!(
                f,
                "cocycle defect among charts {:?} at vertex {vertex} (deviation {deviation:.3e} rad)",
                charts
            ),
        }
    }
}

/// Verifies the atlas against a complex: coverage, chart connectivity,
/// potential completeness, the compatibility relation
/// θⱼ − θₖ = ħ·dφⱼₖ (mod 2πħ) on every overlap edge, and the cocycle
/// condition on every triple overlap. Returns all violations found; an empty
/// list means the atlas is consistent within `tol`.
pub fn atlas_consistency(
    c: &CWComplex,
    atlas: &ChartAtlas,
    hbar: f64,
    tol: f64,
) -> Vec<AtlasViolation> {
    let mut violations = Vec::new();

    for v in 0..c.n_vertices() {
        if atlas.chart_containing_vertex(v).is_none() {
            violations.push(AtlasViolation::UncoveredVertex { vertex: v });
        }
    }

    for (j, chart) in atlas.charts().iter().enumerate() {
        if !chart_subcomplex_connected(c, chart) {
            violations.push(AtlasViolation::DisconnectedChart { chart: j });
        }
        for (e, &(tail, head)) in c.edges().iter().enumerate() {
            if chart.contains_vertex(tail)
                && chart.contains_vertex(head)
                && chart.theta(e).is_none()
            {
                violations.push(AtlasViolation::MissingPotential { chart: j, edge: e });
            }
        }
    }

    let n = atlas.n_charts();
    for j in 0..n {
        for k in j + 1..n {
            let overlap: Vec<usize> = atlas
                .chart(j)
                .vertices()
                .intersection(atlas.chart(k).vertices())
                .copied()
                .collect();
            for &v in &overlap {
                if atlas.phi(j, k, v).is_none() {
                    violations.push(AtlasViolation::MissingTransition {
                        from: j,
                        to: k,
                        vertex: v,
                    });
                }
            }
            for (e, &(tail, head)) in c.edges().iter().enumerate() {
                let (Some(theta_j), Some(theta_k)) =
                    (atlas.chart(j).theta(e), atlas.chart(k).theta(e))
                else {
                    continue;
                };
                if !(overlap.contains(&tail) && overlap.contains(&head)) {
                    continue;
                }
                let (Some(phi_head), Some(phi_tail)) =
                    (atlas.phi(j, k, head), atlas.phi(j, k, tail))
                else {
                    continue; // already reported as MissingTransition
                };
                // θⱼ(e) − θₖ(e) = ħ·(φⱼₖ(head) − φⱼₖ(tail)) up to 2πħ·integer
                let deviation = circle_distance(
                    (theta_j - theta_k) / hbar,
                    phi_head - phi_tail,
                );
                if deviation > tol {
                    violations.push(AtlasViolation::EdgeCompatibility {
                        from: j,
                        to: k,
                        edge: e,
                        deviation,
                    });
                }
            }
        }
    }

    for j in 0..n {
        for k in j + 1..n {
            for l in k + 1..n {
                for v in 0..c.n_vertices() {
                    if !(atlas.chart(j).contains_vertex(v)
                        && atlas.chart(k).contains_vertex(v)
                        && atlas.chart(l).contains_vertex(v))
                    {
                        continue;
                    }
                    let (Some(jk), Some(kl), Some(jl)) = (
                        atlas.phi(j, k, v),
                        atlas.phi(k, l, v),
                        atlas.phi(j, l, v),
                    ) else {
                        continue;
                    };
                    let deviation = circle_distance((jk + kl).rem_euclid(TAU), jl.rem_euclid(TAU));
                    if deviation > tol {
                        violations.push(AtlasViolation::CocycleDefect {
                            charts: (j, k, l),
                            vertex: v,
                            deviation,
                        });
                    }
                }
            }
        }
    }

    violations
}

fn chart_subcomplex_connected(c: &CWComplex, chart: &Chart) -> bool {
    let vertices: Vec<usize> = chart.vertices().iter().copied().collect();
    if vertices.is_empty() {
        return true;
    }
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    visited.insert(vertices[0]);
    let mut queue = std::collections::VecDeque::from([vertices[0]]);
    while let Some(v) = queue.pop_front() {
        for (e, &(tail, head)) in c.edges().iter().enumerate() {
            if !chart.covers_edge(c, e) {
                continue;
            }
            let other = if tail == v {
                head
            } else if head == v {
                tail
            } else {
                continue;
            };
            if chart.contains_vertex(other) && visited.insert(other) {
                queue.push_back(other);
            }
        }
    }
    vertices.iter().all(|v| visited.contains(v))
}
