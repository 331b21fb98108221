//! Rendering of reports as text, CSV, and JSON.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{json, Value};

use prequant::homology::{Character, CharacterGroupSummary, FirstHomology};
use prequant::propagator::{AbScan, ExchangeReport, SectorPropagator};
use prequant::bundle::WeilReport;

pub fn complex_str(z: Complex64) -> String {
    format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

fn character_line(chi: &Character) -> String {
    format!(
        "free angles {:?}, torsion labels {:?}",
        chi.free_angles(),
        chi.torsion_labels()
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
    )
}

pub fn classify_text(
    description: &str,
    h: &FirstHomology,
    summary: &CharacterGroupSummary,
    enumerated: Option<&[Character]>,
) -> String {
    let mut out = String::new();
    writeln!(out, "input: {description}").unwrap();
    writeln!(
        out,
        "first homology: b1 = {}, torsion = [{}]",
        h.betti(),
        h.torsion()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
    .unwrap();
    writeln!(out, "bundle classes: {}", summary.n_components).unwrap();
    writeln!(
        out,
        "connection moduli: {}-dimensional{}",
        summary.identity_component_dim,
        if summary.identity_component_dim > 0 {
            " (flux mod 2*pi*hbar per generator)"
        } else {
            ""
        }
    )
    .unwrap();
    if summary.identity_component_dim == 0 {
        writeln!(out, "characters: {} (finite)", summary.n_components).unwrap();
    } else {
        writeln!(
            out,
            "characters: {} component(s), each a {}-torus of flux angles",
            summary.n_components, summary.identity_component_dim
        )
        .unwrap();
    }
    writeln!(out, "component representatives:").unwrap();
    for chi in &summary.component_representatives {
        writeln!(out, "  {}", character_line(chi)).unwrap();
    }
    if summary.n_components == num_bigint::BigInt::from(1) && h.betti() == 0 {
        writeln!(out, "unique prequantization").unwrap();
    }
    if let Some(chars) = enumerated {
        writeln!(out, "enumerated characters ({}):", chars.len()).unwrap();
        for chi in chars {
            writeln!(out, "  {}", character_line(chi)).unwrap();
        }
    }
    out
}

pub fn classify_json(
    h: &FirstHomology,
    summary: &CharacterGroupSummary,
    enumerated: Option<&[Character]>,
) -> Value {
    let character_value = |chi: &Character| {
        json!({
            "free_angles": chi.free_angles(),
            "torsion_labels": chi
                .torsion_labels()
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>(),
        })
    };
    let mut value = json!({
        "betti": h.betti(),
        "torsion": h.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "bundle_classes": summary.n_components.to_string(),
        "moduli_dim": summary.identity_component_dim,
        "representatives": summary
            .component_representatives
            .iter()
            .map(character_value)
            .collect::<Vec<_>>(),
    });
    if let Some(chars) = enumerated {
        value["enumerated"] = Value::Array(chars.iter().map(character_value).collect());
    }
    value
}

pub fn weil_text(report: &WeilReport, hbar: f64, tol: f64) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "weil integrality check: {} basis 2-cycle(s), hbar = {hbar}, tol = {tol}",
        report.cycles.len()
    )
    .unwrap();
    for cycle in &report.cycles {
        writeln!(
            out,
            "  cycle {}: value = {} (nearest integer {}, deviation {})",
            cycle.cycle, cycle.value, cycle.nearest_integer, cycle.deviation
        )
        .unwrap();
    }
    writeln!(
        out,
        "result: {}",
        if report.accepted { "ACCEPT" } else { "REJECT" }
    )
    .unwrap();
    out
}

pub fn weil_json(report: &WeilReport, hbar: f64) -> Value {
    json!({
        "hbar": hbar,
        "accepted": report.accepted,
        "cycles": report
            .cycles
            .iter()
            .map(|c| json!({
                "cycle": c.cycle,
                "value": c.value,
                "nearest_integer": c.nearest_integer,
                "deviation": c.deviation,
            }))
            .collect::<Vec<_>>(),
    })
}

fn matrix_json(m: &nalgebra::DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_text(m: &nalgebra::DMatrix<Complex64>, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:+.6e}{:+.6e}i", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(out, "{indent}[{}]", row.join(", ")).unwrap();
    }
    out
}

pub fn propagate_text(sp: &SectorPropagator, weighted: Option<&nalgebra::DMatrix<Complex64>>) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "sector propagator: {} step(s), {} vertices, {} populated sector(s)",
        sp.n_steps(),
        sp.n_vertices(),
        sp.sectors().len()
    )
    .unwrap();
    writeln!(out, "closure convention: {}", sp.basepath_convention()).unwrap();
    for (class, matrix) in sp.sectors() {
        let norm: f64 = matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        writeln!(out, "  sector {:?}: frobenius norm {:.6e}", class, norm).unwrap();
    }
    if let Some(k) = weighted {
        writeln!(out, "character-weighted propagator:").unwrap();
        out.push_str(&matrix_text(k, "  "));
    }
    out
}

pub fn propagate_json(sp: &SectorPropagator, weighted: Option<&nalgebra::DMatrix<Complex64>>) -> Value {
    let mut value = json!({
        "n_steps": sp.n_steps(),
        "n_vertices": sp.n_vertices(),
        "closure_convention": sp.basepath_convention(),
        "sectors": sp
            .sectors()
            .iter()
            .map(|(class, matrix)| json!({
                "class": class,
                "matrix": matrix_json(matrix),
            }))
            .collect::<Vec<_>>(),
    });
    if let Some(k) = weighted {
        value["weighted"] = matrix_json(k);
    }
    value
}

pub fn ab_csv(scan: &AbScan) -> String {
    let mut out = String::from("flux,intensity,re_amplitude,im_amplitude\n");
    for row in &scan.rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.flux, row.intensity, row.re_amplitude, row.im_amplitude
        )
        .unwrap();
    }
    out
}

pub fn exchange_text(report: &ExchangeReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "two-particle exchange demo: {} steps on the quotient of the base graph",
        report.n_steps
    )
    .unwrap();
    writeln!(
        out,
        "cover: {} ordered pairs; quotient: {} unordered pairs",
        report.space.cover.n_vertices(),
        report.space.quotient.n_vertices()
    )
    .unwrap();
    writeln!(out, "boson propagator (direct + exchange, cover-indexed):").unwrap();
    out.push_str(&matrix_text(&report.boson, "  "));
    writeln!(out, "fermion propagator (direct - exchange, cover-indexed):").unwrap();
    out.push_str(&matrix_text(&report.fermion, "  "));
    writeln!(out, "symmetry residuals:").unwrap();
    writeln!(
        out,
        "  boson symmetry under endpoint swap:      {:.3e}",
        report.boson_symmetry_residual
    )
    .unwrap();
    writeln!(
        out,
        "  fermion antisymmetry under endpoint swap: {:.3e}",
        report.fermion_antisymmetry_residual
    )
    .unwrap();
    writeln!(
        out,
        "  boson + fermion - 2*direct:               {:.3e}",
        report.sum_identity_residual
    )
    .unwrap();
    writeln!(
        out,
        "  quotient route vs cover route:            {:.3e}",
        report.quotient_cover_residual
    )
    .unwrap();
    out
}
