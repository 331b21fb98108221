//! Acceptance suite: one test per release criterion. Each test prints a
//! single PASS/FAIL line with its elapsed time (visible with --nocapture).
//!
//! Run with:
//!   cargo test -p prequant-cli --test acceptance -- --nocapture

use std::f64::consts::{PI, TAU};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prequant::bundle::{
    classify_connection, feynman_factor_glued, holonomy, DiscreteOneForm, Prequantization,
};
use prequant::complex::{EdgePath, Loop};
use prequant::fixtures;
use prequant::homology::{character_group, FinitePresentation, FirstHomology};
use prequant::propagator::{
    ab_interference_scan, exchange_statistics_demo, lift_invariance_check, plain_propagator,
    sector_propagators, sector_propagators_enumerated, StepRule, DEFAULT_PATH_CAP,
};
use prequant::prequantizations_equivalent;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run_cli(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_prequant"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Runs a criterion body, prints the PASS/FAIL line, and enforces the time
/// budget.
fn criterion(number: u32, label: &str, budget_s: f64, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed().as_secs_f64();
    match &result {
        Ok(()) => println!("criterion {number} [PASS] {label} ({elapsed:.3}s)"),
        Err(e) => println!("criterion {number} [FAIL] {label} ({elapsed:.3}s): {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {number} failed: {e}");
    }
    assert!(
        elapsed <= budget_s,
        "criterion {number} exceeded its {budget_s}s budget: {elapsed:.3}s"
    );
}

fn check(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

#[test]
fn criterion_01_z2_classification() {
    criterion(1, "Z2 classification: two characters, two bundle classes", 1.0, || {
        let (code, out, err) =
            run_cli(&["classify", "--input", &fixture("presentation_z2.json")]);
        check(code == Some(0), format!("exit {code:?}: {err}"))?;
        check(out.contains("bundle classes: 2"), format!("missing bundle count: {out}"))?;
        check(out.contains("characters: 2 (finite)"), format!("missing character count: {out}"))?;
        check(
            out.contains("connection moduli: 0-dimensional"),
            format!("missing moduli line: {out}"),
        )?;
        // exact integer check through the library as well
        let h = FirstHomology::of_presentation(&FinitePresentation::cyclic(2));
        let summary = character_group(&h);
        check(summary.n_components == BigInt::from(2), "component count != 2")?;
        check(summary.identity_component_dim == 0, "moduli dim != 0")?;
        check(
            summary.component_representatives.len() == 2,
            "representative count != 2",
        )
    });
}

#[test]
fn criterion_02_aharonov_bohm_structure() {
    criterion(2, "Aharonov-Bohm: b1=1 moduli, 2*pi*hbar flux periodicity", 1.0, || {
        let (code, out, _) = run_cli(&["classify", "--input", &fixture("annulus_c6.json")]);
        check(code == Some(0), "classify failed")?;
        check(out.contains("b1 = 1, torsion = []"), format!("wrong homology: {out}"))?;
        check(out.contains("bundle classes: 1"), format!("wrong class count: {out}"))?;
        check(
            out.contains("connection moduli: 1-dimensional"),
            format!("wrong moduli: {out}"),
        )?;

        let ring = fixtures::ring(6);
        let hbar = 0.9;
        let tol = 1e-9;
        let phi = 1.3;
        let flux_form = |flux: f64| {
            let mut f = DiscreteOneForm::zeros(&ring);
            f.set(2, flux);
            f
        };
        let p = Prequantization::classify(&ring, flux_form(phi), &[], hbar, tol)
            .map_err(|e| e.to_string())?;
        let p_period =
            Prequantization::classify(&ring, flux_form(phi + TAU * hbar), &[], hbar, tol)
                .map_err(|e| e.to_string())?;
        let p_half =
            Prequantization::classify(&ring, flux_form(phi + PI * hbar), &[], hbar, tol)
                .map_err(|e| e.to_string())?;

        let full = prequantizations_equivalent(&p, &p_period, tol).map_err(|e| e.to_string())?;
        check(full.same_bundle && full.same_connection, "2*pi*hbar shift not equivalent")?;
        let half = prequantizations_equivalent(&p, &p_half, tol).map_err(|e| e.to_string())?;
        check(
            half.same_bundle && !half.same_connection,
            "pi*hbar shift should stay on the bundle but move the connection",
        )
    });
}

#[test]
fn criterion_03_zp_character_counts() {
    criterion(3, "Z_p: exactly p characters in p components, p in {2..5}", 1.0, || {
        for p in 2..=5u64 {
            let h = FirstHomology::of_presentation(&FinitePresentation::cyclic(p));
            check(h.betti() == 0, format!("p={p}: betti nonzero"))?;
            check(h.torsion() == [BigInt::from(p)], format!("p={p}: wrong torsion"))?;
            let summary = character_group(&h);
            check(
                summary.n_components == BigInt::from(p),
                format!("p={p}: wrong component count"),
            )?;
            let mut components: Vec<Vec<BigInt>> = summary
                .component_representatives
                .iter()
                .map(|chi| chi.component().to_vec())
                .collect();
            components.dedup();
            check(
                components.len() == p as usize,
                format!("p={p}: components not distinct"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_04_weil_integrality() {
    criterion(4, "Weil: flux 2*(2*pi*hbar) accepted, 1.5*(2*pi*hbar) rejected", 1.0, || {
        let (code, out, _) =
            run_cli(&["check-weil", "--input", &fixture("weil_cube_flux2.json")]);
        check(code == Some(0), format!("integer flux rejected: {out}"))?;

        let (code, out, _) =
            run_cli(&["check-weil", "--input", &fixture("weil_cube_flux1p5.json")]);
        check(code == Some(1), format!("half-integer flux not rejected: {out}"))?;
        // the report must carry the violating value 1.5 (within 1e-9)
        let value_line = out
            .lines()
            .find(|l| l.contains("value ="))
            .ok_or("no cycle value in report")?;
        let value: f64 = value_line
            .split("value = ")
            .nth(1)
            .and_then(|s| s.split_whitespace().next())
            .and_then(|s| s.parse().ok())
            .ok_or("unparsable cycle value")?;
        check(
            (value.abs() - 1.5).abs() < 1e-9,
            format!("reported value {value} not within 1e-9 of 1.5"),
        )
    });
}

#[test]
fn criterion_05_gluing_consistency() {
    criterion(5, "gluing: schedule-independent factors, endpoint transition ratios", 5.0, || {
        let hbar = 0.8;
        let (ring, atlas) = fixtures::two_chart_annulus(hbar);
        let mut rng = ChaCha8Rng::seed_from_u64(505);
        let mut endpoint_cases = 0;
        for trial in 0..50 {
            // random walk on the ring
            let start = rng.random_range(0..6usize);
            let mut steps = Vec::new();
            let mut at = start;
            for _ in 0..rng.random_range(1..=12) {
                if rng.random_bool(0.5) {
                    steps.push((at, 1i8));
                    at = (at + 1) % 6;
                } else {
                    at = (at + 5) % 6;
                    steps.push((at, -1));
                }
            }
            let path = EdgePath::new(start, steps);
            let greedy =
                feynman_factor_glued(&ring, &atlas, &path, hbar, None).map_err(|e| e.to_string())?;

            // random interior schedules with the same endpoint charts
            let options: Vec<Vec<usize>> = path
                .steps
                .iter()
                .map(|&(e, _)| atlas.charts_covering_step(&ring, e))
                .collect();
            for _ in 0..4 {
                let mut schedule: Vec<usize> = options
                    .iter()
                    .map(|charts| charts[rng.random_range(0..charts.len())])
                    .collect();
                let last = schedule.len() - 1;
                schedule[0] = greedy.schedule[0];
                schedule[last] = greedy.schedule[last];
                let alt = feynman_factor_glued(&ring, &atlas, &path, hbar, Some(&schedule))
                    .map_err(|e| e.to_string())?;
                check(
                    (alt.value - greedy.value).norm() < 1e-12,
                    format!(
                        "trial {trial}: schedule {schedule:?} gives {} vs greedy {}",
                        alt.value, greedy.value
                    ),
                )?;
            }

            // endpoint-chart change: flip the start chart when both cover
            // it (needs ≥ 2 steps so the end chart stays fixed)
            if path.len() >= 2 && options[0].len() == 2 {
                endpoint_cases += 1;
                let mut schedule = greedy.schedule.clone();
                let j = schedule[0];
                let k = options[0].iter().copied().find(|&c| c != j).unwrap();
                schedule[0] = k;
                let flipped = feynman_factor_glued(&ring, &atlas, &path, hbar, Some(&schedule))
                    .map_err(|e| e.to_string())?;
                let phi = atlas.phi(j, k, start).ok_or("missing transition at start")?;
                let expected = greedy.value * Complex64::from_polar(1.0, phi);
                check(
                    (flipped.value - expected).norm() < 1e-12,
                    format!("trial {trial}: start-chart flip off by {}", (flipped.value - expected).norm()),
                )?;
            }
            // and the end chart
            if path.len() >= 2 && options.last().unwrap().len() == 2 {
                let mut schedule = greedy.schedule.clone();
                let last = schedule.len() - 1;
                let j = schedule[last];
                let k = options[last].iter().copied().find(|&c| c != j).unwrap();
                schedule[last] = k;
                let flipped = feynman_factor_glued(&ring, &atlas, &path, hbar, Some(&schedule))
                    .map_err(|e| e.to_string())?;
                let end = path.end(&ring).map_err(|e| e.to_string())?;
                let phi = atlas.phi(j, k, end).ok_or("missing transition at end")?;
                let expected = greedy.value * Complex64::from_polar(1.0, -phi);
                check(
                    (flipped.value - expected).norm() < 1e-12,
                    format!("trial {trial}: end-chart flip off by {}", (flipped.value - expected).norm()),
                )?;
            }
        }
        check(endpoint_cases > 5, "too few endpoint-chart cases sampled")
    });
}

#[test]
fn criterion_06_holonomy_equals_character() {
    criterion(6, "holonomy reproduced by classified character on b1=2 wedge", 10.0, || {
        let wedge = fixtures::wedge_two_circles();
        let tree = wedge.spanning_tree().map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(606);
        for trial in 0..100 {
            let conn = DiscreteOneForm::from_values(
                &wedge,
                vec![rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0)],
            )
            .map_err(|e| e.to_string())?;
            let hbar = rng.random_range(0.2..3.0);
            let class =
                classify_connection(&wedge, &conn, &[], hbar, 1e-9).map_err(|e| e.to_string())?;
            for _ in 0..100 {
                let steps: Vec<(usize, i8)> = (0..rng.random_range(0..14))
                    .map(|_| {
                        (
                            rng.random_range(0..2usize),
                            if rng.random_bool(0.5) { 1 } else { -1 },
                        )
                    })
                    .collect();
                let l = Loop::new(&wedge, EdgePath::new(0, steps)).map_err(|e| e.to_string())?;
                let direct = holonomy(&conn, &l, hbar).map_err(|e| e.to_string())?;
                let via_character = class
                    .character
                    .evaluate_exponents(&class.homology, &tree.homology_class(&l))
                    .map_err(|e| e.to_string())?;
                check(
                    (direct - via_character).norm() < 1e-12,
                    format!(
                        "trial {trial}: holonomy {direct} vs character {via_character}"
                    ),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_sector_oracle_equivalence() {
    criterion(7, "transfer-on-cover sectors equal exhaustive enumeration", 60.0, || {
        let two_particle = prequant::propagator::TwoParticleSpace::build(&fixtures::ring(4))
            .map_err(|e| e.to_string())?;
        let cases: Vec<(&str, prequant::complex::CWComplex)> = vec![
            ("ring3", fixtures::ring(3)),
            ("ring4", fixtures::ring(4)),
            ("ring6", fixtures::ring(6)),
            ("path4", fixtures::path_graph(4)),
            ("wedge", fixtures::wedge_two_circles()),
            ("disc3", fixtures::disc(3)),
            ("torus", fixtures::torus()),
            ("klein", fixtures::klein_bottle()),
            ("cube", fixtures::cube_surface()),
            ("two_particle_c4", two_particle.quotient.clone()),
        ];
        for (name, c) in &cases {
            check(c.n_vertices() <= 8, format!("{name}: fixture too large"))?;
            let tree = c.spanning_tree().map_err(|e| e.to_string())?;
            let rule = StepRule::default_for(c);
            for n_steps in 0..=8 {
                let fast = sector_propagators(c, &tree, &rule, n_steps)
                    .map_err(|e| e.to_string())?;
                let slow =
                    sector_propagators_enumerated(c, &tree, &rule, n_steps, DEFAULT_PATH_CAP)
                        .map_err(|e| e.to_string())?;
                check(
                    fast.sectors().len() == slow.sectors().len(),
                    format!("{name}/{n_steps}: sector sets differ"),
                )?;
                for (class, matrix) in fast.sectors() {
                    let other = slow
                        .sector(class)
                        .ok_or(format!("{name}/{n_steps}: sector {class:?} missing"))?;
                    let diff = (matrix - other).iter().map(|z| z.norm()).fold(0.0, f64::max);
                    check(
                        diff < 1e-12,
                        format!("{name}/{n_steps}: sector {class:?} differs by {diff}"),
                    )?;
                }
                let plain = plain_propagator(c, &rule, n_steps);
                let total_diff = (fast.total() - plain)
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                check(
                    total_diff < 1e-12,
                    format!("{name}/{n_steps}: sector sum differs from transfer power by {total_diff}"),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_ab_periodicity_and_visibility() {
    criterion(8, "AB scan: 2*pi*hbar periodic intensity with visible contrast", 5.0, || {
        let hbar = 1.0;
        let ring = fixtures::ring(6);
        let rule = StepRule::default_for(&ring);
        let grid: Vec<f64> = (0..25).map(|i| i as f64 * (2.0 * TAU * hbar) / 24.0).collect();
        let scan = ab_interference_scan(&ring, &rule, 6, 0, 3, &grid, hbar)
            .map_err(|e| e.to_string())?;
        // Grid points 12 apart differ by exactly 2*pi*hbar.
        for i in 0..=12 {
            let a = scan.rows[i].intensity;
            let b = scan.rows[i + 12].intensity;
            check(
                (a - b).abs() < 1e-12,
                format!("intensity not periodic at row {i}: {a} vs {b}"),
            )?;
        }
        let max = scan.rows.iter().map(|r| r.intensity).fold(f64::MIN, f64::max);
        let min = scan.rows.iter().map(|r| r.intensity).fold(f64::MAX, f64::min);
        check(max - min > 0.0, "no interference contrast")?;

        // The CLI emits the same table as CSV.
        let (code, out, _) = run_cli(&["demo-ab", "--steps", "6"]);
        check(code == Some(0), "demo-ab failed")?;
        let rows: Vec<&str> = out.lines().skip(1).collect();
        check(rows.len() == 25, format!("expected 25 rows, got {}", rows.len()))?;
        for i in 0..=12 {
            let a: f64 = rows[i].split(',').nth(1).unwrap().parse().unwrap();
            let b: f64 = rows[i + 12].split(',').nth(1).unwrap().parse().unwrap();
            check(
                (a - b).abs() < 1e-12,
                format!("CSV intensity not periodic at row {i}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_09_exchange_statistics() {
    criterion(9, "exchange: boson symmetric, fermion antisymmetric, sum = 2*even", 10.0, || {
        let base = fixtures::ring(4);
        let report = exchange_statistics_demo(&base, 4, 0.1).map_err(|e| e.to_string())?;
        check(
            report.boson_symmetry_residual < 1e-12,
            format!("boson symmetry residual {}", report.boson_symmetry_residual),
        )?;
        check(
            report.fermion_antisymmetry_residual < 1e-12,
            format!(
                "fermion antisymmetry residual {}",
                report.fermion_antisymmetry_residual
            ),
        )?;
        check(
            report.sum_identity_residual < 1e-12,
            format!("boson+fermion-2*direct residual {}", report.sum_identity_residual),
        )?;
        check(
            report.quotient_cover_residual < 1e-12,
            format!("quotient/cover residual {}", report.quotient_cover_residual),
        )?;
        // The exchange sector is genuinely populated at 4 steps on C4.
        let max_swap_return = (0..report.space.cover.n_vertices())
            .map(|y| report.exchange[(y, y)].norm())
            .fold(0.0, f64::max);
        check(max_swap_return > 1e-12, "no exchange amplitude at 4 steps")
    });
}

#[test]
fn criterion_10_lift_invariance() {
    criterion(10, "Feynman factor identical across random non-horizontal lifts", 5.0, || {
        let hbar = 1.1;
        let (ring, atlas) = fixtures::two_chart_annulus(hbar);
        let mut rng = ChaCha8Rng::seed_from_u64(1010);
        let mut worst: f64 = 0.0;
        for trial in 0..20 {
            let start = rng.random_range(0..6usize);
            let mut steps = Vec::new();
            let mut at = start;
            for _ in 0..rng.random_range(1..=10) {
                if rng.random_bool(0.5) {
                    steps.push((at, 1i8));
                    at = (at + 1) % 6;
                } else {
                    at = (at + 5) % 6;
                    steps.push((at, -1));
                }
            }
            let path = EdgePath::new(start, steps);
            let deviation = lift_invariance_check(&ring, &atlas, &path, hbar, 10, trial as u64)
                .map_err(|e| e.to_string())?;
            worst = worst.max(deviation);
        }
        check(worst < 1e-12, format!("max deviation {worst}"))
    });
}
