//! End-to-end checks of the binary: exit codes, output formats, and
//! run-to-run determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prequant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn classify_z2_reports_two_bundle_classes() {
    let out = run(&["classify", "--input", &fixture("presentation_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("b1 = 0, torsion = [2]"), "{text}");
    assert!(text.contains("bundle classes: 2"), "{text}");
    assert!(text.contains("connection moduli: 0-dimensional"), "{text}");
    assert!(text.contains("characters: 2 (finite)"), "{text}");
}

#[test]
fn classify_annulus_reports_one_class_one_modulus() {
    let out = run(&["classify", "--input", &fixture("annulus_c6.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("b1 = 1, torsion = []"), "{text}");
    assert!(text.contains("bundle classes: 1"), "{text}");
    assert!(text.contains("connection moduli: 1-dimensional"), "{text}");
}

#[test]
fn classify_disc_reports_unique_prequantization() {
    let out = run(&["classify", "--input", &fixture("disc.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("unique prequantization"));
}

#[test]
fn weil_exit_codes() {
    let accept = run(&["check-weil", "--input", &fixture("weil_cube_flux2.json")]);
    assert_eq!(accept.status.code(), Some(0));
    assert!(stdout(&accept).contains("ACCEPT"));

    let reject = run(&["check-weil", "--input", &fixture("weil_cube_flux1p5.json")]);
    assert_eq!(reject.status.code(), Some(1));
    let text = stdout(&reject);
    assert!(text.contains("REJECT"), "{text}");
    assert!(text.contains("value = 1.5"), "{text}");
}

#[test]
fn parse_error_exits_2_with_position() {
    let dir = std::env::temp_dir().join("prequant_cli_parse_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"vertices\": 3,\n  nope").unwrap();
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn disconnected_complex_exits_3() {
    let dir = std::env::temp_dir().join("prequant_cli_disconnected_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("disconnected.json");
    std::fs::write(
        &path,
        r#"{"vertices": 4, "edges": [[0, 1]], "faces": []}"#,
    )
    .unwrap();
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("disconnected"), "{err}");
}

#[test]
fn atlas_check_accepts_fixture_and_flags_tampering() {
    let good = run(&["check-atlas", "--input", &fixture("two_chart_annulus.json")]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("CONSISTENT"));

    // Break one potential value: compatibility on edge 2 fails.
    let original = std::fs::read_to_string(fixture("two_chart_annulus.json")).unwrap();
    let tampered = original.replace("\"3\": 0.45", "\"3\": 0.45, \"2\": 0.7");
    assert_ne!(original, tampered);
    let dir = std::env::temp_dir().join("prequant_cli_atlas_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tampered.json");
    std::fs::write(&path, tampered).unwrap();
    let out = run(&["check-atlas", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("INCONSISTENT"));
}

#[test]
fn demo_ab_emits_csv_with_header() {
    let out = run(&["demo-ab", "--steps", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "flux,intensity,re_amplitude,im_amplitude"
    );
    assert_eq!(lines.count(), 25);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["classify", "--input", &*fixture("presentation_z2.json")],
        vec!["demo-ab", "--steps", "6", "--seed", "0"],
        vec!["demo-exchange", "--steps", "4", "--seed", "0"],
        vec!["propagate", "--input", &*fixture("propagate_ring.json"), "--steps", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn demo_ab_rejects_wrong_topology() {
    // The wedge has b1 = 2, not annulus topology.
    let out = run(&["demo-ab", "--input", &fixture("wedge_two_circles.json")]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("b₁ = 2") || err.contains("b1 = 2") || err.contains("betti"), "{err}");
}

#[test]
fn classify_with_flux_grid_enumerates_characters() {
    let out = run(&[
        "classify",
        "--input",
        &fixture("annulus_c6.json"),
        "--flux-grid",
        "0:3.141592653589793:2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("enumerated characters (2)"), "{text}");
}

#[test]
fn holonomy_reports_flat_classification() {
    let out = run(&["holonomy", "--input", &fixture("holonomy_annulus.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("connection is flat"), "{text}");
    assert!(text.contains("free angles"), "{text}");
    // The two listed loops traverse the ring in opposite directions, so
    // their holonomies are conjugate.
    assert!(text.contains("loop 0"), "{text}");
    assert!(text.contains("loop 1"), "{text}");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("prequant_cli_output_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let out = run(&[
        "demo-ab",
        "--steps",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("flux,intensity"));
}
