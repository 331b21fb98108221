//! Command-line front door for the prequant library.
//!
//! Exit codes: 0 success/accept, 1 semantic reject (Weil failure, atlas
//! violations), 2 parse or configuration error, 3 input-validity error.
//! Output is byte-identical for identical (config, seed).

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::debug;
use num_bigint::BigInt;

use prequant::bundle::{
    atlas_consistency, classify_connection, holonomy, weil_check,
};
use prequant::complex::{CWComplex, Loop};
use prequant::homology::{character_group, enumerate_characters, FirstHomology};
use prequant::io::{
    AtlasDoc, CharacterDoc, ComplexDoc, FormsDoc, InputError, PathDoc, PresentationDoc,
};
use prequant::propagator::{
    ab_interference_scan, exchange_statistics_demo, sector_propagators, weighted_propagator,
    StepRule,
};
use prequant::{fixtures, DEFAULT_TOL};

mod render;

#[derive(Parser)]
#[command(
    name = "prequant",
    about = "Classify inequivalent prequantizations of multiply connected configuration spaces and run homotopy-sector propagator experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonOpts {
    /// Input document (JSON). Demo commands fall back to built-in fixtures.
    #[arg(long)]
    input: Option<String>,
    /// Planck constant ħ (action units). Overrides any value in the input
    /// document.
    #[arg(long)]
    hbar: Option<f64>,
    /// Numerical tolerance for flatness, integrality, and angle comparisons.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for randomized operations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the prequantizations of a presentation or complex.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
        /// Also enumerate characters on this flux-angle grid
        /// (start:stop:count, radians), applied to every free generator.
        #[arg(long, value_name = "START:STOP:COUNT")]
        flux_grid: Option<String>,
    },
    /// Check Weil integrality of a 2-form on a complex.
    CheckWeil {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check chart/transition consistency of an atlas.
    CheckAtlas {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate loop holonomies of a connection 1-form and classify it.
    Holonomy {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Split an n-step propagator into homology sectors.
    Propagate {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of time steps.
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Aharonov-Bohm interference scan on an annulus complex.
    DemoAb {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        source: Option<usize>,
        #[arg(long)]
        detector: Option<usize>,
        /// Flux grid start:stop:count in action units; defaults to
        /// 0:4πħ:25.
        #[arg(long, value_name = "START:STOP:COUNT")]
        flux_grid: Option<String>,
    },
    /// Two-identical-particle exchange statistics on a base graph.
    DemoExchange {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Hop strength of the default step rule.
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
    },
}

/// A command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Json { .. } => Failure::parse(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

/// Successful command output plus the exit code (0 accept, 1 reject).
struct Outcome {
    code: u8,
    text: String,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { code: 0, text }
    }

    fn reject(text: String) -> Self {
        Outcome { code: 1, text }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PREQUANT_LOG")).init();
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Classify { common, flux_grid } => (common, cmd_classify(common, flux_grid.as_deref())),
        Command::CheckWeil { common } => (common, cmd_check_weil(common)),
        Command::CheckAtlas { common } => (common, cmd_check_atlas(common)),
        Command::Holonomy { common } => (common, cmd_holonomy(common)),
        Command::Propagate { common, steps } => (common, cmd_propagate(common, *steps)),
        Command::DemoAb {
            common,
            steps,
            source,
            detector,
            flux_grid,
        } => (
            common,
            cmd_demo_ab(common, *steps, *source, *detector, flux_grid.as_deref()),
        ),
        Command::DemoExchange {
            common,
            steps,
            lambda,
        } => (common, cmd_demo_exchange(common, *steps, *lambda)),
    };
    match result {
        Ok(outcome) => {
            if let Some(path) = &common.output {
                if let Err(e) = fs::write(path, &outcome.text) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_input(common: &CommonOpts) -> Result<String, Failure> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Failure::parse("--input is required for this command"))?;
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))
}

fn effective_hbar(common: &CommonOpts, doc_hbar: Option<f64>) -> Result<f64, Failure> {
    let hbar = common.hbar.or(doc_hbar).unwrap_or(1.0);
    if hbar > 0.0 && hbar.is_finite() {
        Ok(hbar)
    } else {
        Err(Failure::parse(format!("hbar must be positive, got {hbar}")))
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::parse(format!(
            "flux grid must be start:stop:count, got '{spec}'"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Failure::parse(format!("bad grid start '{}'", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| Failure::parse(format!("bad grid stop '{}'", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Failure::parse(format!("bad grid count '{}'", parts[2])))?;
    if count == 0 {
        return Err(Failure::parse("grid count must be positive"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn validated_complex(doc: &ComplexDoc) -> Result<CWComplex, Failure> {
    let c = doc.to_complex();
    c.validate()
        .map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(c)
}

/// Accepts either a presentation document or a complex document; complexes
/// are converted through their edge-path-group presentation.
fn homology_of_input(text: &str) -> Result<(FirstHomology, String), Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::from(InputError::from(e)))?;
    if value.get("generators").is_some() {
        let doc: PresentationDoc =
            serde_json::from_value(value).map_err(|e| Failure::from(InputError::from(e)))?;
        let p = doc.to_presentation()?;
        let describe = format!(
            "presentation with {} generator(s), {} relator(s)",
            p.n_generators(),
            p.relators().len()
        );
        Ok((FirstHomology::of_presentation(&p), describe))
    } else if value.get("vertices").is_some() {
        let doc: ComplexDoc =
            serde_json::from_value(value).map_err(|e| Failure::from(InputError::from(e)))?;
        let c = validated_complex(&doc)?;
        let cp = c
            .fundamental_presentation(0)
            .map_err(|e| Failure::invalid(e.to_string()))?;
        let describe = format!(
            "complex with {} vertices, {} edges, {} faces",
            c.n_vertices(),
            c.n_edges(),
            c.n_faces()
        );
        Ok((FirstHomology::of_presentation(&cp.presentation), describe))
    } else {
        Err(Failure::parse(
            "input must contain either 'generators' (presentation) or 'vertices' (complex)",
        ))
    }
}

fn cmd_classify(common: &CommonOpts, flux_grid: Option<&str>) -> Result<Outcome, Failure> {
    let text = read_input(common)?;
    let (h, description) = homology_of_input(&text)?;
    let summary = character_group(&h);
    debug!("classified {description}: b1 = {}", h.betti());

    let enumerated = match flux_grid {
        Some(spec) => {
            let axis = parse_grid(spec)?;
            let grid = vec![axis; h.betti()];
            Some(enumerate_characters(&h, &grid).map_err(|e| Failure::invalid(e.to_string()))?)
        }
        None => None,
    };

    match common.format.as_str() {
        "json" => {
            let value = render::classify_json(&h, &summary, enumerated.as_deref());
            Ok(Outcome::ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&value).unwrap()
            )))
        }
        "text" => Ok(Outcome::ok(render::classify_text(
            &description,
            &h,
            &summary,
            enumerated.as_deref(),
        ))),
        other => Err(Failure::parse(format!("unsupported format '{other}'"))),
    }
}

#[derive(serde::Deserialize)]
struct WeilInput {
    complex: ComplexDoc,
    two_form: FormsDoc,
    #[serde(default)]
    hbar: Option<f64>,
}

fn cmd_check_weil(common: &CommonOpts) -> Result<Outcome, Failure> {
    let text = read_input(common)?;
    let doc: WeilInput =
        serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
    let c = validated_complex(&doc.complex)?;
    let sigma = doc.two_form.two_form(&c)?;
    let hbar = effective_hbar(common, doc.hbar.or(doc.two_form.hbar))?;
    let report = weil_check(&c, &sigma, hbar, common.tol)
        .map_err(|e| Failure::invalid(e.to_string()))?;

    let rendered = match common.format.as_str() {
        "json" => format!(
            "{}\n",
            serde_json::to_string_pretty(&render::weil_json(&report, hbar)).unwrap()
        ),
        "text" => render::weil_text(&report, hbar, common.tol),
        other => return Err(Failure::parse(format!("unsupported format '{other}'"))),
    };
    if report.accepted {
        Ok(Outcome::ok(rendered))
    } else {
        Ok(Outcome::reject(rendered))
    }
}

#[derive(serde::Deserialize)]
struct AtlasInput {
    complex: ComplexDoc,
    atlas: AtlasDoc,
    #[serde(default)]
    hbar: Option<f64>,
}

fn cmd_check_atlas(common: &CommonOpts) -> Result<Outcome, Failure> {
    let text = read_input(common)?;
    let doc: AtlasInput =
        serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
    let c = validated_complex(&doc.complex)?;
    let atlas = doc.atlas.to_atlas()?;
    let hbar = effective_hbar(common, doc.hbar)?;
    let violations = atlas_consistency(&c, &atlas, hbar, common.tol);

    let mut out = String::new();
    writeln!(
        out,
        "atlas check: {} chart(s), {} transition table(s), hbar = {}",
        atlas.n_charts(),
        atlas.transitions().len(),
        hbar
    )
    .unwrap();
    if violations.is_empty() {
        writeln!(out, "result: CONSISTENT").unwrap();
        Ok(Outcome::ok(out))
    } else {
        writeln!(out, "violations ({}):", violations.len()).unwrap();
        for v in &violations {
            writeln!(out, "  - {v}").unwrap();
        }
        writeln!(out, "result: INCONSISTENT").unwrap();
        Ok(Outcome::reject(out))
    }
}

#[derive(serde::Deserialize)]
struct HolonomyInput {
    complex: ComplexDoc,
    one_form: FormsDoc,
    #[serde(default)]
    loops: Vec<PathDoc>,
    #[serde(default)]
    torsion_label: Vec<i64>,
    #[serde(default)]
    hbar: Option<f64>,
}

fn cmd_holonomy(common: &CommonOpts) -> Result<Outcome, Failure> {
    let text = read_input(common)?;
    let doc: HolonomyInput =
        serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
    let c = validated_complex(&doc.complex)?;
    let conn = doc.one_form.one_form(&c)?;
    let hbar = effective_hbar(common, doc.hbar.or(doc.one_form.hbar))?;

    let mut out = String::new();
    writeln!(out, "holonomy: hbar = {hbar}").unwrap();
    for (i, path_doc) in doc.loops.iter().enumerate() {
        let l = Loop::new(&c, path_doc.to_path())
            .map_err(|e| Failure::invalid(format!("loop {i}: {e}")))?;
        let value = holonomy(&conn, &l, hbar).map_err(|e| Failure::invalid(e.to_string()))?;
        writeln!(
            out,
            "  loop {i}: holonomy = {} (angle {})",
            render::complex_str(value),
            value.arg()
        )
        .unwrap();
    }

    let label: Vec<BigInt> = doc.torsion_label.iter().map(|&k| BigInt::from(k)).collect();
    match classify_connection(&c, &conn, &label, hbar, common.tol) {
        Ok(class) => {
            writeln!(out, "connection is flat; classification:").unwrap();
            writeln!(
                out,
                "  free angles (flux/hbar mod 2pi): {:?}",
                class.character.free_angles()
            )
            .unwrap();
            writeln!(out, "  torsion labels: {:?}", class.character.torsion_labels()).unwrap();
        }
        Err(e) => {
            writeln!(out, "classification skipped: {e}").unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(serde::Deserialize)]
struct RuleDoc {
    #[serde(default)]
    lambda: Option<f64>,
    #[serde(default)]
    edge_amplitudes: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    stay_amplitudes: Option<Vec<(f64, f64)>>,
}

#[derive(serde::Deserialize)]
struct PropagateInput {
    complex: ComplexDoc,
    #[serde(default)]
    rule: Option<RuleDoc>,
    #[serde(default)]
    character: Option<CharacterDoc>,
}

fn build_rule(c: &CWComplex, doc: &Option<RuleDoc>) -> Result<StepRule, Failure> {
    match doc {
        None => Ok(StepRule::default_for(c)),
        Some(rule) => match (&rule.edge_amplitudes, &rule.stay_amplitudes) {
            (Some(edges), Some(stays)) => {
                let edges = edges
                    .iter()
                    .map(|&(re, im)| num_complex::Complex64::new(re, im))
                    .collect();
                let stays = stays
                    .iter()
                    .map(|&(re, im)| num_complex::Complex64::new(re, im))
                    .collect();
                StepRule::new(c, edges, stays).map_err(|e| Failure::invalid(e.to_string()))
            }
            (None, None) => Ok(StepRule::uniform(c, rule.lambda.unwrap_or(0.1))),
            _ => Err(Failure::parse(
                "rule must give both edge_amplitudes and stay_amplitudes, or neither",
            )),
        },
    }
}

fn cmd_propagate(common: &CommonOpts, steps: usize) -> Result<Outcome, Failure> {
    let text = read_input(common)?;
    let doc: PropagateInput =
        serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
    let c = validated_complex(&doc.complex)?;
    let rule = build_rule(&c, &doc.rule)?;
    let cp = c
        .fundamental_presentation(0)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let h = FirstHomology::of_presentation(&cp.presentation);
    let sp = sector_propagators(&c, &cp.tree, &rule, steps)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let weighted = match &doc.character {
        Some(chi_doc) => {
            let chi = chi_doc.to_character(&h)?;
            Some(weighted_propagator(&sp, &chi, &h).map_err(|e| Failure::invalid(e.to_string()))?)
        }
        None => None,
    };

    match common.format.as_str() {
        "json" => Ok(Outcome::ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&render::propagate_json(&sp, weighted.as_ref())).unwrap()
        ))),
        "text" => Ok(Outcome::ok(render::propagate_text(&sp, weighted.as_ref()))),
        other => Err(Failure::parse(format!("unsupported format '{other}'"))),
    }
}

fn cmd_demo_ab(
    common: &CommonOpts,
    steps: usize,
    source: Option<usize>,
    detector: Option<usize>,
    flux_grid: Option<&str>,
) -> Result<Outcome, Failure> {
    let c = match &common.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
            let doc: ComplexDoc =
                serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
            validated_complex(&doc)?
        }
        None => fixtures::ring(6),
    };
    let hbar = effective_hbar(common, None)?;
    let source = source.unwrap_or(0);
    let detector = detector.unwrap_or(c.n_vertices() / 2);
    let grid = match flux_grid {
        Some(spec) => parse_grid(spec)?,
        None => parse_grid(&format!(
            "0:{}:25",
            2.0 * std::f64::consts::TAU * hbar
        ))?,
    };
    let rule = StepRule::default_for(&c);
    let scan = ab_interference_scan(&c, &rule, steps, source, detector, &grid, hbar)
        .map_err(|e| Failure::invalid(e.to_string()))?;

    match common.format.as_str() {
        "csv" | "text" => Ok(Outcome::ok(render::ab_csv(&scan))),
        other => Err(Failure::parse(format!("unsupported format '{other}'"))),
    }
}

fn cmd_demo_exchange(common: &CommonOpts, steps: usize, lambda: f64) -> Result<Outcome, Failure> {
    let base = match &common.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
            let doc: ComplexDoc =
                serde_json::from_str(&text).map_err(|e| Failure::from(InputError::from(e)))?;
            validated_complex(&doc)?
        }
        None => fixtures::ring(4),
    };
    let report = exchange_statistics_demo(&base, steps, lambda)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(Outcome::ok(render::exchange_text(&report)))
}
