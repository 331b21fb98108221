//! JSON wire formats for presentations, complexes, forms, atlases, paths,
//! and characters.
//!
//! These are the documents the CLI reads and writes; parsing from strings
//! lives here so the formats stay testable without touching the filesystem.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{Chart, ChartAtlas, DiscreteOneForm, DiscreteTwoForm};
use crate::complex::{CWComplex, EdgePath};
use crate::homology::{Character, FinitePresentation, FirstHomology, GroupWord};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("json error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad {field} index '{value}': {reason}")]
    BadIndex {
        field: &'static str,
        value: String,
        reason: String,
    },
    #[error("{0}")]
    Semantic(String),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// `{"generators": n, "relators": [[[gen, exp], ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub generators: usize,
    #[serde(default)]
    pub relators: Vec<Vec<(usize, i64)>>,
}

impl PresentationDoc {
    pub fn to_presentation(&self) -> Result<FinitePresentation, InputError> {
        let relators = self
            .relators
            .iter()
            .map(|letters| GroupWord::new(letters.iter().copied()))
            .collect();
        FinitePresentation::new(self.generators, relators)
            .map_err(|e| InputError::Semantic(e.to_string()))
    }
}

/// `{"vertices": n, "edges": [[tail, head], ...], "faces": [[[edge, dir], ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub faces: Vec<Vec<(usize, i8)>>,
}

impl ComplexDoc {
    pub fn to_complex(&self) -> CWComplex {
        CWComplex::new(self.vertices, self.edges.clone(), self.faces.clone())
    }

    pub fn from_complex(c: &CWComplex) -> Self {
        ComplexDoc {
            vertices: c.n_vertices(),
            edges: c.edges().to_vec(),
            faces: c.faces().to_vec(),
        }
    }
}

/// `{"start": v, "steps": [[edge, dir], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathDoc {
    pub start: usize,
    #[serde(default)]
    pub steps: Vec<(usize, i8)>,
}

impl PathDoc {
    pub fn to_path(&self) -> EdgePath {
        EdgePath::new(self.start, self.steps.clone())
    }
}

/// A sparse index → value table with JSON string keys.
pub type SparseValues = BTreeMap<String, f64>;

fn parse_sparse(
    table: &SparseValues,
    len: usize,
    field: &'static str,
) -> Result<Vec<f64>, InputError> {
    let mut values = vec![0.0; len];
    for (key, &value) in table {
        let index: usize = key.parse().map_err(|_| InputError::BadIndex {
            field,
            value: key.clone(),
            reason: "not a nonnegative integer".into(),
        })?;
        if index >= len {
            return Err(InputError::BadIndex {
                field,
                value: key.clone(),
                reason: format!("out of range (0..{len})"),
            });
        }
        values[index] = value;
    }
    Ok(values)
}

/// `{"edges": {"0": v, ...}, "faces": {"0": v, ...}, "hbar": h}` — values in
/// action units; unlisted indices default to zero.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FormsDoc {
    #[serde(default)]
    pub edges: SparseValues,
    #[serde(default)]
    pub faces: SparseValues,
    #[serde(default)]
    pub hbar: Option<f64>,
}

impl FormsDoc {
    pub fn one_form(&self, c: &CWComplex) -> Result<DiscreteOneForm, InputError> {
        let values = parse_sparse(&self.edges, c.n_edges(), "edge")?;
        DiscreteOneForm::from_values(c, values).map_err(|e| InputError::Semantic(e.to_string()))
    }

    pub fn two_form(&self, c: &CWComplex) -> Result<DiscreteTwoForm, InputError> {
        let values = parse_sparse(&self.faces, c.n_faces(), "face")?;
        DiscreteTwoForm::from_values(c, values).map_err(|e| InputError::Semantic(e.to_string()))
    }
}

/// One chart: vertex subset plus the edge potential inside it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartDoc {
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub potential: SparseValues,
}

/// One transition table between a pair of charts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: usize,
    pub to: usize,
    #[serde(default)]
    pub angles: SparseValues,
}

/// `{"charts": [...], "transitions": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtlasDoc {
    pub charts: Vec<ChartDoc>,
    #[serde(default)]
    pub transitions: Vec<TransitionDoc>,
}

impl AtlasDoc {
    pub fn to_atlas(&self) -> Result<ChartAtlas, InputError> {
        let mut charts = Vec::with_capacity(self.charts.len());
        for doc in &self.charts {
            let mut potential = BTreeMap::new();
            for (key, &value) in &doc.potential {
                let edge: usize = key.parse().map_err(|_| InputError::BadIndex {
                    field: "chart potential edge",
                    value: key.clone(),
                    reason: "not a nonnegative integer".into(),
                })?;
                potential.insert(edge, value);
            }
            charts.push(Chart::new(doc.vertices.iter().copied(), potential));
        }
        let mut transitions: BTreeMap<(usize, usize), BTreeMap<usize, f64>> = BTreeMap::new();
        for doc in &self.transitions {
            let mut angles = BTreeMap::new();
            for (key, &value) in &doc.angles {
                let vertex: usize = key.parse().map_err(|_| InputError::BadIndex {
                    field: "transition vertex",
                    value: key.clone(),
                    reason: "not a nonnegative integer".into(),
                })?;
                angles.insert(vertex, value);
            }
            transitions.insert((doc.from, doc.to), angles);
        }
        Ok(ChartAtlas::new(charts, transitions))
    }
}

/// `{"free_angles": [...], "torsion_labels": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterDoc {
    #[serde(default)]
    pub free_angles: Vec<f64>,
    #[serde(default)]
    pub torsion_labels: Vec<i64>,
}

impl CharacterDoc {
    pub fn to_character(&self, h: &FirstHomology) -> Result<Character, InputError> {
        Character::new(
            h,
            self.free_angles.clone(),
            self.torsion_labels.iter().map(|&k| BigInt::from(k)).collect(),
        )
        .map_err(|e| InputError::Semantic(e.to_string()))
    }

    pub fn from_character(chi: &Character) -> Self {
        use num_traits::ToPrimitive;
        CharacterDoc {
            free_angles: chi.free_angles().to_vec(),
            torsion_labels: chi
                .torsion_labels()
                .iter()
                .map(|k| k.to_i64().expect("torsion label fits in i64"))
                .collect(),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationDoc, InputError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_complex(text: &str) -> Result<ComplexDoc, InputError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn presentation_round_trip() {
        let text = r#"{"generators": 2, "relators": [[[0, 2], [1, -1]]]}"#;
        let doc = parse_presentation(text).unwrap();
        let p = doc.to_presentation().unwrap();
        assert_eq!(p.n_generators(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].letters(), &[(0, 2), (1, -1)]);
    }

    #[test]
    fn complex_round_trip() {
        let ring = fixtures::ring(4);
        let doc = ComplexDoc::from_complex(&ring);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed = parse_complex(&text).unwrap();
        assert_eq!(parsed.to_complex(), ring);
    }

    #[test]
    fn json_errors_carry_position() {
        let err = parse_complex("{\"vertices\": 3,\n  bad}").unwrap_err();
        match err {
            InputError::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sparse_form_values() {
        let ring = fixtures::ring(3);
        let doc: FormsDoc = serde_json::from_str(
            r#"{"edges": {"1": 2.5}, "hbar": 0.5}"#,
        )
        .unwrap();
        let form = doc.one_form(&ring).unwrap();
        assert_eq!(form.values(), &[0.0, 2.5, 0.0]);
        assert_eq!(doc.hbar, Some(0.5));

        let bad: FormsDoc =
            serde_json::from_str(r#"{"edges": {"7": 1.0}}"#).unwrap();
        assert!(matches!(
            bad.one_form(&ring),
            Err(InputError::BadIndex { .. })
        ));
    }

    #[test]
    fn atlas_doc_matches_fixture() {
        let (ring, atlas) = fixtures::two_chart_annulus(1.0);
        let doc = AtlasDoc {
            charts: atlas
                .charts()
                .iter()
                .map(|ch| ChartDoc {
                    vertices: ch.vertices().iter().copied().collect(),
                    potential: ch
                        .potential()
                        .iter()
                        .map(|(&e, &v)| (e.to_string(), v))
                        .collect(),
                })
                .collect(),
            transitions: atlas
                .transitions()
                .iter()
                .map(|(&(from, to), table)| TransitionDoc {
                    from,
                    to,
                    angles: table.iter().map(|(&v, &a)| (v.to_string(), a)).collect(),
                })
                .collect(),
        };
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: AtlasDoc = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.to_atlas().unwrap();
        assert_eq!(rebuilt, atlas);
        let _ = ring;
    }
}
