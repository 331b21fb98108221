//! Exact integer-linear-algebra core: abelianization, Smith normal form,
//! first-homology decomposition, and the character group of the fundamental
//! group.
//!
//! All matrix arithmetic is carried out in arbitrary-precision integers;
//! only the flux angles of a [`Character`] are floating point. Every value in
//! this module is immutable after construction and every operation is pure.

mod character;
mod first_homology;
mod matrix;
mod snf;
mod word;

pub use character::{
    character_group, enumerate_characters, Character, CharacterGroupSummary,
};
pub(crate) use character::{circle_distance, normalize_angle};
pub use first_homology::{FirstHomology, HomologyClass};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use word::{FinitePresentation, GroupWord};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("generator index {index} out of range for presentation with {n_generators} generators")]
    InvalidGenerator { index: usize, n_generators: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("torsion label {label} out of range for invariant factor {modulus}")]
    LabelOutOfRange { label: String, modulus: String },
    #[error("flux angle grid has {got} entries but homology has {expected} free generators")]
    GridSizeMismatch { expected: usize, got: usize },
    #[error("non-finite value in input")]
    NonFiniteValue,
}
