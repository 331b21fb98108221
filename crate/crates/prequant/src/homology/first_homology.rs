//! First homology of a finitely presented group: Betti number, torsion
//! invariants, and the unimodular change of basis splitting homology classes
//! into free and torsion coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::snf::smith_normal_form;
use super::word::{FinitePresentation, GroupWord};
use super::{HomologyError, IntegerMatrix};

/// `H₁ = ℤ^betti ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₛ` with `d₁ | d₂ | … | dₛ`, together with
/// the basis map carrying generator exponent vectors to
/// (free-part, torsion-part) coordinates.
#[derive(Debug, Clone)]
pub struct FirstHomology {
    n_generators: usize,
    betti: usize,
    torsion: Vec<BigInt>,
    /// Rank of the relator lattice; coordinates `rank..n` are free.
    rank: usize,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

/// Coordinates of a homology class: `free` over ℤ, `torsion[i]` reduced into
/// `[0, dᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl FirstHomology {
    /// Decomposes the abelianization of `p` via Smith normal form.
    pub fn of_presentation(p: &FinitePresentation) -> Self {
        let relator_matrix = p.abelianized();
        let snf = smith_normal_form(&relator_matrix);
        let rank = snf.rank();
        let torsion: Vec<BigInt> = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| d > &BigInt::from(1))
            .collect();
        FirstHomology {
            n_generators: p.n_generators(),
            betti: p.n_generators() - rank,
            torsion,
            rank,
            v: snf.v().clone(),
            v_inv: snf.v_inv().clone(),
        }
    }

    pub fn betti(&self) -> usize {
        self.betti
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    /// The unimodular basis map `V`: coordinates of an exponent row vector
    /// `x` are `y = x·V`.
    pub fn basis_map(&self) -> &IntegerMatrix {
        &self.v
    }

    /// Splits an exponent vector into (free, torsion) coordinates.
    ///
    /// Coordinates whose invariant factor is 1 are annihilated in homology
    /// and dropped; torsion coordinates are reduced into `[0, dᵢ)`.
    pub fn class_of_exponents(&self, x: &[BigInt]) -> Result<HomologyClass, HomologyError> {
        if x.len() != self.n_generators {
            return Err(HomologyError::DimensionMismatch {
                expected: self.n_generators,
                got: x.len(),
            });
        }
        let n = self.n_generators;
        let mut coords = vec![BigInt::zero(); n];
        for (j, coord) in coords.iter_mut().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    *coord += xi * self.v.get(i, j);
                }
            }
        }
        let torsion_start = self.rank - self.torsion.len();
        let torsion = (0..self.torsion.len())
            .map(|i| coords[torsion_start + i].mod_floor(&self.torsion[i]))
            .collect();
        let free = coords.split_off(self.rank);
        Ok(HomologyClass { free, torsion })
    }

    pub fn class_of_word(&self, w: &GroupWord) -> Result<HomologyClass, HomologyError> {
        if let Some(max) = w.max_generator() {
            if max >= self.n_generators {
                return Err(HomologyError::InvalidGenerator {
                    index: max,
                    n_generators: self.n_generators,
                });
            }
        }
        self.class_of_exponents(&w.exponent_sums(self.n_generators))
    }

    pub fn class_of_machine_exponents(&self, x: &[i64]) -> Result<HomologyClass, HomologyError> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.class_of_exponents(&big)
    }

    /// Given a linear functional `w` on generator exponent vectors (one real
    /// value per generator), returns its components along the free
    /// coordinates: the vector `u` with `x·w = Σ uⱼ·mⱼ(x)` whenever `w`
    /// annihilates the relator lattice. This is `(V⁻¹·w)` restricted to the
    /// free block.
    pub fn free_functional(&self, w: &[f64]) -> Result<Vec<f64>, HomologyError> {
        if w.len() != self.n_generators {
            return Err(HomologyError::DimensionMismatch {
                expected: self.n_generators,
                got: w.len(),
            });
        }
        let mut out = Vec::with_capacity(self.betti);
        for i in self.rank..self.n_generators {
            let mut acc = 0.0;
            for (g, wg) in w.iter().enumerate() {
                let coeff = self.v_inv.get(i, g);
                if !coeff.is_zero() {
                    acc += coeff.to_f64().expect("basis coefficient out of f64 range") * wg;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// True when the group is finite (no free part).
    pub fn is_finite(&self) -> bool {
        self.betti == 0
    }

    /// Exponent vector (one entry per generator) whose class has free
    /// coordinate `j` equal to 1 and all other coordinates zero: row
    /// `rank + j` of `V⁻¹`.
    pub fn free_generator_exponents(&self, j: usize) -> Vec<BigInt> {
        assert!(j < self.betti);
        (0..self.n_generators)
            .map(|g| self.v_inv.get(self.rank + j, g).clone())
            .collect()
    }
}
