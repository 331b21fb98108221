//! Group words and finite presentations of the fundamental group.

use num_bigint::BigInt;

use super::{HomologyError, IntegerMatrix};

/// A freely reduced word in the generators of a finitely presented group.
///
/// Letters are `(generator index, exponent)` pairs with nonzero exponents;
/// adjacent letters never share a generator index. Construction performs the
/// free reduction, so two words representing the same reduced word compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(usize, i64)>,
}

impl GroupWord {
    /// Builds a word from a letter sequence, merging adjacent letters on the
    /// same generator and dropping letters whose exponents cancel.
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut reduced: Vec<(usize, i64)> = Vec::new();
        for (gen, exp) in letters {
            if exp == 0 {
                continue;
            }
            match reduced.last_mut() {
                Some((g, e)) if *g == gen => {
                    *e += exp;
                    if *e == 0 {
                        reduced.pop();
                    }
                }
                _ => reduced.push((gen, exp)),
            }
        }
        GroupWord { letters: reduced }
    }

    /// The empty word.
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index appearing in the word, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// `self` followed by `other`, freely reduced.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// Total exponent of each generator; this is the image of the word under
    /// abelianization.
    pub fn exponent_sums(&self, n_generators: usize) -> Vec<BigInt> {
        let mut sums = vec![BigInt::from(0); n_generators];
        for &(gen, exp) in &self.letters {
            sums[gen] += exp;
        }
        sums
    }
}

/// Generators and relators defining the fundamental group of a configuration
/// space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    n_generators: usize,
    relators: Vec<GroupWord>,
}

impl FinitePresentation {
    pub fn new(
        n_generators: usize,
        relators: Vec<GroupWord>,
    ) -> Result<Self, HomologyError> {
        for relator in &relators {
            if let Some(max) = relator.max_generator() {
                if max >= n_generators {
                    return Err(HomologyError::InvalidGenerator {
                        index: max,
                        n_generators,
                    });
                }
            }
        }
        Ok(FinitePresentation {
            n_generators,
            relators,
        })
    }

    /// Free group on `n` generators.
    pub fn free(n_generators: usize) -> Self {
        FinitePresentation {
            n_generators,
            relators: Vec::new(),
        }
    }

    /// Cyclic presentation `⟨a | aᵖ⟩`.
    pub fn cyclic(p: u64) -> Self {
        FinitePresentation {
            n_generators: 1,
            relators: vec![GroupWord::new([(0, p as i64)])],
        }
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    /// The relator exponent-sum matrix: row `r`, column `g` holds the total
    /// exponent of generator `g` in relator `r`. The cokernel of its
    /// transpose is the abelianization of the presented group.
    pub fn abelianized(&self) -> IntegerMatrix {
        let mut matrix = IntegerMatrix::zeros(self.relators.len(), self.n_generators);
        for (r, relator) in self.relators.iter().enumerate() {
            for (g, sum) in relator.exponent_sums(self.n_generators).into_iter().enumerate() {
                matrix.set(r, g, sum);
            }
        }
        matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn free_reduction_merges_and_cancels() {
        let w = GroupWord::new([(0, 2), (0, -2), (1, 1), (1, 2), (0, 3)]);
        assert_eq!(w.letters(), &[(1, 3), (0, 3)]);

        let cascade = GroupWord::new([(0, 1), (1, 1), (1, -1), (0, -1)]);
        assert!(cascade.is_identity());
    }

    #[test]
    fn inverse_concat_is_identity() {
        let w = GroupWord::new([(0, 2), (1, -1), (2, 5)]);
        assert!(w.concat(&w.inverse()).is_identity());
        assert!(w.inverse().concat(&w).is_identity());
    }

    #[test]
    fn abelianize_no_relators() {
        let p = FinitePresentation::free(1);
        let a = p.abelianized();
        assert_eq!((a.rows(), a.cols()), (0, 1));
    }

    #[test]
    fn abelianize_z2_relator() {
        // ⟨a | a²⟩ has relator matrix [[2]].
        let p = FinitePresentation::cyclic(2);
        let a = p.abelianized();
        assert_eq!((a.rows(), a.cols()), (1, 1));
        assert_eq!(a.get(0, 0), &BigInt::from(2));
    }

    #[test]
    fn abelianize_commutator_vanishes() {
        let commutator = GroupWord::new([(0, 1), (1, 1), (0, -1), (1, -1)]);
        let p = FinitePresentation::new(2, vec![commutator]).unwrap();
        let a = p.abelianized();
        assert_eq!(a.get(0, 0), &BigInt::from(0));
        assert_eq!(a.get(0, 1), &BigInt::from(0));
    }

    #[test]
    fn presentation_rejects_bad_generator() {
        let err = FinitePresentation::new(1, vec![GroupWord::new([(3, 1)])]);
        assert!(matches!(
            err,
            Err(HomologyError::InvalidGenerator { index: 3, .. })
        ));
    }
}
