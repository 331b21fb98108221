//! Smith normal form over the integers with unimodular transform tracking.

use log::debug;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::{div_rounded, IntegerMatrix};

/// Result of the Smith reduction `U·A·V = D`.
///
/// `U` and `V` are unimodular; `D` is diagonal with nonnegative entries
/// forming a divisibility chain `d₁ | d₂ | …`, followed by zeros. `V⁻¹` is
/// tracked alongside `V` because homology coordinates need both directions of
/// the change of basis.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    u: IntegerMatrix,
    d: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn u(&self) -> &IntegerMatrix {
        &self.u
    }

    pub fn d(&self) -> &IntegerMatrix {
        &self.d
    }

    pub fn v(&self) -> &IntegerMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &IntegerMatrix {
        &self.v_inv
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.d
            .diagonal()
            .iter()
            .take_while(|d| !d.is_zero())
            .count()
    }

    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen by minimal nonzero absolute value, ties broken by lowest
/// row then lowest column index, so the decomposition is deterministic for a
/// given input.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut v_inv = IntegerMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            // Clear column t with row operations. A nonzero remainder is
            // strictly smaller than the pivot, so swapping it up makes
            // progress; restart the clearing pass with the new pivot.
            let mut restarted = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -div_rounded(d.get(i, t), d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    restarted = true;
                    break;
                }
            }
            if restarted {
                continue;
            }

            // Clear row t with column operations. Column t stays clear
            // because the entries below the pivot are already zero.
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -div_rounded(d.get(t, j), d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                v_inv.add_row_multiple(t, j, &(-&q));
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    restarted = true;
                    break;
                }
            }
            if restarted {
                continue;
            }

            // Pivot now owns its row and column; enforce that it divides the
            // remaining submatrix so the diagonal forms a chain.
            if let Some(i) = first_nondivisible_row(&d, t) {
                let one = BigInt::from(1);
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    debug!("smith normal form: rank {} of {}x{}", t, m, n);
    SmithDecomposition { u, d, v, v_inv }
}

/// Minimal-|entry| nonzero pivot in the trailing submatrix, scanning
/// row-major so ties resolve to the lowest row, then lowest column.
fn min_abs_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let value = d.get(i, j);
            if value.is_zero() {
                continue;
            }
            let a = value.abs();
            match &best {
                Some((_, _, b)) if *b <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// First row of the trailing submatrix containing an entry the pivot does
/// not divide.
fn first_nondivisible_row(d: &IntegerMatrix, t: usize) -> Option<usize> {
    let pivot = d.get(t, t).clone();
    for i in t + 1..d.rows() {
        for j in t + 1..d.cols() {
            if !(d.get(i, j) % &pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}
