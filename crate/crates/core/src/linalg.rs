//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// `particular + span(basis)`.
    Parametric {
        particular: Vec<Rational>,
        basis: Vec<Vec<Rational>>,
    },
    Inconsistent,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : rows · x = 0}` in `R^cols`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// A basis of the row space (the nonzero rows of the RREF).
pub fn row_basis(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let k = rref(&mut m, cols).len();
    m.truncate(k);
    m
}

/// Solves `matrix · x = rhs`.
pub fn solve_linear(matrix: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Solution {
    assert_eq!(matrix.len(), rhs.len());
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug[r][cols].clone();
    }
    let basis = nullspace(matrix, cols);
    if basis.is_empty() {
        Solution::Unique(particular)
    } else {
        Solution::Parametric { particular, basis }
    }
}

/// True when `v` lies in the span of `rows`.
pub fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(rows)
}
