//! Exact rank of sparse integer matrices over the rationals.
//!
//! Columns are reduced fraction-free (`c ← a·c − b·p`, then divided by the
//! content) in checked `i64`; on overflow the whole computation is redone
//! with big integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse column: `(row, coefficient)` pairs sorted by row, no zeros.
pub type Column = Vec<(usize, i64)>;

trait Coeff: Clone + PartialEq + Zero + One + Integer + Signed {
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
}

impl Coeff for i64 {
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
}

impl Coeff for BigInt {
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
}

/// Rank over Q of the matrix with the given columns.
pub fn column_rank(columns: &[Column]) -> usize {
    if let Some(r) = reduce::<i64>(columns.to_vec()) {
        return r;
    }
    let big: Vec<Vec<(usize, BigInt)>> =
        columns.iter().map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()).collect();
    reduce::<BigInt>(big).expect("big integers do not overflow")
}

fn reduce<T: Coeff>(columns: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut col in columns {
        while let Some((low, b)) = col.last().cloned() {
            let Some(p) = pivots.get(&low) else { break };
            let a = p.last().expect("pivot columns are nonempty").1.clone();
            col = combine(&col, &a, p, &b)?;
        }
        if let Some(&(low, _)) = col.last() {
            pivots.insert(low, col);
        }
    }
    Some(pivots.len())
}

/// `a·c − b·p`, divided by its content.
fn combine<T: Coeff>(c: &[(usize, T)], a: &T, p: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < p.len() {
        let take_c = j == p.len() || (i < c.len() && c[i].0 < p[j].0);
        let take_p = i == c.len() || (j < p.len() && p[j].0 < c[i].0);
        let (row, v) = if take_c {
            i += 1;
            (c[i - 1].0, c[i - 1].1.mul_checked(a)?)
        } else if take_p {
            j += 1;
            (p[j - 1].0, T::zero().sub_checked(&p[j - 1].1.mul_checked(b)?)?)
        } else {
            i += 1;
            j += 1;
            let v = c[i - 1].1.mul_checked(a)?.sub_checked(&p[j - 1].1.mul_checked(b)?)?;
            (c[i - 1].0, v)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    let g = out.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut out {
            *v = v.div_floor(&g);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(column_rank(&[]), 0);
        assert_eq!(column_rank(&[vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 1), (2, -1)]]), 2);
        assert_eq!(column_rank(&[vec![(0, 2)], vec![(0, 3)], vec![(1, 5)]]), 2);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let cols = vec![vec![(0, big), (1, 3)], vec![(0, 3), (1, big)], vec![(0, big), (1, big - 1)]];
        assert_eq!(column_rank(&cols), 2);
    }
}
