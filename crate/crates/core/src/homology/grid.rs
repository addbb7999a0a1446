//! Independent cubical-grid approximation of sub/superlevel sets.

use std::collections::HashMap;

use super::rank::{column_rank, Column};
use crate::network::Network;
use crate::rational::{to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum GridPredicate {
    AtMost(Rational),
    AtLeast(Rational),
    Between(Rational, Rational),
}

impl GridPredicate {
    fn test(&self, v: f64) -> bool {
        match self {
            GridPredicate::AtMost(c) => v <= to_f64(c),
            GridPredicate::AtLeast(c) => v >= to_f64(c),
            GridPredicate::Between(a, b) => v >= to_f64(a) && v <= to_f64(b),
        }
    }

    fn margin(&self, v: f64) -> f64 {
        match self {
            GridPredicate::AtMost(c) | GridPredicate::AtLeast(c) => (v - to_f64(c)).abs(),
            GridPredicate::Between(a, b) => (v - to_f64(a)).abs().min((v - to_f64(b)).abs()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridResult {
    pub betti: Vec<usize>,
    /// Smallest distance between a corner value and a threshold of the predicate.
    pub margin: f64,
    pub cubes: usize,
}

/// Betti numbers of the cubical complex made of every grid cube (of every
/// dimension) whose corners all satisfy the predicate. The grid covers the box
/// `[lo_i, hi_i]` with spacing `resolution`.
pub fn grid_oracle(net: &Network, lo: &[Rational], hi: &[Rational], resolution: &Rational, predicate: &GridPredicate) -> GridResult {
    let n = net.input_dim();
    assert!(lo.len() == n && hi.len() == n, "box dimension must match the network input");
    let step = to_f64(resolution);
    assert!(step > 0.0, "resolution must be positive");
    let counts: Vec<usize> = (0..n).map(|i| ((to_f64(&hi[i]) - to_f64(&lo[i])) / step).round() as usize + 1).collect();
    let total: usize = counts.iter().product();
    let coords = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; n];
        for i in 0..n {
            out[i] = idx % counts[i];
            idx /= counts[i];
        }
        out
    };
    let flat = |c: &[usize]| -> usize { c.iter().rev().zip(counts.iter().rev()).fold(0, |acc, (&x, &k)| acc * k + x) };

    let mut inside = vec![false; total];
    let mut margin = f64::INFINITY;
    for (idx, slot) in inside.iter_mut().enumerate() {
        let c = coords(idx);
        let x: Vec<f64> = (0..n).map(|i| to_f64(&lo[i]) + c[i] as f64 * step).collect();
        let v = net.value_f64(&x);
        *slot = predicate.test(v);
        margin = margin.min(predicate.margin(v));
    }

    // cubes: (base vertex, direction mask)
    let mut by_dim: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n + 1];
    for base in 0..total {
        let b = coords(base);
        for mask in 0u32..(1 << n) {
            if (0..n).any(|i| mask & (1 << i) != 0 && b[i] + 1 >= counts[i]) {
                continue;
            }
            let all = (0u32..(1 << n)).filter(|s| s & !mask == 0).all(|sub| {
                let mut c = b.clone();
                for (i, ci) in c.iter_mut().enumerate() {
                    if sub & (1 << i) != 0 {
                        *ci += 1;
                    }
                }
                inside[flat(&c)]
            });
            if all {
                by_dim[mask.count_ones() as usize].push((base, mask));
            }
        }
    }
    let index: Vec<HashMap<(usize, u32), usize>> =
        by_dim.iter().map(|cubes| cubes.iter().enumerate().map(|(i, &q)| (q, i)).collect()).collect();
    let mut ranks = vec![0; n + 2];
    for k in 1..=n {
        let cols: Vec<Column> = by_dim[k]
            .iter()
            .map(|&(base, mask)| {
                let b = coords(base);
                let mut col = Vec::new();
                let mut sgn = 1i64;
                for i in 0..n {
                    if mask & (1 << i) == 0 {
                        continue;
                    }
                    let face = mask & !(1 << i);
                    let mut up = b.clone();
                    up[i] += 1;
                    col.push((index[k - 1][&(flat(&up), face)], sgn));
                    col.push((index[k - 1][&(base, face)], -sgn));
                    sgn = -sgn;
                }
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = column_rank(&cols);
    }
    let betti = (0..=n).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect();
    GridResult { betti, margin, cubes: by_dim.iter().map(Vec::len).sum() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{fan_network, Activation, AffineLayer};
    use crate::rational::{frac, int, vec_of};

    fn n1() -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap()
    }

    #[test]
    fn quadrant() {
        let r = grid_oracle(&n1(), &vec_of(&[-4, -4]), &vec_of(&[4, 4]), &frac(1, 16), &GridPredicate::AtMost(int(0)));
        assert_eq!(r.betti, vec![1, 0, 0]);
    }

    #[test]
    fn fan_one_sublevels() {
        let lo = vec_of(&[-4, -4]);
        let hi = vec_of(&[4, 4]);
        let net = fan_network(1);
        let below = grid_oracle(&net, &lo, &hi, &frac(1, 16), &GridPredicate::AtMost(frac(-1, 4)));
        assert_eq!(below.betti[..2], [2, 0]);
        let above = grid_oracle(&net, &lo, &hi, &frac(1, 16), &GridPredicate::AtMost(frac(1, 4)));
        assert_eq!(above.betti[..2], [1, 0]);
    }
}
