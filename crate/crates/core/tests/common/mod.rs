#![allow(dead_code)]

use plmorse::complex::{is_generic, is_transversal, CanonicalComplex};
use plmorse::network::{random_network, Activation, AffineLayer, Network, Scheme};
use plmorse::rational::{int, vec_of};
use plmorse::Rational;

/// `F(x, y) = relu(x) + relu(y)`.
pub fn n1() -> Network {
    shallow(&[&[1, 0, 0], &[0, 1, 0]], &[1, 1])
}

/// Three lines `x = 0`, `y = 0`, `x + y = 1` with output `(2, -3, 1)`.
pub fn three_line() -> Network {
    shallow(&[&[1, 0, 0], &[0, -1, 0], &[-1, -1, 1]], &[2, -3, 1])
}

pub fn shallow(rows: &[&[i64]], output: &[i64]) -> Network {
    let first = AffineLayer::from_ints(rows, Activation::Relu).unwrap();
    Network::shallow(first, vec_of(output), int(0)).unwrap()
}

/// The first generic, transversal network drawn from seeds `base, base+1, ...`.
pub fn generic_net(arch: &[usize], base: u64) -> Network {
    (base..)
        .map(|s| random_network(arch, s, Scheme::Gaussian).unwrap())
        .find(|n| is_generic(n) && is_transversal(n))
        .unwrap()
}

/// Two values strictly inside every gap between consecutive thresholds,
/// including the two unbounded gaps.
pub fn gap_samples(thresholds: &[Rational]) -> Vec<(Rational, Rational)> {
    let third = |a: &Rational, b: &Rational| (a + (b - a) / int(3), a + (b - a) * int(2) / int(3));
    if thresholds.is_empty() {
        return vec![(int(-1), int(2))];
    }
    let mut out = vec![(&thresholds[0] - int(1), &thresholds[0] - int(3))];
    for w in thresholds.windows(2) {
        out.push(third(&w[0], &w[1]));
    }
    let last = thresholds.last().unwrap();
    out.push((last + int(1), last + int(3)));
    out
}

pub fn complex(net: &Network) -> CanonicalComplex {
    CanonicalComplex::build(net)
}
