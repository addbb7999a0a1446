use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{affine_value, dot, Rational};

/// The affine functional `x ↦ ⟨coeffs, x⟩ + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        Self { coeffs, constant }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, Rational::zero())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self { coeffs: vec![Rational::zero(); dim], constant: c }
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[i] = Rational::one();
        Self::new(coeffs, Rational::zero())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        affine_value(&self.coeffs, x, Some(&self.constant))
    }

    /// Directional derivative along `d`.
    pub fn slope(&self, d: &[Rational]) -> Rational {
        dot(&self.coeffs, d)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), -&self.constant)
    }

    pub fn shifted(&self, delta: &Rational) -> Self {
        Self::new(self.coeffs.clone(), &self.constant + delta)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), &self.constant * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            &self.constant + &other.constant,
        )
    }

    /// `self ∘ (t ↦ origin + Σ t_k basis_k)`.
    pub fn substitute(&self, origin: &[Rational], basis: &[Vec<Rational>]) -> Self {
        Self::new(basis.iter().map(|b| dot(&self.coeffs, b)).collect(), self.eval(origin))
    }

    /// Positive rescaling to a primitive integer vector (content 1).
    pub fn canonical(&self) -> Self {
        let lcm = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        let scale = Rational::from_integer(lcm);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .map(|x| (x * &scale).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        let mut vals: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect();
        let constant = vals.pop().unwrap();
        Self::new(vals, constant)
    }

    /// Canonical form of the hyperplane `self = 0`: content 1, first nonzero coefficient positive.
    pub fn canonical_equality(&self) -> Self {
        let c = self.canonical();
        match c.coeffs.iter().chain(std::iter::once(&c.constant)).find(|x| !x.is_zero()) {
            Some(first) if first.is_negative() => c.neg(),
            _ => c,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·x{i}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else {
            write!(f, " + {}", self.constant)
        }
    }
}
