//! Exact rationals stored inline while numerator and denominator fit in an
//! `i128`, and as big rationals otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    /// `n / d` with `d > 0`, `gcd(n, d) = 1` and both strictly inside the
    /// `i128` range (so negation never overflows).
    Small(i128, i128),
    /// Only values that do not fit `Small`.
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    /// `n / d` from a pair of `i128`; `d` must be nonzero.
    fn from_i128(n: i128, d: i128) -> Rational {
        assert!(d != 0, "zero denominator");
        if n == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs());
        let neg = (n < 0) != (d < 0);
        let (un, ud) = (n.unsigned_abs() / g, d.unsigned_abs() / g);
        if un <= i128::MAX as u128 && ud <= i128::MAX as u128 {
            let n = un as i128;
            return Rational(Repr::Small(if neg { -n } else { n }, ud as i128));
        }
        let bn = BigInt::from(un);
        Rational(Repr::Big(BigRational::new_raw(if neg { -bn } else { bn }, BigInt::from(ud))))
    }

    fn from_big(q: BigRational) -> Rational {
        match (q.numer().to_i128(), q.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(q)),
        }
    }

    /// `numer / denom` in lowest terms. Panics on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Rational {
        match (numer.to_i128(), denom.to_i128()) {
            (Some(n), Some(d)) if d != 0 => Rational::from_i128(n, d),
            _ => Rational::from_big(BigRational::new(numer, denom)),
        }
    }

    pub fn from_integer(n: BigInt) -> Rational {
        Rational::new(n, BigInt::one())
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(q) => q.clone(),
        }
    }

    /// `(numerator, denominator)` when the value is stored inline.
    pub fn as_small(&self) -> Option<(i128, i128)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(q) => q.is_integer(),
        }
    }

    /// Rounds towards zero.
    pub fn to_integer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n / d),
            Repr::Big(q) => q.to_integer(),
        }
    }

    pub fn floor(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(n.div_euclid(*d), 1)),
            Repr::Big(q) => Rational::from_big(q.floor()),
        }
    }

    pub fn ceil(&self) -> Rational {
        -(-self).floor()
    }

    /// Rounds half away from zero.
    pub fn round(&self) -> Rational {
        Rational::from_big(self.to_big().round())
    }

    pub fn recip(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(*d, *n),
            Repr::Big(q) => Rational::from_big(q.recip()),
        }
    }

    fn big_op(&self, other: &Rational, f: impl Fn(BigRational, BigRational) -> BigRational) -> Rational {
        Rational::from_big(f(self.to_big(), other.to_big()))
    }

    fn add_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            let sum = if b == d {
                a.checked_add(*c).map(|n| (n, *b))
            } else {
                let g = gcd_u128(b.unsigned_abs(), d.unsigned_abs()) as i128;
                let (bg, dg) = (b / g, d / g);
                a.checked_mul(dg)
                    .zip(c.checked_mul(bg))
                    .and_then(|(x, y)| x.checked_add(y))
                    .zip(b.checked_mul(dg))
            };
            if let Some((n, d)) = sum {
                return Rational::from_i128(n, d);
            }
        }
        self.big_op(other, |x, y| x + y)
    }

    fn sub_ref(&self, other: &Rational) -> Rational {
        self.add_ref(&-other)
    }

    /// `(a/b) * (c/d)` with cross-cancellation first, inline when it fits.
    fn small_product(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
        let g1 = gcd_u128(a.unsigned_abs(), d.unsigned_abs()).max(1) as i128;
        let g2 = gcd_u128(c.unsigned_abs(), b.unsigned_abs()).max(1) as i128;
        let n = (a / g1).checked_mul(c / g2)?;
        let m = (b / g2).checked_mul(d / g1)?;
        Some(Rational::from_i128(n, m))
    }

    fn mul_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if let Some(r) = Rational::small_product(*a, *b, *c, *d) {
                return r;
            }
        }
        self.big_op(other, |x, y| x * y)
    }

    fn div_ref(&self, other: &Rational) -> Rational {
        assert!(!other.is_zero(), "division by zero");
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if let Some(r) = Rational::small_product(*a, *b, *d, *c) {
                return r;
            }
        }
        self.big_op(other, |x, y| x / y)
    }

    fn rem_ref(&self, other: &Rational) -> Rational {
        self.big_op(other, |x, y| x % y)
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
            Repr::Big(q) => Rational::from_big(-q.clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(q) => {
                1u8.hash(state);
                q.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) if b == d => a.cmp(c),
            (Repr::Small(a, b), Repr::Small(c, d)) => match (a.checked_mul(*d), c.checked_mul(*b)) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => self.to_big().cmp(&other.to_big()),
            },
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i128(v.into(), 1)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational::from_big(q)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $atr<&Rational> for Rational {
            fn $am(&mut self, rhs: &Rational) {
                *self = self.$imp(rhs);
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                *self = self.$imp(&rhs);
            }
        }
    };
}

binop!(Add, add, add_ref, AddAssign, add_assign);
binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
binop!(Div, div, div_ref, DivAssign, div_assign);
binop!(Rem, rem, rem_ref, RemAssign, rem_assign);

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Num for Rational {
    type FromStrRadixErr = <BigRational as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational::from_big)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self - other
        }
    }

    fn signum(&self) -> Self {
        if self.is_zero() {
            Rational::zero()
        } else if self.is_positive() {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(q) => q.is_positive(),
        }
    }

    fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(q) => q.is_negative(),
        }
    }
}

impl ToPrimitive for Rational {
    fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => i64::try_from(*n).ok(),
            Repr::Small(..) => None,
            Repr::Big(q) => q.to_i64(),
        }
    }

    fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }

    fn to_f64(&self) -> Option<f64> {
        match &self.0 {
            Repr::Small(n, d) => Some(small_to_f64(*n, *d)),
            Repr::Big(q) => q.to_f64(),
        }
    }
}

/// Correctly rounded unless both parts exceed 2^53, in which case it defers
/// to the big-rational conversion.
fn small_to_f64(n: i128, d: i128) -> f64 {
    const EXACT: i128 = 1 << 53;
    if n.abs() <= EXACT && d <= EXACT {
        n as f64 / d as f64
    } else {
        BigRational::new_raw(BigInt::from(n), BigInt::from(d)).to_f64().unwrap_or(f64::NAN)
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::from(n))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from_i128(n.into(), 1))
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(q: &Rational) -> BigRational {
        q.to_big()
    }

    fn arb() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n.into(), d.into())),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n.into(), d.into())),
            (any::<i128>(), 1u64..u64::MAX).prop_map(|(n, d)| Rational::new(n.into(), d.into())),
            (any::<i128>(), any::<i128>()).prop_filter("nonzero", |(_, d)| *d != 0).prop_map(|(n, d)| Rational::new(n.into(), d.into())),
            (any::<i128>(), any::<i128>()).prop_filter("nonzero", |(_, d)| *d != 0)
                .prop_map(|(n, d)| Rational::new(BigInt::from(n) * 7 * BigInt::from(n), d.into())),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_big_rationals(a in arb(), b in arb()) {
            prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
            prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
            prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
            if !b.is_zero() {
                prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
            }
            prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
            prop_assert_eq!(a == b, big(&a) == big(&b));
            prop_assert_eq!(big(&a.floor()), big(&a).floor());
            prop_assert_eq!(big(&a.ceil()), big(&a).ceil());
            prop_assert_eq!(a.to_string(), big(&a).to_string());
            prop_assert_eq!(a.to_f64(), big(&a).to_f64());
        }

        #[test]
        fn representation_is_canonical(a in arb(), b in arb()) {
            let s = &a + &b;
            let back = Rational::from_big(big(&s));
            prop_assert_eq!(s.as_small(), back.as_small());
        }
    }

    #[test]
    fn overflow_promotes() {
        let m = Rational::new(BigInt::from(i128::MAX), BigInt::one());
        let s = &m + &m;
        assert!(s.as_small().is_none());
        assert_eq!((&s - &m), m);
        assert!((&s - &m).as_small().is_some());
        let min = Rational::new(BigInt::from(i128::MIN), BigInt::one());
        assert!(min.as_small().is_none());
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn gcd_small() {
        assert_eq!(gcd_u128(12, 18), 6);
        assert_eq!(gcd_u128(0, 5), 5);
        assert_eq!(gcd_u128(7, 0), 7);
        assert_eq!(gcd_u128(1 << 100, 3 << 98), 1 << 98);
    }
}
