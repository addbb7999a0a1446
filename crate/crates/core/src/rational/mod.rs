//! Exact scalars and the textual forms used by the JSON interfaces.

mod exact;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use exact::Rational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn vec_of(vals: &[i64]) -> Vec<Rational> {
    vals.iter().map(|&v| int(v)).collect()
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"-1.25e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::BadRational(s.to_string()))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::BadRational(s.to_string()))?;
        if q.is_zero() {
            return Err(Error::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(t).ok_or_else(|| Error::BadRational(s.to_string()))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    if t.is_empty() {
        return None;
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return None;
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{fraction}");
    let mut value = Rational::from_integer(joined.parse::<BigInt>().ok()?);
    let scale = exponent - fraction.len() as i64;
    let ten = BigInt::from(10);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

/// `p/q` for non-integers, `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Rounds `x` to the nearest multiple of `2^-bits` (`bits <= 53`).
pub fn snap_dyadic(x: f64, bits: u32) -> Rational {
    assert!(x.is_finite(), "cannot snap a non-finite sample");
    assert!(bits <= 53, "f64 carries at most 53 fractional bits here");
    let scale = (1u64 << bits) as f64;
    let numer = (x * scale).round();
    let numer = BigInt::from(numer as i128);
    Rational::new(numer, BigInt::one() << bits)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Sign as -1, 0 or +1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    affine_value(a, b, None)
}

/// `⟨a, b⟩ + c`, reduced once at the end instead of after every operation.
/// Entries with 64-bit numerators and denominators take an `i128` path.
pub fn affine_value(a: &[Rational], b: &[Rational], c: Option<&Rational>) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    if let Some(v) = small_affine_value(a, b, c) {
        return v;
    }
    let (mut num, mut den) = match c {
        Some(c) => (c.numer().clone(), c.denom().clone()),
        None => (BigInt::zero(), BigInt::one()),
    };
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let tn = x.numer() * y.numer();
        let td = x.denom() * y.denom();
        if td == den {
            num += tn;
        } else {
            num = num * &td + tn * &den;
            den *= td;
        }
    }
    Rational::new(num, den)
}

fn small(q: &Rational) -> Option<(i128, i128)> {
    q.as_small().filter(|(n, d)| i64::try_from(*n).is_ok() && i64::try_from(*d).is_ok())
}

fn small_affine_value(a: &[Rational], b: &[Rational], c: Option<&Rational>) -> Option<Rational> {
    let (mut num, mut den) = match c {
        Some(c) => small(c)?,
        None => (0, 1),
    };
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let (xn, xd) = small(x)?;
        let (yn, yd) = small(y)?;
        let (tn, td) = (xn.checked_mul(yn)?, xd.checked_mul(yd)?);
        if td == den {
            num = num.checked_add(tn)?;
        } else {
            let g = gcd_i128(den, td);
            let (l, r) = (den / g, td / g);
            num = num.checked_mul(r)?.checked_add(tn.checked_mul(l)?)?;
            den = den.checked_mul(r)?;
        }
        let g = gcd_i128(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
    }
    Some(Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1) as i128
}

/// Scales a vector to a primitive integer vector with the same direction.
pub fn primitive_direction(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Rational approximation of a finite float with denominator `den`.
pub fn approx(x: f64, den: i64) -> Rational {
    Rational::new(BigInt::from((x * den as f64).round() as i64), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("0.1").unwrap(), frac(1, 10));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), frac(-1, 8));
        assert_eq!(parse_rational("2E3").unwrap(), int(2000));
        assert_eq!(parse_rational("7").unwrap(), int(7));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(parse_rational("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse_rational("abc"), Err(Error::BadRational(_))));
        assert!(matches!(parse_rational("."), Err(Error::BadRational(_))));
    }

    #[test]
    fn snapping_is_dyadic() {
        let q = snap_dyadic(0.5, 53);
        assert_eq!(q, frac(1, 2));
        let q = snap_dyadic(-1.0 / 3.0, 53);
        assert!(q.denom() <= (BigInt::one() << 53));
        assert!((to_f64(&q) + 1.0 / 3.0).abs() < 1e-15);
        let q = snap_dyadic(-1.0 / 3.0, 16);
        assert_eq!(q, frac(-21845, 65536));
    }

    #[test]
    fn dot_matches_naive_sum() {
        let big = Rational::new(BigInt::one() << 80, BigInt::from(3));
        let cases = [
            (vec![frac(1, 2), frac(-3, 4)], vec![frac(2, 3), frac(5, 7)]),
            (vec![big.clone(), frac(1, 3)], vec![frac(3, 7), big.clone()]),
            (vec![int(i64::MAX), int(i64::MAX)], vec![int(i64::MAX), int(-i64::MAX)]),
            (vec![int(0), frac(1, 6)], vec![int(5), frac(-6, 1)]),
        ];
        for (a, b) in cases {
            let naive = a.iter().zip(&b).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
            assert_eq!(dot(&a, &b), naive);
            assert_eq!(affine_value(&a, &b, Some(&frac(1, 9))), naive + frac(1, 9));
        }
    }

    #[test]
    fn primitive_directions() {
        let v = vec![frac(1, 2), frac(-3, 4)];
        assert_eq!(primitive_direction(&v), vec_of(&[2, -3]));
    }
}
