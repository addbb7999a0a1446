//! Exact feasibility of mixed strict/non-strict linear systems by
//! Fourier–Motzkin elimination with back-substitution.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::affine::Affine;
use crate::linalg::{solve_linear, Solution};
use crate::rational::Rational;

#[derive(Clone, Debug)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
    strict: bool,
}

impl Row {
    fn holds_trivially(&self) -> bool {
        if self.strict {
            self.b.is_positive()
        } else {
            !self.b.is_negative()
        }
    }
}

/// Finds a point with `eq(x) = 0`, `ge(x) ≥ 0` and `gt(x) > 0` for every listed form.
pub fn find_point(dim: usize, eq: &[Affine], ge: &[Affine], gt: &[Affine]) -> Option<Vec<Rational>> {
    let (origin, basis) = if eq.is_empty() {
        (vec![Rational::zero(); dim], identity(dim))
    } else {
        let rows: Vec<Vec<Rational>> = eq.iter().map(|e| e.coeffs.clone()).collect();
        let rhs: Vec<Rational> = eq.iter().map(|e| -&e.constant).collect();
        match solve_linear(&rows, &rhs, dim) {
            Solution::Inconsistent => return None,
            Solution::Unique(x) => (x, Vec::new()),
            Solution::Parametric { particular, basis } => (particular, basis),
        }
    };
    let k = basis.len();
    let mut rows = Vec::with_capacity(ge.len() + gt.len());
    for (forms, strict) in [(ge, false), (gt, true)] {
        for f in forms {
            let g = f.substitute(&origin, &basis);
            rows.push(Row { a: g.coeffs, b: g.constant, strict });
        }
    }
    let t = eliminate(k, rows)?;
    let mut x = origin;
    for (tk, b) in t.iter().zip(&basis) {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += tk * bi;
        }
    }
    Some(x)
}

pub fn is_feasible(dim: usize, eq: &[Affine], ge: &[Affine], gt: &[Affine]) -> bool {
    find_point(dim, eq, ge, gt).is_some()
}

/// True iff some `x` makes every form strictly negative.
pub fn strict_feasible(forms: &[Affine]) -> bool {
    let Some(dim) = forms.first().map(Affine::dim) else {
        return true;
    };
    let negated: Vec<Affine> = forms.iter().map(Affine::neg).collect();
    is_feasible(dim, &[], &[], &negated)
}

fn identity(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        })
        .collect()
}

/// Normalizes by the absolute value of the first nonzero coefficient and
/// merges duplicates (a strict copy dominates a non-strict one).
fn dedupe(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut seen: BTreeMap<(Vec<Rational>, Rational), bool> = BTreeMap::new();
    for mut r in rows {
        match r.a.iter().find(|x| !x.is_zero()).cloned() {
            None => {
                if !r.holds_trivially() {
                    return None;
                }
                continue;
            }
            Some(lead) => {
                let s = lead.abs();
                if !s.is_one() {
                    for x in r.a.iter_mut() {
                        *x /= &s;
                    }
                    r.b /= &s;
                }
            }
        }
        let entry = seen.entry((r.a, r.b)).or_insert(false);
        *entry |= r.strict;
    }
    Some(seen.into_iter().map(|((a, b), strict)| Row { a, b, strict }).collect())
}

fn eliminate(k: usize, rows: Vec<Row>) -> Option<Vec<Rational>> {
    let rows = dedupe(rows)?;
    if k == 0 {
        return Some(Vec::new());
    }
    let last = k - 1;
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for r in &rows {
        if r.a[last].is_positive() {
            pos.push(r);
        } else if r.a[last].is_negative() {
            neg.push(r);
        } else {
            rest.push(r);
        }
    }
    let mut projected: Vec<Row> = rest
        .iter()
        .map(|r| Row { a: r.a[..last].to_vec(), b: r.b.clone(), strict: r.strict })
        .collect();
    for p in &pos {
        for q in &neg {
            let cp = -&q.a[last];
            let cq = p.a[last].clone();
            let a = (0..last).map(|i| &p.a[i] * &cp + &q.a[i] * &cq).collect();
            let b = &p.b * &cp + &q.b * &cq;
            projected.push(Row { a, b, strict: p.strict || q.strict });
        }
    }
    let mut t = eliminate(last, projected)?;

    // Bounds on the eliminated coordinate given the prefix `t`.
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for r in &rows {
        let c = &r.a[last];
        if c.is_zero() {
            continue;
        }
        let partial = r.a[..last].iter().zip(&t).fold(r.b.clone(), |acc, (x, y)| acc + x * y);
        let bound = -partial / c;
        if c.is_positive() {
            let tighter = match &lower {
                None => true,
                Some((l, s)) => bound > *l || (bound == *l && r.strict && !s),
            };
            if tighter {
                lower = Some((bound, r.strict));
            }
        } else {
            let tighter = match &upper {
                None => true,
                Some((u, s)) => bound < *u || (bound == *u && r.strict && !s),
            };
            if tighter {
                upper = Some((bound, r.strict));
            }
        }
    }
    let value = match (lower, upper) {
        (None, None) => Rational::zero(),
        (Some((l, _)), None) => l + Rational::one(),
        (None, Some((u, _))) => u - Rational::one(),
        (Some((l, ls)), Some((u, us))) => {
            if l < u {
                (l + u) / Rational::from_integer(2.into())
            } else if l == u && !ls && !us {
                l
            } else {
                return None;
            }
        }
    };
    t.push(value);
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, vec_of};

    fn form(c: &[i64], b: i64) -> Affine {
        Affine::new(vec_of(c), int(b))
    }

    #[test]
    fn strict_examples() {
        // x < 0
        assert!(strict_feasible(&[form(&[1], 0)]));
        // x < 0 and -x < 0
        assert!(!strict_feasible(&[form(&[1], 0), form(&[-1], 0)]));
    }

    #[test]
    fn mixed_strictness_at_a_single_point() {
        // x >= 0, x <= 0 feasible; x > 0, x <= 0 not.
        assert!(is_feasible(1, &[], &[form(&[1], 0), form(&[-1], 0)], &[]));
        assert!(!is_feasible(1, &[], &[form(&[-1], 0)], &[form(&[1], 0)]));
    }

    #[test]
    fn witness_satisfies_system() {
        let eq = [form(&[1, 1, 1], -1)];
        let gt = [form(&[1, 0, 0], 0), form(&[0, 1, 0], 0), form(&[0, 0, 1], 0)];
        let x = find_point(3, &eq, &[], &gt).expect("open simplex is nonempty");
        assert_eq!(eq[0].eval(&x), int(0));
        assert!(gt.iter().all(|g| g.eval(&x).is_positive()));
    }

    #[test]
    fn inconsistent_equalities() {
        let eq = [form(&[1, 1], -1), form(&[1, 1], -2)];
        assert!(find_point(2, &eq, &[], &[]).is_none());
    }
}
