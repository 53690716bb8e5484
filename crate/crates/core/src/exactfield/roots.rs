//! Radicals inside `K`: cube roots of rationals, binomial cubics and square
//! roots. Results are always verified by exact back-substitution.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::sturm::rational_roots;
use super::FieldError;
use crate::scalar::{Field, Ring};
use crate::{FieldElement, Rational};

fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    Some(Rational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// The real cube root of a rational, when it lies in `Q(mu)`: `c = r^3 * 2^k`
/// with `r` rational and `k` in `{0, 1, 2}` gives `r * mu^k`.
pub fn cube_root_rational(c: &Rational) -> Option<FieldElement> {
    if c.is_zero() {
        return Some(FieldElement::zero());
    }
    let mut reduced = c.clone();
    for k in 0..3u32 {
        if let (Some(n), Some(d)) = (exact_cbrt(reduced.numer()), exact_cbrt(reduced.denom())) {
            let r = FieldElement::from_base(Rational::new(n, d));
            return Some(r * FieldElement::mu().pow(k));
        }
        reduced /= Rational::from_integer(BigInt::from(2));
    }
    None
}

/// The three solutions of `a * t^3 = b` when `b / a` is rational:
/// `eps^j * cbrt(b / a)` for `j = 0, 1, 2`.
pub fn binomial_roots(a: &FieldElement, b: &FieldElement) -> Result<[FieldElement; 3], FieldError> {
    let ratio = b.try_div(a)?;
    let c = ratio.as_base().ok_or(FieldError::NonBinomial)?;
    let root = cube_root_rational(c).ok_or_else(|| FieldError::NoCubeRoot(c.to_string()))?;
    let eps = FieldElement::eps();
    let roots = [root.clone(), &root * &eps, &(&root * &eps) * &eps];
    debug_assert!(roots.iter().all(|t| (a * &t.pow(3)) == *b));
    Ok(roots)
}

/// Trace, second symmetric function and determinant of multiplication by
/// `a + b*mu + c*mu^2` on `Q(mu)`.
fn cubic_invariants(x: &FieldElement) -> (Rational, Rational, Rational) {
    let (a, b, c) = (x.coord(0), x.coord(2), x.coord(4));
    let two = Rational::from_i64(2);
    // columns: x*1, x*mu, x*mu^2 in basis (1, mu, mu^2)
    let m = [
        [a.clone(), &two * c, &two * b],
        [b.clone(), a.clone(), &two * c],
        [c.clone(), b.clone(), a.clone()],
    ];
    let minor = |i: usize, j: usize| &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i];
    let trace = &m[0][0] + &m[1][1] + &m[2][2];
    let e2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    (trace, e2, det)
}

fn in_real_cubic(x: &FieldElement) -> bool {
    [1, 3, 5].iter().all(|&i| x.coord(i).is_zero())
}

/// Square root inside the cubic subfield `Q(mu)`.
///
/// If `r^2 = x`, the characteristic polynomial `t^3 - s1 t^2 + s2 t - n` of `r`
/// has `n^2 = N(x)`, and its trace `s1` is a rational root of
/// `s1^4 - 2 A s1^2 - 8 n s1 + A^2 - 4 B` where `A, B` are the trace and second
/// symmetric function of `x`. Then `r = (s1 x + n) / (x + s2)`.
fn sqrt_real_cubic(x: &FieldElement) -> Option<FieldElement> {
    debug_assert!(in_real_cubic(x));
    if x.is_zero() {
        return Some(FieldElement::zero());
    }
    let (a, b, norm) = cubic_invariants(x);
    let n = rational_sqrt(&norm)?;
    let two = Rational::from_i64(2);
    let quartic = [
        &a * &a - Rational::from_i64(4) * &b,
        -(Rational::from_i64(8) * &n),
        -(&two * &a),
        Rational::zero(),
        Rational::one(),
    ];
    for s1 in rational_roots(&quartic) {
        let s2 = (&s1 * &s1 - &a) / &two;
        let den = x.add_ref(&FieldElement::from_base(s2));
        let num = x.scale(&s1).add_ref(&FieldElement::from_base(n.clone()));
        if let Some(r) = num.div_ref(&den) {
            if r.mul_ref(&r) == *x {
                return Some(r);
            }
        }
    }
    None
}

/// A square root of `x` in `K`, if one exists.
///
/// `K = Q(mu)(w)` with `w = 1 + 2 eps`, `w^2 = -3`. Writing `x = u + v w` and
/// `r = p + q w` gives `p^2 = (u + n) / 2` with `n^2 = u^2 + 3 v^2`, and
/// `q = v / (2 p)`, so everything reduces to square roots in `Q(mu)`.
pub fn sqrt(x: &FieldElement) -> Option<FieldElement> {
    if x.is_zero() {
        return Some(FieldElement::zero());
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut u = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    let mut v = u.clone();
    for k in 0..3 {
        let lo = x.coord(2 * k);
        let hi = x.coord(2 * k + 1);
        u[2 * k] = lo - hi * &half;
        v[2 * k] = hi * &half;
    }
    let u = FieldElement::from_coords(u);
    let v = FieldElement::from_coords(v);
    let w = FieldElement::from_i64(1).add_ref(&FieldElement::eps().mul_i64(2));

    let candidate = if v.is_zero() {
        sqrt_real_cubic(&u).or_else(|| {
            let q = sqrt_real_cubic(&u.neg_ref().div_ref(&FieldElement::from_i64(3))?)?;
            Some(q.mul_ref(&w))
        })
    } else {
        let norm = u.mul_ref(&u).add_ref(&v.mul_ref(&v).mul_i64(3));
        let n = sqrt_real_cubic(&norm)?;
        [n.clone(), n.neg_ref()].into_iter().find_map(|n| {
            let p2 = u.add_ref(&n).scale(&half);
            let p = sqrt_real_cubic(&p2)?;
            let q = v.div_ref(&p.mul_i64(2))?;
            let r = p.add_ref(&q.mul_ref(&w));
            (r.mul_ref(&r) == *x).then_some(r)
        })
    };
    candidate.filter(|r| r.mul_ref(r) == *x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cube_roots_of_rationals() {
        let mu = FieldElement::mu();
        assert_eq!(cube_root_rational(&q(2, 1)).unwrap(), mu);
        assert_eq!(cube_root_rational(&q(-1, 2)).unwrap(), (&mu * &mu).scale(&q(-1, 2)));
        assert_eq!(cube_root_rational(&q(27, 8)).unwrap(), FieldElement::from_base(q(3, 2)));
        assert_eq!(cube_root_rational(&q(4, 1)).unwrap(), &mu * &mu);
        assert!(cube_root_rational(&q(3, 1)).is_none());
    }

    #[test]
    fn binomial_roots_are_distinct_and_exact() {
        let a = FieldElement::from_i64(2);
        let b = FieldElement::from_i64(-1);
        let roots = binomial_roots(&a, &b).unwrap();
        for t in &roots {
            assert_eq!(&a * &t.pow(3), b);
        }
        assert_ne!(roots[0], roots[1]);
        assert_ne!(roots[1], roots[2]);
        assert_eq!(binomial_roots(&a, &FieldElement::eps()), Err(FieldError::NonBinomial));
    }

    #[test]
    fn square_roots() {
        let mu = FieldElement::mu();
        let eps = FieldElement::eps();
        let samples = [
            FieldElement::from_i64(4),
            &mu * &mu,
            FieldElement::from_i64(-3),
            eps.clone(),
            (&(&mu + &eps) * &(&mu + &eps)),
            {
                let t = FieldElement::from_i64(3).add_ref(&(&mu * &eps).scale(&q(-5, 7)));
                t.mul_ref(&t)
            },
        ];
        for s in &samples {
            let r = sqrt(s).unwrap_or_else(|| panic!("no sqrt for {s}"));
            assert_eq!(&r * &r, *s);
        }
        assert!(sqrt(&FieldElement::from_i64(2)).is_none());
        assert!(sqrt(&mu).is_none());
    }
}
