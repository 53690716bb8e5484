//! Rational roots of univariate polynomials over `Q`, located with Sturm
//! sequences in exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Dense univariate polynomial, coefficients in ascending degree order, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct Univariate(Vec<Rational>);

impl Univariate {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn rem(&self, divisor: &Self) -> Self {
        let mut r = self.0.clone();
        let dl = divisor.0.last().expect("division by zero polynomial");
        let dd = divisor.degree();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / dl;
            for (i, c) in divisor.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }
}

fn sturm_sequence(p: &Univariate) -> Vec<Univariate> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(Univariate::new(r.0.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn sign_changes(seq: &[Univariate], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = s.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

fn half_above(k: &BigInt) -> Rational {
    Rational::new(k * 2 + 1, BigInt::from(2))
}

/// Integer roots of a monic polynomial with integer coefficients.
fn integer_roots_monic(p: &Univariate) -> Vec<BigInt> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let bound = p
        .0
        .iter()
        .map(|c| c.to_integer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + 1;
    let seq = sturm_sequence(p);
    let mut roots = Vec::new();
    // Interval (lo + 1/2, hi + 1/2) holds the integers lo+1 ..= hi; its ends
    // are never roots because every rational root is an integer.
    let mut stack = vec![(-&bound - 1, bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &half_above(&lo)) - sign_changes(&seq, &half_above(&hi));
        if count == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if p.eval(&Rational::from_integer(hi.clone())).is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    roots.sort();
    roots
}

/// All distinct rational roots of `sum coeffs[i] * t^i`, ascending.
pub(crate) fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let p = Univariate::new(coeffs.to_vec());
    if p.is_zero() || p.degree() == 0 {
        return Vec::new();
    }
    let n = p.degree();
    let lead = p.0[n].clone();
    let monic: Vec<Rational> = p.0.iter().map(|c| c / &lead).collect();
    let scale = monic[..n]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale_q = Rational::from_integer(scale.clone());
    // t = y / scale turns the polynomial into a monic one over Z.
    let mut pow = Rational::one();
    let mut scaled = vec![Rational::zero(); n + 1];
    for i in (0..=n).rev() {
        scaled[i] = &monic[i] * &pow;
        pow = &pow * &scale_q;
    }
    integer_roots_monic(&Univariate::new(scaled))
        .into_iter()
        .map(|y| Rational::new(y, scale.clone()))
        .collect()
}
