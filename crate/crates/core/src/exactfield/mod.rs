//! Arithmetic in the degree-6 tower `K = Q(eps, mu)`, `eps^2 + eps + 1 = 0`,
//! `mu^3 = 2`.
//!
//! Elements are stored by their coordinates in the fixed basis
//! `(1, eps, mu, eps*mu, mu^2, eps*mu^2)`. Coordinate index `2*m + e` holds the
//! coefficient of `eps^e * mu^m`, so every representation is canonical and
//! "is rational" is a coordinate test.

mod expr;
mod integral;
mod roots;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{BaseField, Field, Ring};

pub use integral::IntTower;
pub use roots::{binomial_roots, cube_root_rational, sqrt};

/// Dimension of `K` over its base field.
pub const DEGREE: usize = 6;

/// Human-readable names of the basis vectors, in storage order.
pub const BASIS_NAMES: [&str; DEGREE] = ["1", "eps", "mu", "eps*mu", "mu^2", "eps*mu^2"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {DEGREE} coordinates, found {0}")]
    WrongArity(usize),
    #[error("cannot parse coordinate {0:?}")]
    BadCoordinate(String),
    #[error("equation is not a binomial cubic over the base field")]
    NonBinomial,
    #[error("no cube root of {0} in the field")]
    NoCubeRoot(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Zero,
    Rational,
    RationalInteger,
    Irrational,
}

/// An element of `Q(eps, mu)` over the exact base field `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tower<Q> {
    coords: [Q; DEGREE],
}

impl<Q: BaseField> Tower<Q> {
    pub fn from_coords(coords: [Q; DEGREE]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Q; DEGREE] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    pub fn from_base(q: Q) -> Self {
        let mut coords: [Q; DEGREE] = std::array::from_fn(|_| Q::zero());
        coords[0] = q;
        Self { coords }
    }

    /// The basis vector `eps^e * mu^m`.
    pub fn basis(e: usize, m: usize) -> Self {
        assert!(e < 2 && m < 3, "basis index out of range");
        let mut coords: [Q; DEGREE] = std::array::from_fn(|_| Q::zero());
        coords[2 * m + e] = Q::one();
        Self { coords }
    }

    pub fn eps() -> Self {
        Self::basis(1, 0)
    }

    pub fn mu() -> Self {
        Self::basis(0, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The base-field value when the element is rational.
    pub fn as_base(&self) -> Option<&Q> {
        self.is_rational().then(|| &self.coords[0])
    }

    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            Classification::Zero
        } else if !self.is_rational() {
            Classification::Irrational
        } else if self.coords[0].is_integer() {
            Classification::RationalInteger
        } else {
            Classification::Rational
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self { coords: std::array::from_fn(|i| self.coords[i].mul_ref(q)) }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Matrix of multiplication by `self`; column `j` holds `self * basis_j`.
    pub fn multiplication_matrix(&self) -> [[Q; DEGREE]; DEGREE] {
        let cols: Vec<Self> = (0..DEGREE)
            .map(|j| self.mul_ref(&Self::basis(j % 2, j / 2)))
            .collect();
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j].coords[i].clone()))
    }

    pub fn try_inv(&self) -> Result<Self, FieldError> {
        self.inv().ok_or(FieldError::DivisionByZero)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&rhs.try_inv()?))
    }

    /// The six coordinates as `"num/den"` strings in basis order.
    pub fn to_strings(&self) -> [String; DEGREE] {
        std::array::from_fn(|i| self.coords[i].to_fraction_string())
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self, FieldError> {
        if parts.len() != DEGREE {
            return Err(FieldError::WrongArity(parts.len()));
        }
        let mut coords: [Q; DEGREE] = std::array::from_fn(|_| Q::zero());
        for (slot, part) in coords.iter_mut().zip(parts) {
            let part = part.as_ref().trim().trim_matches('"');
            *slot = Q::parse_fraction(part).ok_or_else(|| FieldError::BadCoordinate(part.to_string()))?;
        }
        Ok(Self { coords })
    }

    /// Bracketed form `[n/d,n/d,n/d,n/d,n/d,n/d]` used inside polynomial text.
    pub fn to_bracketed(&self) -> String {
        format!("[{}]", self.to_strings().join(","))
    }

    pub fn parse_bracketed(s: &str) -> Result<Self, FieldError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| FieldError::BadCoordinate(s.to_string()))?;
        let parts: Vec<&str> = inner.split(',').collect();
        Self::from_strings(&parts)
    }

    fn zero_array() -> [Q; DEGREE] {
        std::array::from_fn(|_| Q::zero())
    }
}

/// Solves `m * x = rhs` over an exact field by Gaussian elimination.
/// Returns `None` when `m` is singular.
pub(crate) fn solve_dense<Q: Field>(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inv()?;
        for c in col..n {
            m[col][c] = m[col][c].mul_ref(&inv);
        }
        rhs[col] = rhs[col].mul_ref(&inv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let t = factor.mul_ref(&m[col][c]);
                m[r][c] = m[r][c].sub_ref(&t);
            }
            let t = factor.mul_ref(&rhs[col]);
            rhs[r] = rhs[r].sub_ref(&t);
        }
    }
    Some(rhs)
}

impl<Q: BaseField> Zero for Tower<Q> {
    fn zero() -> Self {
        Self { coords: Self::zero_array() }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl<Q: BaseField> One for Tower<Q> {
    fn one() -> Self {
        Self::from_base(Q::one())
    }
}

impl<Q: BaseField> Ring for Tower<Q> {
    fn from_i64(n: i64) -> Self {
        Self::from_base(Q::from_i64(n))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self { coords: std::array::from_fn(|i| self.coords[i].add_ref(&rhs.coords[i])) }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self { coords: std::array::from_fn(|i| self.coords[i].sub_ref(&rhs.coords[i])) }
    }

    fn neg_ref(&self) -> Self {
        Self { coords: std::array::from_fn(|i| self.coords[i].neg_ref()) }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self { coords: mul_coords(&self.coords, &rhs.coords) }
    }
}

/// Product of two coordinate vectors in the basis
/// `(1, eps, mu, eps*mu, mu^2, eps*mu^2)`; needs only ring operations.
pub fn mul_coords<Q: Ring>(lhs: &[Q; DEGREE], rhs: &[Q; DEGREE]) -> [Q; DEGREE] {
    // acc[e][m] collects eps^e * mu^m for e <= 2, m <= 4 before reduction.
    let mut acc: [[Q; 5]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()));
    for (i, a) in lhs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in rhs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let cell = &mut acc[i % 2 + j % 2][i / 2 + j / 2];
            *cell = cell.add_ref(&a.mul_ref(b));
        }
    }
    // mu^3 = 2
    for row in acc.iter_mut() {
        for m in 3..5 {
            if !row[m].is_zero() {
                let carry = row[m].mul_i64(2);
                row[m - 3] = row[m - 3].add_ref(&carry);
            }
        }
    }
    // eps^2 = -1 - eps
    for m in 0..3 {
        if !acc[2][m].is_zero() {
            let t = acc[2][m].clone();
            acc[0][m] = acc[0][m].sub_ref(&t);
            acc[1][m] = acc[1][m].sub_ref(&t);
        }
    }
    std::array::from_fn(|i| std::mem::replace(&mut acc[i % 2][i / 2], Q::zero()))
}

impl<Q: BaseField> Tower<Q> {
    /// The inverse from the 6x6 linear system `x * y = 1`; slower than
    /// [`Field::inv`] and kept as an independent check of it.
    pub fn inv_by_solve(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.multiplication_matrix().into_iter().map(Vec::from).collect();
        let mut rhs = vec![Q::zero(); DEGREE];
        rhs[0] = Q::one();
        let x = solve_dense(m, rhs)?;
        let mut coords = Self::zero_array();
        for (slot, v) in coords.iter_mut().zip(x) {
            *slot = v;
        }
        Some(Self { coords })
    }
}

impl<Q: BaseField> Field for Tower<Q> {
    /// Writing `x = u + v*eps` with `u, v` in `Q(mu)`,
    /// `1/x = (u + v*eps^2) / (u^2 - u v + v^2)`, and `a + b mu + c mu^2` is
    /// inverted in `Q(mu)` through its norm `a^3 + 2b^3 + 4c^3 - 6abc`.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_base() {
            return q.inv().map(Self::from_base);
        }
        let c = &self.coords;
        // u + v eps^2 = (u - v) - v eps
        let conj = Self { coords: [
            c[0].sub_ref(&c[1]), c[1].neg_ref(),
            c[2].sub_ref(&c[3]), c[3].neg_ref(),
            c[4].sub_ref(&c[5]), c[5].neg_ref(),
        ] };
        let d = self.mul_ref(&conj);
        debug_assert!(d.coords[1].is_zero() && d.coords[3].is_zero() && d.coords[5].is_zero());
        let (a, b, cc) = (&d.coords[0], &d.coords[2], &d.coords[4]);
        let two = Q::from_i64(2);
        let adj0 = a.mul_ref(a).sub_ref(&two.mul_ref(&b.mul_ref(cc)));
        let adj1 = two.mul_ref(&cc.mul_ref(cc)).sub_ref(&a.mul_ref(b));
        let adj2 = b.mul_ref(b).sub_ref(&a.mul_ref(cc));
        let norm = a.mul_ref(&adj0).add_ref(&two.mul_ref(&b.mul_ref(&adj2))).add_ref(&two.mul_ref(&cc.mul_ref(&adj1)));
        let k = norm.inv()?;
        let mut d_inv = Self::zero_array();
        d_inv[0] = adj0.mul_ref(&k);
        d_inv[2] = adj1.mul_ref(&k);
        d_inv[4] = adj2.mul_ref(&k);
        Some(conj.mul_ref(&Self { coords: d_inv }))
    }
}

impl<Q: BaseField> Add for Tower<Q> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<Q: BaseField> Sub for Tower<Q> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<Q: BaseField> Mul for Tower<Q> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<Q: BaseField> Neg for Tower<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<'a, Q: BaseField> Add<&'a Tower<Q>> for &'a Tower<Q> {
    type Output = Tower<Q>;
    fn add(self, rhs: &'a Tower<Q>) -> Tower<Q> {
        self.add_ref(rhs)
    }
}

impl<'a, Q: BaseField> Sub<&'a Tower<Q>> for &'a Tower<Q> {
    type Output = Tower<Q>;
    fn sub(self, rhs: &'a Tower<Q>) -> Tower<Q> {
        self.sub_ref(rhs)
    }
}

impl<'a, Q: BaseField> Mul<&'a Tower<Q>> for &'a Tower<Q> {
    type Output = Tower<Q>;
    fn mul(self, rhs: &'a Tower<Q>) -> Tower<Q> {
        self.mul_ref(rhs)
    }
}

impl<Q: BaseField> From<i64> for Tower<Q> {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl<Q: BaseField> fmt::Debug for Tower<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Readable sum form, e.g. `-1/2*mu^2 + eps*mu`.
impl<Q: BaseField> fmt::Display for Tower<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, name) in self.coords.iter().zip(BASIS_NAMES) {
            if c.is_zero() {
                continue;
            }
            if name == "1" {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(name.to_string());
            } else if (-c.clone()).is_one() {
                parts.push(format!("-{name}"));
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

impl<Q: BaseField> Serialize for Tower<Q> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(DEGREE))?;
        for s in self.to_strings() {
            seq.serialize_element(&s)?;
        }
        seq.end()
    }
}

impl<'de, Q: BaseField> Deserialize<'de> for Tower<Q> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TowerVisitor<Q>(std::marker::PhantomData<Q>);

        impl<'de, Q: BaseField> Visitor<'de> for TowerVisitor<Q> {
            type Value = Tower<Q>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of {DEGREE} \"num/den\" strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Tower<Q>, A::Error> {
                let mut parts: Vec<String> = Vec::with_capacity(DEGREE);
                while let Some(s) = seq.next_element::<String>()? {
                    parts.push(s);
                }
                Tower::from_strings(&parts).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(TowerVisitor(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{FieldElement, Rational};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn eps() -> FieldElement {
        FieldElement::eps()
    }

    fn mu() -> FieldElement {
        FieldElement::mu()
    }

    #[test]
    fn eps_squared_reduces() {
        let expected = FieldElement::from_i64(-1) - eps();
        assert_eq!(eps() * eps(), expected);
    }

    #[test]
    fn mu_cubed_is_two() {
        assert_eq!(mu() * (mu() * mu()), FieldElement::from_i64(2));
    }

    #[test]
    fn generator_identities() {
        let one = FieldElement::one();
        assert_eq!(eps().pow(3), one);
        assert_ne!(eps(), one);
        assert_eq!(mu().pow(3).coords(), FieldElement::from_i64(2).coords());
        // 1 + eps + eps^2 = 0
        assert!((one + eps() + eps().pow(2)).is_zero());
    }

    #[test]
    fn distributes_both_ways() {
        let a = FieldElement::one() + eps();
        let m2 = mu() * mu();
        let left = &m2 + &(&eps() * &m2);
        let right = &a * &m2;
        let right2 = &m2 * &a;
        assert_eq!(left, right);
        assert_eq!(right, right2);
    }

    #[test]
    fn inverse_examples() {
        let inv_mu = mu().inv().unwrap();
        assert_eq!(inv_mu, (mu() * mu()).scale(&q(1, 2)));
        let inv_eps = eps().inv().unwrap();
        assert_eq!(inv_eps, FieldElement::from_i64(-1) - eps());
        let a = FieldElement::one() + mu();
        let b = a.inv().unwrap();
        assert_eq!(a.clone() * b.clone(), FieldElement::one());
        assert_eq!(a.inv_by_solve(), Some(b));
        let c = FieldElement::parse_expr("3 - 2*eps*mu + 1/5*mu^2 - eps").unwrap();
        assert_eq!(c.inv(), c.inv_by_solve());
        assert_eq!(FieldElement::zero().try_inv(), Err(FieldError::DivisionByZero));
        assert_eq!(FieldElement::zero().inv_by_solve(), None);
    }

    #[test]
    fn classification() {
        assert_eq!(FieldElement::zero().classify(), Classification::Zero);
        let half_mu2 = (mu() * mu()).scale(&q(-1, 2));
        assert_eq!(half_mu2.classify(), Classification::Irrational);
        assert_eq!(FieldElement::from_i64(7).classify(), Classification::RationalInteger);
        assert_eq!(FieldElement::from_base(q(7, 2)).classify(), Classification::Rational);
    }

    #[test]
    fn string_round_trip() {
        let a = (mu() * mu()).scale(&q(-1, 2)) + eps().scale(&q(3, 7));
        let s = a.to_strings();
        assert_eq!(s[0], "0/1");
        assert_eq!(s[1], "3/7");
        assert_eq!(s[4], "-1/2");
        assert_eq!(FieldElement::from_strings(&s).unwrap(), a);
        assert_eq!(FieldElement::parse_bracketed(&a.to_bracketed()).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["0/1","3/7","0/1","0/1","-1/2","0/1"]"#);
        let back: FieldElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldElement::from_strings(&["1"]), Err(FieldError::WrongArity(1)));
        assert!(FieldElement::from_strings(&["1", "x", "0", "0", "0", "0"]).is_err());
        assert!(FieldElement::from_strings(&["1/0", "0", "0", "0", "0", "0"]).is_err());
    }

    #[test]
    fn generic_over_small_rationals() {
        type Small = Tower<num_rational::Ratio<i64>>;
        let e = Small::eps();
        assert_eq!(e.pow(3), Small::one());
        let m = Small::mu();
        assert_eq!(m.inv().unwrap() * m, Small::one());
    }

    #[test]
    fn display_is_readable() {
        let a = (mu() * mu()).scale(&q(-1, 2)) + eps();
        assert_eq!(a.to_string(), "eps - 1/2*mu^2");
    }
}
