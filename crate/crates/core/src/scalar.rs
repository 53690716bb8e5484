//! Scalar traits shared by the field tower and the polynomial ring.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A commutative ring with exact equality.
///
/// The `*_ref` methods exist so that generic code can combine borrowed values
/// without cloning; every implementation must agree with the owned operators.
pub trait Ring: Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Send + Sync {
    fn from_i64(n: i64) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn neg_ref(&self) -> Self {
        Self::zero().sub_ref(self)
    }

    fn mul_i64(&self, n: i64) -> Self {
        self.mul_ref(&Self::from_i64(n))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

/// An exact prime-field-like base (in practice: the rationals) under the
/// extension tower.
pub trait BaseField: Field + Eq + Hash + Display {
    fn is_integer(&self) -> bool;
    /// Always `"num/den"`, even for integers.
    fn to_fraction_string(&self) -> String;
    /// Accepts `"n/d"` or `"n"`.
    fn parse_fraction(s: &str) -> Option<Self>;
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Send + Sync,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for base type"))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Send + Sync,
{
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl<T> BaseField for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Display + FromStr + Hash + Send + Sync,
{
    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_fraction(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: T = n.trim().parse().ok()?;
                let d: T = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => s.parse().ok().map(Ratio::from_integer),
        }
    }
}

impl Ring for num_bigint::BigInt {
    fn from_i64(n: i64) -> Self {
        n.into()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

/// A 128-bit integer that becomes a poison value on overflow instead of
/// wrapping. Poison absorbs every later operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CheckedInt(Option<i128>);

impl CheckedInt {
    pub fn new(v: i128) -> Self {
        Self(Some(v))
    }

    pub fn get(self) -> Option<i128> {
        self.0
    }

    pub fn is_poisoned(self) -> bool {
        self.0.is_none()
    }

    fn lift(a: Self, b: Self, op: fn(i128, i128) -> Option<i128>) -> Self {
        Self(a.0.zip(b.0).and_then(|(x, y)| op(x, y)))
    }
}

impl std::ops::Add for CheckedInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::lift(self, rhs, i128::checked_add)
    }
}

impl std::ops::Mul for CheckedInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::lift(self, rhs, i128::checked_mul)
    }
}

impl Neg for CheckedInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.and_then(i128::checked_neg))
    }
}

impl Zero for CheckedInt {
    fn zero() -> Self {
        Self(Some(0))
    }

    fn is_zero(&self) -> bool {
        self.0 == Some(0)
    }
}

impl One for CheckedInt {
    fn one() -> Self {
        Self(Some(1))
    }
}

impl Ring for CheckedInt {
    fn from_i64(n: i64) -> Self {
        Self(Some(n.into()))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::lift(*self, *rhs, i128::checked_sub)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
}
