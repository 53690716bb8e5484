//! `Z[eps, mu]`-style elements over a base ring without division.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{mul_coords, Tower, DEGREE};
use crate::scalar::{BaseField, Ring};

/// Same basis and multiplication as [`Tower`], over any base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntTower<R> {
    coords: [R; DEGREE],
}

impl<R: Ring> IntTower<R> {
    pub fn from_coords(coords: [R; DEGREE]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[R; DEGREE] {
        &self.coords
    }

    /// Coordinate-wise conversion from a field element; `None` if some
    /// coordinate has no image.
    pub fn convert<Q: BaseField>(x: &Tower<Q>, f: impl Fn(&Q) -> Option<R>) -> Option<Self> {
        let mut out: [Option<R>; DEGREE] = std::array::from_fn(|_| None);
        for (slot, q) in out.iter_mut().zip(x.coords()) {
            *slot = Some(f(q)?);
        }
        Some(Self { coords: out.map(|c| c.expect("filled above")) })
    }

    pub fn to_tower<Q: BaseField>(&self, f: impl Fn(&R) -> Q) -> Tower<Q> {
        Tower::from_coords(std::array::from_fn(|i| f(&self.coords[i])))
    }
}

impl<R: Ring> Zero for IntTower<R> {
    fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| R::zero()) }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl<R: Ring> One for IntTower<R> {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl<R: Ring> Ring for IntTower<R> {
    fn from_i64(n: i64) -> Self {
        let mut coords: [R; DEGREE] = std::array::from_fn(|_| R::zero());
        coords[0] = R::from_i64(n);
        Self { coords }
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

impl<R: Ring> Add for IntTower<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<R: Ring> Sub for IntTower<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<R: Ring> Mul for IntTower<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<R: Ring> Neg for IntTower<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::scalar::CheckedInt;
    use crate::{FieldElement, Rational};

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse_expr(s).unwrap()
    }

    #[test]
    fn agrees_with_the_field() {
        let a = fe("3 - 2*eps + 5*mu^2 - 7*eps*mu");
        let b = fe("-1 + 4*eps*mu^2 + mu");
        let to_big = |q: &Rational| q.is_integer().then(|| q.to_integer());
        let ia = IntTower::<BigInt>::convert(&a, to_big).unwrap();
        let ib = IntTower::<BigInt>::convert(&b, to_big).unwrap();
        assert_eq!(ia.mul_ref(&ib).to_tower(|n| Rational::from_integer(n.clone())), a.mul_ref(&b));
        assert!(IntTower::<BigInt>::convert(&fe("1/2"), to_big).is_none());
    }

    #[test]
    fn checked_overflow_poisons() {
        let big = IntTower::from_coords([CheckedInt::new(i128::MAX / 2), CheckedInt::new(0), CheckedInt::new(0), CheckedInt::new(0), CheckedInt::new(0), CheckedInt::new(0)]);
        let sq = big.mul_ref(&big);
        assert!(sq.coords()[0].is_poisoned());
        let small = IntTower::<CheckedInt>::from_i64(3);
        assert_eq!(small.mul_ref(&small), IntTower::from_i64(9));
    }
}
