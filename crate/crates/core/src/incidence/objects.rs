//! Points, lines and conics of the projective plane over `K`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::IncidenceError;
use crate::exactfield::sqrt;
use crate::linalg;
use crate::polyring::Var;
use crate::scalar::{Field, Ring};
use crate::{FieldElement, Poly};

type Triple = [FieldElement; 3];

fn normalize_last(v: Triple) -> Option<Triple> {
    let pivot = v.iter().rposition(|c| !c.is_zero())?;
    if v[pivot] == FieldElement::from_i64(1) {
        return Some(v);
    }
    let inv = v[pivot].inv()?;
    Some(v.map(|c| c.mul_ref(&inv)))
}

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        a[1].mul_ref(&b[2]).sub_ref(&a[2].mul_ref(&b[1])),
        a[2].mul_ref(&b[0]).sub_ref(&a[0].mul_ref(&b[2])),
        a[0].mul_ref(&b[1]).sub_ref(&a[1].mul_ref(&b[0])),
    ]
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

fn canonical_key(v: &[FieldElement]) -> String {
    serde_json::to_string(v).expect("field elements always serialize")
}

/// A point `(x : y : z)`, scaled so that its last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FieldElement; 3]", into = "[FieldElement; 3]")]
pub struct ProjPoint {
    coords: Triple,
}

impl ProjPoint {
    pub fn new(coords: Triple) -> Result<Self, IncidenceError> {
        normalize_last(coords).map(|coords| Self { coords }).ok_or(IncidenceError::ZeroVector)
    }

    pub fn from_i64(c: [i64; 3]) -> Self {
        Self::new(c.map(FieldElement::from_i64)).expect("nonzero integer point")
    }

    pub fn coords(&self) -> &Triple {
        &self.coords
    }

    /// A representative whose coordinates have no denominators.
    pub fn integral_coords(&self) -> Triple {
        let lcm = self
            .coords
            .iter()
            .flat_map(|c| c.coords().iter())
            .fold(num_bigint::BigInt::from(1), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let s = crate::Rational::from_integer(lcm);
        self.coords.clone().map(|c| c.scale(&s))
    }

    /// Serialized form used as the total order on points.
    pub fn canonical_key(&self) -> String {
        canonical_key(&self.coords)
    }

    pub fn on_curve(&self, f: &Poly) -> bool {
        f.evaluate(&self.coords).is_zero()
    }
}

impl TryFrom<Triple> for ProjPoint {
    type Error = IncidenceError;

    fn try_from(v: Triple) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<ProjPoint> for Triple {
    fn from(p: ProjPoint) -> Self {
        p.coords
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The line `a*x + b*y + c*z = 0`, normalized like a point.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FieldElement; 3]", into = "[FieldElement; 3]")]
pub struct Line {
    coeffs: Triple,
}

impl Line {
    pub fn new(coeffs: Triple) -> Result<Self, IncidenceError> {
        normalize_last(coeffs).map(|coeffs| Self { coeffs }).ok_or(IncidenceError::ZeroVector)
    }

    pub fn from_i64(c: [i64; 3]) -> Self {
        Self::new(c.map(FieldElement::from_i64)).expect("nonzero integer line")
    }

    pub fn coeffs(&self) -> &Triple {
        &self.coeffs
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self, IncidenceError> {
        Self::new(cross(p.coords(), q.coords())).map_err(|_| IncidenceError::DuplicatePoints)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coeffs, p.coords()).is_zero()
    }

    pub fn meet(&self, other: &Line) -> Result<ProjPoint, IncidenceError> {
        ProjPoint::new(cross(&self.coeffs, &other.coeffs)).map_err(|_| IncidenceError::DuplicateLines)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.coeffs)
    }

    /// Recovers a line from a nonzero linear form.
    pub fn from_poly(p: &Poly) -> Result<Self, IncidenceError> {
        if p.degree() != Some(1) {
            return Err(IncidenceError::WrongDegree { expected: 1, found: p.degree() });
        }
        let c = |e: [u32; 3]| p.coefficient(e).cloned().unwrap_or_else(FieldElement::zero);
        Self::new([c([1, 0, 0]), c([0, 1, 0]), c([0, 0, 1])])
    }

    /// Two distinct points spanning the line, taken among its intersections
    /// with the coordinate lines.
    pub fn points(&self) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for i in 0..3 {
            let mut e: Triple = std::array::from_fn(|_| FieldElement::zero());
            e[i] = FieldElement::from_i64(1);
            if let Ok(p) = ProjPoint::new(cross(&self.coeffs, &e)) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn canonical_key(&self) -> String {
        canonical_key(&self.coeffs)
    }
}

impl TryFrom<Triple> for Line {
    type Error = IncidenceError;

    fn try_from(v: Triple) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Line> for Triple {
    fn from(l: Line) -> Self {
        l.coeffs
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Exponents of the conic monomials in coefficient order
/// `x^2, y^2, z^2, xy, xz, yz`.
pub const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

/// The conic monomials evaluated at `p`.
pub fn conic_row(p: &Triple) -> [FieldElement; 6] {
    let [x, y, z] = p;
    [x.mul_ref(x), y.mul_ref(y), z.mul_ref(z), x.mul_ref(y), x.mul_ref(z), y.mul_ref(z)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum ConicClass {
    Smooth,
    /// `factors` is `None` when the two lines are not defined over `K`.
    TwoLines { factors: Option<[Line; 2]> },
    DoubleLine { line: Line },
}

impl ConicClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Smooth => "smooth",
            Self::TwoLines { .. } => "two_lines",
            Self::DoubleLine { .. } => "double_line",
        }
    }
}

/// `A x^2 + B y^2 + C z^2 + D xy + E xz + F yz`, scaled so that the first
/// nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FieldElement; 6]", into = "[FieldElement; 6]")]
pub struct Conic {
    coeffs: [FieldElement; 6],
}

impl Conic {
    pub fn new(coeffs: [FieldElement; 6]) -> Result<Self, IncidenceError> {
        let pivot = coeffs.iter().position(|c| !c.is_zero()).ok_or(IncidenceError::ZeroVector)?;
        if coeffs[pivot] == FieldElement::from_i64(1) {
            return Ok(Self { coeffs });
        }
        let inv = coeffs[pivot].inv().ok_or(IncidenceError::ZeroVector)?;
        Ok(Self { coeffs: coeffs.map(|c| c.mul_ref(&inv)) })
    }

    pub fn coeffs(&self) -> &[FieldElement; 6] {
        &self.coeffs
    }

    pub fn from_poly(p: &Poly) -> Result<Self, IncidenceError> {
        if p.degree() != Some(2) {
            return Err(IncidenceError::WrongDegree { expected: 2, found: p.degree() });
        }
        Self::new(CONIC_MONOMIALS.map(|e| p.coefficient(e).cloned().unwrap_or_else(FieldElement::zero)))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().cloned().zip(CONIC_MONOMIALS)).expect("conic monomials are homogeneous")
    }

    pub fn evaluate(&self, p: &Triple) -> FieldElement {
        dot(&self.coeffs, &conic_row(p))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.evaluate(p.coords()).is_zero()
    }

    /// `[[A, D/2, E/2], [D/2, B, F/2], [E/2, F/2, C]]`.
    pub fn sym_matrix(&self) -> [[FieldElement; 3]; 3] {
        let half = crate::Rational::new(1.into(), 2.into());
        let h = |i: usize| self.coeffs[i].scale(&half);
        let [a, b, c, ..] = &self.coeffs;
        [[a.clone(), h(3), h(4)], [h(3), b.clone(), h(5)], [h(4), h(5), c.clone()]]
    }

    pub fn det(&self) -> FieldElement {
        let m = self.sym_matrix();
        let minor = |a: usize, b: usize| m[1][a].mul_ref(&m[2][b]).sub_ref(&m[1][b].mul_ref(&m[2][a]));
        m[0][0]
            .mul_ref(&minor(1, 2))
            .sub_ref(&m[0][1].mul_ref(&minor(0, 2)))
            .add_ref(&m[0][2].mul_ref(&minor(0, 1)))
    }

    pub fn rank(&self) -> usize {
        if !self.det().is_zero() {
            return 3;
        }
        let m: Vec<Vec<FieldElement>> = self.sym_matrix().iter().map(|r| r.to_vec()).collect();
        linalg::rank(&m)
    }

    /// Gradient of the conic form at `p`.
    pub fn gradient_at(&self, p: &Triple) -> Triple {
        let m = self.sym_matrix();
        std::array::from_fn(|i| dot(&m[i], p).mul_i64(2))
    }

    pub fn classify(&self) -> ConicClass {
        let rows: Vec<Vec<FieldElement>> = self.sym_matrix().iter().map(|r| r.to_vec()).collect();
        match self.rank() {
            3 => ConicClass::Smooth,
            2 => ConicClass::TwoLines { factors: self.split_lines(&rows) },
            _ => {
                let row = rows.iter().find(|r| r.iter().any(|c| !c.is_zero())).expect("conic is nonzero");
                let line = Line::new([row[0].clone(), row[1].clone(), row[2].clone()]).expect("nonzero row");
                ConicClass::DoubleLine { line }
            }
        }
    }

    /// For a rank-2 conic: the two lines through its singular point, found
    /// by cutting with a coordinate line that misses that point.
    fn split_lines(&self, rows: &[Vec<FieldElement>]) -> Option<[Line; 2]> {
        let kernel = linalg::nullspace(rows);
        let s: Triple = [kernel[0][0].clone(), kernel[0][1].clone(), kernel[0][2].clone()];
        let k = s.iter().position(|c| !c.is_zero())?;
        // parametrize the line x_k = 0 by the other two coordinates (u, v)
        let (iu, iv) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let embed = |u: FieldElement, v: FieldElement| {
            let mut p: Triple = std::array::from_fn(|_| FieldElement::zero());
            p[iu] = u;
            p[iv] = v;
            p
        };
        let one = FieldElement::from_i64(1);
        let zero = FieldElement::zero();
        let pu = embed(one.clone(), zero.clone());
        let pv = embed(zero.clone(), one.clone());
        let a = self.evaluate(&pu);
        let c = self.evaluate(&pv);
        let b = self.evaluate(&embed(one.clone(), one.clone())).sub_ref(&a).sub_ref(&c);
        let roots: [Triple; 2] = if a.is_zero() {
            // v * (b u + c v) = 0
            [pu, embed(c.neg_ref(), b)]
        } else {
            let disc = b.mul_ref(&b).sub_ref(&a.mul_ref(&c).mul_i64(4));
            let r = sqrt(&disc)?;
            let two_a = a.mul_i64(2);
            [
                embed(b.neg_ref().add_ref(&r), two_a.clone()),
                embed(b.neg_ref().sub_ref(&r), two_a),
            ]
        };
        let l1 = Line::new(cross(&s, &roots[0])).ok()?;
        let l2 = Line::new(cross(&s, &roots[1])).ok()?;
        debug_assert!(l1.to_poly().mul(&l2.to_poly()).proportional(&self.to_poly()).is_some());
        let mut pair = [l1, l2];
        pair.sort();
        Some(pair)
    }
}

impl TryFrom<[FieldElement; 6]> for Conic {
    type Error = IncidenceError;

    fn try_from(v: [FieldElement; 6]) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Conic> for [FieldElement; 6] {
    fn from(c: Conic) -> Self {
        c.coeffs
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conic({})", self.to_poly())
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// The gradient of `f` at `p`.
pub fn gradient_at(f: &Poly, p: &Triple) -> Triple {
    [Var::X, Var::Y, Var::Z].map(|v| f.derivative(v).evaluate(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse_expr(s).unwrap()
    }

    #[test]
    fn normalization_is_last_nonzero() {
        let p = ProjPoint::new([fe("2"), fe("4*eps"), fe("0")]).unwrap();
        assert_eq!(p.coords(), &[fe("1/2*eps^2"), fe("1"), fe("0")]);
        assert!(ProjPoint::new([fe("0"), fe("0"), fe("0")]).is_err());
        let q = ProjPoint::new([fe("mu"), fe("2*eps*mu"), fe("0")]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn line_through_and_meet() {
        let l = Line::through(&ProjPoint::from_i64([1, 0, 0]), &ProjPoint::from_i64([0, 1, 0])).unwrap();
        assert_eq!(l, Line::from_i64([0, 0, 1]));
        let m = Line::from_i64([1, 0, 0]);
        assert_eq!(l.meet(&m).unwrap(), ProjPoint::from_i64([0, 1, 0]));
        assert!(Line::through(&ProjPoint::from_i64([1, 2, 3]), &ProjPoint::from_i64([2, 4, 6])).is_err());
        assert_eq!(l.points().len(), 2);
    }

    #[test]
    fn classify_examples() {
        let c = Conic::new([fe("1"), fe("1"), fe("1"), fe("0"), fe("0"), fe("0")]).unwrap();
        assert_eq!(c.classify(), ConicClass::Smooth);
        let xy = Conic::new([fe("0"), fe("0"), fe("0"), fe("1"), fe("0"), fe("0")]).unwrap();
        let mut expected = [Line::from_i64([1, 0, 0]), Line::from_i64([0, 1, 0])];
        expected.sort();
        assert_eq!(xy.classify(), ConicClass::TwoLines { factors: Some(expected) });
        let xx = Conic::new([fe("1"), fe("0"), fe("0"), fe("0"), fe("0"), fe("0")]).unwrap();
        assert_eq!(xx.classify(), ConicClass::DoubleLine { line: Line::from_i64([1, 0, 0]) });
    }

    #[test]
    fn split_needs_field_square_root() {
        // x^2 + y^2 = (x + i y)(x - i y), i = (1 + 2 eps) / sqrt(3) is not in K
        let c = Conic::new([fe("1"), fe("1"), fe("0"), fe("0"), fe("0"), fe("0")]).unwrap();
        assert_eq!(c.classify(), ConicClass::TwoLines { factors: None });
        // x^2 + x y + y^2 = (x - eps y)(x - eps^2 y)
        let c = Conic::new([fe("1"), fe("1"), fe("0"), fe("1"), fe("0"), fe("0")]).unwrap();
        let ConicClass::TwoLines { factors: Some([a, b]) } = c.classify() else { panic!() };
        assert!(a.to_poly().mul(&b.to_poly()).proportional(&c.to_poly()).is_some());
        // (x + mu z)(y - eps z) with no coordinate alignment
        let l1 = Line::new([fe("1"), fe("0"), fe("mu")]).unwrap();
        let l2 = Line::new([fe("1"), fe("1"), fe("-eps")]).unwrap();
        let c = Conic::from_poly(&l1.to_poly().mul(&l2.to_poly())).unwrap();
        let mut expected = [l1, l2];
        expected.sort();
        assert_eq!(c.classify(), ConicClass::TwoLines { factors: Some(expected) });
    }

    #[test]
    fn conic_poly_round_trip_and_gradient() {
        let c = Conic::new([fe("1"), fe("2"), fe("3"), fe("4"), fe("5"), fe("6")]).unwrap();
        assert_eq!(Conic::from_poly(&c.to_poly()).unwrap(), c);
        let p = [fe("1"), fe("eps"), fe("mu")];
        assert_eq!(c.gradient_at(&p), gradient_at(&c.to_poly(), &p));
        assert_eq!(c.rank(), 3);
    }

    #[test]
    fn integral_representative() {
        let p = ProjPoint::new([fe("-1/2*mu^2"), fe("1/3*eps"), fe("1")]).unwrap();
        let v = p.integral_coords();
        assert!(v.iter().all(|c| c.coords().iter().all(|q| q.is_integer())));
        assert_eq!(ProjPoint::new(v).unwrap(), p);
    }
}
