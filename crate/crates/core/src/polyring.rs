//! Sparse homogeneous polynomials in `x, y, z`, with partial derivatives,
//! small determinants and exact evaluation.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent triples ordered
//! lexicographically with `x > y > z`; since every stored triple has the same
//! total degree this is the graded-lex order, so iteration and text output are
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactfield::Tower;
use crate::scalar::{BaseField, Field, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree mismatch: {left:?} vs {right:?}")]
    DegreeMismatch { left: Option<u32>, right: Option<u32> },
    #[error("terms of different total degree")]
    Inhomogeneous,
    #[error("matrix must be 3x3 or 4x4, got {rows}x{cols}")]
    BadDimension { rows: usize, cols: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("vanishing order exceeded the degree guard {0}")]
    OrderGuard(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// Exponent triple `(i, j, k)` of `x^i y^j z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq)]
pub struct HomPoly<C> {
    degree: Option<u32>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> HomPoly<C> {
    pub fn zero() -> Self {
        Self { degree: None, terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: C, exps: [u32; 3]) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.degree = Some(exps.iter().sum());
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(C::one(), e)
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[C; 3]) -> Self {
        let mut p = Self::zero();
        for (v, c) in Var::ALL.into_iter().zip(coeffs) {
            p.accumulate(
                Monomial({
                    let mut e = [0; 3];
                    e[v.index()] = 1;
                    e
                }),
                c.clone(),
            );
        }
        p.refresh_degree();
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; equal
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (C, [u32; 3])>>(terms: I) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.accumulate(Monomial(e), c);
        }
        let mut degrees = p.terms.keys().map(Monomial::degree);
        if let Some(d) = degrees.next() {
            if degrees.any(|e| e != d) {
                return Err(PolyError::Inhomogeneous);
            }
        }
        p.refresh_degree();
        Ok(p)
    }

    fn accumulate(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.add_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn refresh_degree(&mut self) {
        self.degree = self.terms.keys().next().map(Monomial::degree);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: [u32; 3]) -> Option<&C> {
        self.terms.get(&Monomial(exps))
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    fn check_degrees(&self, rhs: &Self) -> Result<(), PolyError> {
        match (self.degree, rhs.degree) {
            (Some(a), Some(b)) if a != b => Err(PolyError::DegreeMismatch { left: Some(a), right: Some(b) }),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_degrees(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out.refresh_degree();
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_degrees(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.neg_ref());
        }
        out.refresh_degree();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = Monomial([ma.0[0] + mb.0[0], ma.0[1] + mb.0[1], ma.0[2] + mb.0[2]]);
                out.accumulate(e, ca.mul_ref(cb));
            }
        }
        out.refresh_degree();
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.accumulate(*m, a.mul_ref(c));
        }
        out.refresh_degree();
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(C::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.accumulate(Monomial(e), c.mul_i64(i64::from(m.0[i])));
        }
        out.refresh_degree();
        out
    }

    pub fn gradient(&self) -> [Self; 3] {
        Var::ALL.map(|v| self.derivative(v))
    }

    /// `d^a/dx^a d^b/dy^b d^c/dz^c`.
    pub fn partial(&self, orders: [u32; 3]) -> Self {
        let mut p = self.clone();
        for (v, &n) in Var::ALL.iter().zip(&orders) {
            for _ in 0..n {
                p = p.derivative(*v);
            }
        }
        p
    }

    pub fn evaluate(&self, pt: &[C; 3]) -> C {
        let Some(d) = self.degree else {
            return C::zero();
        };
        let powers: Vec<Vec<C>> = pt
            .iter()
            .map(|x| {
                let mut pw = Vec::with_capacity(d as usize + 1);
                pw.push(C::one());
                for k in 1..=d as usize {
                    let next = pw[k - 1].mul_ref(x);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let t = c
                .mul_ref(&powers[0][m.0[0] as usize])
                .mul_ref(&powers[1][m.0[1] as usize])
                .mul_ref(&powers[2][m.0[2] as usize]);
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes `(x, y, z) -> (v[perm[0]], v[perm[1]], v[perm[2]])`, i.e.
    /// variable `i` is replaced by variable `perm[i]`.
    pub fn permute_vars(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = [0; 3];
            for i in 0..3 {
                e[perm[i]] += m.0[i];
            }
            out.accumulate(Monomial(e), c.clone());
        }
        out.refresh_degree();
        out
    }

    /// Smallest `m` such that some order-`m` partial derivative is nonzero at
    /// `pt`.
    pub fn vanishing_order(&self, pt: &[C; 3]) -> Result<u32, PolyError> {
        let d = self.degree.ok_or(PolyError::ZeroPolynomial)?;
        let mut level: BTreeMap<[u32; 3], Self> = BTreeMap::from([([0, 0, 0], self.clone())]);
        for m in 0..=d + 1 {
            if level.values().any(|p| !p.evaluate(pt).is_zero()) {
                return Ok(m);
            }
            let mut next = BTreeMap::new();
            for (orders, p) in &level {
                for v in Var::ALL {
                    let mut o = *orders;
                    o[v.index()] += 1;
                    next.entry(o).or_insert_with(|| p.derivative(v));
                }
            }
            level = next;
        }
        Err(PolyError::OrderGuard(d + 1))
    }
}

impl<C: Field> HomPoly<C> {
    /// `Some(lambda)` with `self = lambda * other`, `lambda != 0`.
    pub fn proportional(&self, other: &Self) -> Option<C> {
        if self.is_zero() || other.is_zero() {
            return (self.is_zero() && other.is_zero()).then(C::one);
        }
        if self.terms.len() != other.terms.len() || self.degree != other.degree {
            return None;
        }
        let (m, a) = self.leading()?;
        let b = other.terms.get(m)?;
        let lambda = a.div_ref(b)?;
        for (m, a) in &self.terms {
            let b = other.terms.get(m)?;
            if *a != b.mul_ref(&lambda) {
                return None;
            }
        }
        Some(lambda)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }
}

impl<C: fmt::Debug> fmt::Debug for HomPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c:?})*x^{}*y^{}*z^{}", m.0[0], m.0[1], m.0[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Grid of polynomials, 3x3 or 4x4.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C> {
    rows: Vec<Vec<HomPoly<C>>>,
}

impl<C: Ring> PolyMatrix<C> {
    pub fn new(rows: Vec<Vec<HomPoly<C>>>) -> Result<Self, PolyError> {
        let n = rows.len();
        let bad = rows.iter().find(|r| r.len() != n).map(Vec::len);
        if !(n == 3 || n == 4) || bad.is_some() {
            return Err(PolyError::BadDimension { rows: n, cols: bad.unwrap_or(n) });
        }
        Ok(Self { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly<C> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<HomPoly<C>>] {
        &self.rows
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    pub fn scale_row(&mut self, i: usize, c: &C) {
        for p in &mut self.rows[i] {
            *p = p.scale(c);
        }
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> Result<HomPoly<C>, PolyError> {
        let idx: Vec<usize> = (0..self.size()).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Result<HomPoly<C>, PolyError> {
        if cols.len() == 1 {
            return Ok(self.rows[row][cols[0]].clone());
        }
        let mut acc = HomPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let entry = &self.rows[row][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor_det(row + 1, &rest)?;
            let term = entry.mul(&sub);
            acc = if k % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
        }
        Ok(acc)
    }
}

impl<C: fmt::Debug> fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// Matrix of second partials.
pub fn hessian_matrix<C: Ring>(p: &HomPoly<C>) -> PolyMatrix<C> {
    let grad = p.gradient();
    let rows = grad.iter().map(|g| g.gradient().to_vec()).collect();
    PolyMatrix::new(rows).expect("3x3 by construction")
}

/// `det` of the matrix whose rows are the gradients of `f`, `g` and the given
/// third row.
pub fn jacobian_with_row<C: Ring>(f: &HomPoly<C>, g: &HomPoly<C>, third: &[HomPoly<C>; 3]) -> Result<HomPoly<C>, PolyError> {
    PolyMatrix::new(vec![f.gradient().to_vec(), g.gradient().to_vec(), third.to_vec()])?.det()
}

/// `Jac(f, g, h)`.
pub fn jacobian<C: Ring>(f: &HomPoly<C>, g: &HomPoly<C>, h: &HomPoly<C>) -> Result<HomPoly<C>, PolyError> {
    jacobian_with_row(f, g, &h.gradient())
}

// Text format: "<coeff>*x^i*y^j*z^k" terms joined by " + ".

impl<Q: BaseField> fmt::Display for HomPoly<Tower<Q>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*x^{}*y^{}*z^{}", c.to_bracketed(), m.0[0], m.0[1], m.0[2])?;
        }
        Ok(())
    }
}

fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' if depth == 0 => terms.push(std::mem::take(&mut cur)),
            '-' if depth == 0 => {
                let t = cur.trim_end();
                if t.is_empty() || t.ends_with('*') || t.ends_with('^') || t.ends_with('/') {
                    cur.push(ch);
                } else {
                    terms.push(std::mem::take(&mut cur));
                    cur.push('-');
                }
            }
            c if c.is_whitespace() => {}
            _ => cur.push(ch),
        }
    }
    terms.push(cur);
    terms.into_iter().filter(|t| !t.is_empty()).collect()
}

fn parse_term<Q: BaseField>(term: &str) -> Result<(Tower<Q>, [u32; 3]), PolyError> {
    let (negate, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term),
    };
    let mut coeff = Tower::<Q>::from_i64(1);
    let mut exps = [0u32; 3];
    for factor in body.split('*') {
        let bad = || PolyError::Parse(format!("bad factor {factor:?} in term {term:?}"));
        if factor.starts_with('[') {
            coeff = coeff.mul_ref(&Tower::parse_bracketed(factor).map_err(|_| bad())?);
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        match name {
            "x" => exps[0] += power,
            "y" => exps[1] += power,
            "z" => exps[2] += power,
            _ => {
                if factor.contains('^') {
                    return Err(bad());
                }
                let q = Q::parse_fraction(factor).ok_or_else(bad)?;
                coeff = coeff.scale(&q);
            }
        }
    }
    if negate {
        coeff = coeff.neg_ref();
    }
    Ok((coeff, exps))
}

impl<Q: BaseField> FromStr for HomPoly<Tower<Q>> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let terms = split_terms(s);
        if terms.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let parsed = terms.iter().map(|t| parse_term::<Q>(t)).collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{FieldElement, Poly};
    use num_traits::Zero;

    fn x() -> Poly {
        Poly::var(Var::X)
    }
    fn y() -> Poly {
        Poly::var(Var::Y)
    }
    fn z() -> Poly {
        Poly::var(Var::Z)
    }
    fn k(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn fermat() -> Poly {
        x().pow(3).try_add(&y().pow(3)).unwrap().try_add(&z().pow(3)).unwrap()
    }

    fn witness() -> Poly {
        let a = x().pow(3).try_sub(&y().pow(3)).unwrap();
        let b = y().pow(3).try_sub(&z().pow(3)).unwrap();
        let c = z().pow(3).try_sub(&x().pow(3)).unwrap();
        a.mul(&b).mul(&c)
    }

    #[test]
    fn cancellation_and_products() {
        assert!(fermat().try_sub(&fermat()).unwrap().is_zero());
        let xyz = x().mul(&y()).mul(&z());
        assert_eq!(xyz, Poly::monomial(k(1), [1, 1, 1]));
        assert_eq!(
            x().try_add(&x().mul(&y())),
            Err(PolyError::DegreeMismatch { left: Some(1), right: Some(2) })
        );
        assert_eq!(Poly::zero().try_add(&xyz).unwrap(), xyz);
    }

    #[test]
    fn witness_expansion_has_six_integer_terms() {
        let w = witness();
        assert_eq!(w.degree(), Some(9));
        // 8 sign products; the two x^3 y^3 z^3 ones cancel.
        assert_eq!(w.num_terms(), 6);
        assert_eq!(w.coefficient([6, 0, 3]), Some(&k(1)));
        assert_eq!(w.coefficient([6, 3, 0]), Some(&k(-1)));
        assert!(w.terms().all(|(_, c)| c.classify() == crate::exactfield::Classification::RationalInteger));
        assert_eq!(w.coefficient([3, 3, 3]), None);
    }

    #[test]
    fn derivatives() {
        let f = fermat();
        assert_eq!(f.derivative(Var::X), Poly::monomial(k(3), [2, 0, 0]));
        let euler = Var::ALL
            .iter()
            .map(|&v| Poly::var(v).mul(&f.derivative(v)))
            .try_fold(Poly::zero(), |acc, t| acc.try_add(&t))
            .unwrap();
        assert_eq!(euler, f.scale(&k(3)));
        let xyz = x().mul(&y()).mul(&z());
        assert!(xyz.derivative(Var::X).derivative(Var::X).is_zero());
    }

    #[test]
    fn determinants() {
        let one = Poly::constant(k(1));
        let zero = Poly::zero();
        let id = PolyMatrix::new(vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ])
        .unwrap();
        assert_eq!(id.det().unwrap(), one);
        let dup = PolyMatrix::new(vec![
            vec![x(), y(), z()],
            vec![x(), y(), z()],
            vec![y(), z(), x()],
        ])
        .unwrap();
        assert!(dup.det().unwrap().is_zero());
        let hess = hessian_matrix(&fermat()).det().unwrap();
        assert_eq!(hess, Poly::monomial(k(216), [1, 1, 1]));
        assert_eq!(
            PolyMatrix::new(vec![vec![x(), y()], vec![y(), x()]]).unwrap_err(),
            PolyError::BadDimension { rows: 2, cols: 2 }
        );
        assert!(PolyMatrix::new(vec![vec![x(), y(), z()], vec![x(), y()], vec![x(), y(), z()]]).is_err());
    }

    #[test]
    fn evaluation() {
        let f = fermat();
        assert!(f.evaluate(&[k(1), k(-1), k(0)]).is_zero());
        let mu = FieldElement::mu();
        assert!(f.evaluate(&[k(1), mu.neg_ref(), k(1)]).is_zero());
        let xyz = x().mul(&y()).mul(&z());
        assert_eq!(xyz.evaluate(&[k(1), k(1), k(1)]), k(1));
    }

    #[test]
    fn proportionality() {
        let xyz = x().mul(&y()).mul(&z());
        assert_eq!(xyz.scale(&k(2)).proportional(&xyz), Some(k(2)));
        assert_eq!(xyz.proportional(&x().pow(2).mul(&y())), None);
        assert_eq!(xyz.proportional(&Poly::zero()), None);
    }

    #[test]
    fn vanishing_orders() {
        let xyz = x().mul(&y()).mul(&z());
        assert_eq!(xyz.vanishing_order(&[k(1), k(1), k(1)]).unwrap(), 0);
        let x2y = x().pow(2).mul(&y());
        assert_eq!(x2y.vanishing_order(&[k(0), k(0), k(1)]).unwrap(), 3);
        assert_eq!(Poly::zero().vanishing_order(&[k(0), k(0), k(1)]), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn text_round_trip_and_shorthand() {
        let w = witness();
        let text = w.to_string();
        assert_eq!(text.parse::<Poly>().unwrap(), w);
        let f: Poly = "x^3 + y^3 + z^3".parse().unwrap();
        assert_eq!(f, fermat());
        let g: Poly = "3*x^2*y^0*z^1 - 1/2*x*y*z + [0/1,1/1,0/1,0/1,0/1,0/1]*z^3".parse().unwrap();
        assert_eq!(g.num_terms(), 3);
        assert_eq!(g.coefficient([1, 1, 1]), Some(&FieldElement::from_base(crate::Rational::new((-1).into(), 2.into()))));
        assert_eq!(g.coefficient([0, 0, 3]), Some(&FieldElement::eps()));
        assert!("x^2 + y".parse::<Poly>().is_err());
        assert!("x^2 + q".parse::<Poly>().is_err());
        assert!("0".parse::<Poly>().unwrap().is_zero());
    }

    #[test]
    fn permutation() {
        let p = x().pow(2).mul(&y());
        assert_eq!(p.permute_vars([1, 2, 0]), y().pow(2).mul(&z()));
    }
}
