//! Chord-tangent group law on a smooth plane cubic with a flex as origin,
//! torsion points, a level-6 structure and label-based counting oracles.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::fermat_cubic;
use crate::incidence::{cross, dot, ProjPoint};
use crate::scalar::Ring;
use crate::{FieldElement, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("point {0} is singular")]
    Singular(String),
    #[error("origin {0} is not a flex")]
    NotFlex(String),
    #[error("torsion order {0} is not supported")]
    UnsupportedTorsion(u32),
    #[error("no valid generator pair among the 6-torsion points")]
    GeneratorSearchFailed,
    #[error("generators do not give a bijection onto the 6-torsion")]
    NotBijective,
    #[error("labels are not additive at {0} + {1}")]
    NotHomomorphic(String, String),
}

/// A point known to lie on the curve it was created for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurvePoint(ProjPoint);

impl CurvePoint {
    pub fn point(&self) -> &ProjPoint {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct Curve {
    f: Poly,
    grad: [Poly; 3],
    origin: CurvePoint,
}

impl Curve {
    /// `f` must be a smooth cubic and `origin` a flex on it.
    pub fn new(f: Poly, origin: ProjPoint) -> Result<Self, GroupError> {
        let grad = f.gradient();
        let o = CurvePoint(origin.clone());
        let mut curve = Self { f, grad, origin: o.clone() };
        let o = curve.point(origin)?;
        if curve.third(&o, &o) != o {
            return Err(GroupError::NotFlex(o.0.to_string()));
        }
        curve.origin = o;
        Ok(curve)
    }

    /// The Fermat cubic with origin `(1 : -1 : 0)`.
    pub fn fermat() -> Self {
        Self::new(fermat_cubic(), ProjPoint::from_i64([1, -1, 0])).expect("(1:-1:0) is a flex of the Fermat cubic")
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn origin(&self) -> &CurvePoint {
        &self.origin
    }

    pub fn point(&self, p: ProjPoint) -> Result<CurvePoint, GroupError> {
        if !p.on_curve(&self.f) {
            return Err(GroupError::NotOnCurve(p.to_string()));
        }
        if self.gradient(p.coords()).iter().all(Zero::is_zero) {
            return Err(GroupError::Singular(p.to_string()));
        }
        Ok(CurvePoint(p))
    }

    fn gradient(&self, p: &[FieldElement; 3]) -> [FieldElement; 3] {
        std::array::from_fn(|i| self.grad[i].evaluate(p))
    }

    fn combine(a: &FieldElement, p: &[FieldElement; 3], b: &FieldElement, q: &[FieldElement; 3]) -> ProjPoint {
        ProjPoint::new(std::array::from_fn(|i| a.mul_ref(&p[i]).sub_ref(&b.mul_ref(&q[i]))))
            .expect("residual point of a smooth cubic is nonzero")
    }

    /// The third intersection of the chord `pq`, or of the tangent at `p`
    /// when `p = q`.
    pub fn third(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (pc, qc) = (p.0.coords(), q.0.coords());
        let r = if p != q {
            // G(s p + t q) = s t (c2 s + c1 t) once G(p) = G(q) = 0
            let c1 = dot(&self.gradient(qc), pc);
            let c2 = dot(&self.gradient(pc), qc);
            Self::combine(&c1, pc, &c2, qc)
        } else {
            let t = self.gradient(pc);
            let r = (0..3)
                .find_map(|i| {
                    let mut e: [FieldElement; 3] = std::array::from_fn(|_| FieldElement::zero());
                    e[i] = FieldElement::from_i64(1);
                    let r = cross(&t, &e);
                    let independent = cross(&r, pc).iter().any(|c| !c.is_zero());
                    independent.then_some(r)
                })
                .expect("a tangent line has two independent points");
            // G(s p + t r) = t^2 ((grad G(r) . p) s + G(r) t)
            let g = self.f.evaluate(&r);
            let c = dot(&self.gradient(&r), pc);
            Self::combine(&g, pc, &c, &r)
        };
        debug_assert!(r.on_curve(&self.f));
        debug_assert!(dot(&cross(pc, qc), r.coords()).is_zero());
        CurvePoint(r)
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.third(&self.origin, &self.third(p, q))
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        self.third(&self.origin, p)
    }

    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.origin.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn sum<'a>(&self, points: impl IntoIterator<Item = &'a CurvePoint>) -> CurvePoint {
        points.into_iter().fold(self.origin.clone(), |acc, p| self.add(&acc, p))
    }

    /// Smallest `k <= bound` with `k p = o`.
    pub fn order(&self, p: &CurvePoint, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for k in 1..=bound {
            if acc == self.origin {
                return Some(k);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// The point completing `points` to the intersection of a conic with the
    /// curve: `-(p_1 + .. + p_k)`.
    pub fn conic_residual(&self, points: &[CurvePoint]) -> CurvePoint {
        self.neg(&self.sum(points))
    }

    /// The candidates `p` with `n p = o`, for `n` in `{2, 3, 6}`.
    pub fn torsion(&self, n: u32, candidates: &[CurvePoint]) -> Result<Vec<CurvePoint>, GroupError> {
        if ![2, 3, 6].contains(&n) {
            return Err(GroupError::UnsupportedTorsion(n));
        }
        let mut out: Vec<CurvePoint> = candidates
            .par_iter()
            .filter(|p| self.scalar_mul(i64::from(n), p) == self.origin)
            .cloned()
            .collect();
        out.sort_by_cached_key(|p| p.0.canonical_key());
        out.dedup();
        Ok(out)
    }
}

pub type Label = (u8, u8);

fn add_labels(a: Label, b: Label) -> Label {
    ((a.0 + b.0) % 6, (a.1 + b.1) % 6)
}

/// An isomorphism `alpha: F[6] -> Z6 x Z6` given by two generators.
#[derive(Debug, Clone)]
pub struct LevelStructure {
    pub gen1: CurvePoint,
    pub gen2: CurvePoint,
    /// `grid[a][b] = a gen1 + b gen2`.
    grid: Vec<Vec<CurvePoint>>,
    labels: HashMap<CurvePoint, Label>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub point: CurvePoint,
    pub label: Label,
    pub order: u32,
}

impl LevelStructure {
    /// Generators chosen as the first admissible pair in canonical point
    /// order.
    pub fn build(curve: &Curve, six_torsion: &[CurvePoint]) -> Result<Self, GroupError> {
        let (g1, g2) = Self::generator_pairs(curve, six_torsion).next().ok_or(GroupError::GeneratorSearchFailed)?;
        Self::with_generators(curve, six_torsion, g1, g2)
    }

    /// All admissible generator pairs, in canonical order.
    pub fn generator_pairs<'a>(
        curve: &'a Curve,
        six_torsion: &[CurvePoint],
    ) -> impl Iterator<Item = (CurvePoint, CurvePoint)> + 'a {
        let mut sorted = six_torsion.to_vec();
        sorted.sort_by_cached_key(|p| p.0.canonical_key());
        let order6: Vec<(CurvePoint, Vec<CurvePoint>)> = sorted
            .into_iter()
            .filter(|p| curve.order(p, 6) == Some(6))
            .map(|p| {
                let multiples = (1..6).map(|k| curve.scalar_mul(k, &p)).collect();
                (p, multiples)
            })
            .collect();
        let n = order6.len();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let (a, ma) = &order6[i];
            let (b, mb) = &order6[j];
            let trivial = !ma.iter().any(|x| mb.contains(x));
            (i != j && trivial).then(|| (a.clone(), b.clone()))
        })
    }

    pub fn with_generators(
        curve: &Curve,
        six_torsion: &[CurvePoint],
        gen1: CurvePoint,
        gen2: CurvePoint,
    ) -> Result<Self, GroupError> {
        let m1: Vec<CurvePoint> = (0..6).map(|k| curve.scalar_mul(k, &gen1)).collect();
        let m2: Vec<CurvePoint> = (0..6).map(|k| curve.scalar_mul(k, &gen2)).collect();
        let grid: Vec<Vec<CurvePoint>> =
            m1.par_iter().map(|p| m2.iter().map(|q| curve.add(p, q)).collect()).collect();
        let mut labels = HashMap::new();
        for (a, row) in grid.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                labels.insert(p.clone(), (a as u8, b as u8));
            }
        }
        if labels.len() != 36 || six_torsion.len() != 36 || six_torsion.iter().any(|p| !labels.contains_key(p)) {
            return Err(GroupError::NotBijective);
        }
        Ok(Self { gen1, gen2, grid, labels })
    }

    pub fn label(&self, p: &CurvePoint) -> Option<Label> {
        self.labels.get(p).copied()
    }

    pub fn point_at(&self, l: Label) -> &CurvePoint {
        &self.grid[usize::from(l.0 % 6)][usize::from(l.1 % 6)]
    }

    /// Checks `alpha(p + q) = alpha(p) + alpha(q)` on all ordered pairs;
    /// returns the number of pairs checked.
    pub fn check_homomorphism(&self, curve: &Curve) -> Result<usize, GroupError> {
        let points: Vec<(&CurvePoint, Label)> = self.labels.iter().map(|(p, l)| (p, *l)).collect();
        points
            .par_iter()
            .map(|&(p, lp)| {
                for &(q, lq) in &points {
                    if self.label(&curve.add(p, q)) != Some(add_labels(lp, lq)) {
                        return Err(GroupError::NotHomomorphic(p.0.to_string(), q.0.to_string()));
                    }
                }
                Ok(points.len())
            })
            .sum::<Result<usize, GroupError>>()
    }

    /// Label table in canonical point order.
    pub fn table(&self, curve: &Curve) -> Vec<TableEntry> {
        let mut out: Vec<TableEntry> = self
            .labels
            .iter()
            .map(|(p, &label)| TableEntry { point: p.clone(), label, order: curve.order(p, 6).unwrap_or(0) })
            .collect();
        out.sort_by_cached_key(|e| e.point.0.canonical_key());
        out
    }

    /// `-(sum of labels)`, the label of the residual point.
    pub fn residual_label(labels: impl IntoIterator<Item = Label>) -> Label {
        let s = labels.into_iter().fold((0, 0), add_labels);
        ((6 - s.0) % 6, (6 - s.1) % 6)
    }
}

/// The readings of "six points lie on a conic" in terms of label sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicPredicate {
    /// The sum is the origin.
    SumZero,
    /// The sum is a 2-torsion point.
    SumTwoTorsion,
    /// Both label coordinates of the sum are `0 mod 3`.
    LabelMod3,
}

impl ConicPredicate {
    pub const ALL: [Self; 3] = [Self::SumZero, Self::SumTwoTorsion, Self::LabelMod3];

    pub fn holds(self, sum: Label) -> bool {
        match self {
            Self::SumZero => sum == (0, 0),
            Self::SumTwoTorsion => [0, 3].contains(&sum.0) && [0, 3].contains(&sum.1),
            Self::LabelMod3 => sum.0 % 3 == 0 && sum.1 % 3 == 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SumZero => "sum_zero",
            Self::SumTwoTorsion => "sum_two_torsion",
            Self::LabelMod3 => "label_mod3",
        }
    }
}

/// Unordered triples (as sorted index triples) whose labels sum to zero.
pub fn oracle_collinear_triples(labels: &[Label]) -> Vec<[usize; 3]> {
    let n = labels.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if add_labels(add_labels(labels[a], labels[b]), labels[c]) == (0, 0) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// The 6-subsets (sorted index tuples, lexicographic) whose label sum
/// satisfies `pred`.
pub fn oracle_conic_subsets(labels: &[Label], pred: ConicPredicate) -> Vec<[usize; 6]> {
    let n = labels.len();
    let chunks: Vec<Vec<[usize; 6]>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a + 1..n {
                let sb = add_labels(labels[a], labels[b]);
                for c in b + 1..n {
                    let sc = add_labels(sb, labels[c]);
                    for d in c + 1..n {
                        let sd = add_labels(sc, labels[d]);
                        for e in d + 1..n {
                            let se = add_labels(sd, labels[e]);
                            for f in e + 1..n {
                                if pred.holds(add_labels(se, labels[f])) {
                                    out.push([a, b, c, d, e, f]);
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse_expr(s).unwrap()
    }

    fn flex(c: [&str; 3]) -> CurvePoint {
        Curve::fermat().point(ProjPoint::new(c.map(fe)).unwrap()).unwrap()
    }

    #[test]
    fn flexes_on_z_are_collinear() {
        let c = Curve::fermat();
        let p1 = flex(["1", "-1", "0"]);
        let p2 = flex(["1", "-eps", "0"]);
        let p3 = flex(["1", "-eps^2", "0"]);
        assert_eq!(c.third(&p1, &p2), p3);
        assert_eq!(c.third(&p2, &p2), p2);
        assert_eq!(c.third(&p1, &c.third(&p1, &p2)), p2);
        for p in [&p1, &p2, &p3] {
            assert_eq!(c.scalar_mul(3, p), *c.origin());
        }
    }

    #[test]
    fn origin_must_be_a_flex() {
        let s11 = ProjPoint::new([fe("1"), fe("-mu"), fe("1")]).unwrap();
        assert!(matches!(Curve::new(fermat_cubic(), s11), Err(GroupError::NotFlex(_))));
        assert!(matches!(
            Curve::new(fermat_cubic(), ProjPoint::from_i64([1, 1, 1])),
            Err(GroupError::NotOnCurve(_))
        ));
    }

    #[test]
    fn sextactic_point_has_order_six() {
        let c = Curve::fermat();
        let s = c.point(ProjPoint::new([fe("1"), fe("-mu"), fe("1")]).unwrap()).unwrap();
        assert_eq!(c.order(&s, 6), Some(6));
        assert_ne!(c.scalar_mul(3, &s), *c.origin());
        assert_eq!(c.scalar_mul(-1, &s), c.neg(&s));
        assert_eq!(c.add(&s, &c.neg(&s)), *c.origin());
    }

    #[test]
    fn residuals() {
        let c = Curve::fermat();
        let o = c.origin().clone();
        assert_eq!(c.conic_residual(&[o.clone(), o.clone()]), o);
        let s = c.point(ProjPoint::new([fe("1"), fe("-mu"), fe("1")]).unwrap()).unwrap();
        let ns = c.neg(&s);
        assert_eq!(c.conic_residual(&[s.clone(), ns, o]), c.origin().clone());
        assert_eq!(LevelStructure::residual_label([(1, 2), (5, 4)]), (0, 0));
        assert_eq!(LevelStructure::residual_label([(1, 0)]), (5, 0));
    }

    #[test]
    fn predicates() {
        assert!(ConicPredicate::SumZero.holds((0, 0)));
        assert!(!ConicPredicate::SumZero.holds((3, 0)));
        assert!(ConicPredicate::SumTwoTorsion.holds((3, 0)));
        assert!(ConicPredicate::LabelMod3.holds((3, 3)));
        assert!(!ConicPredicate::LabelMod3.holds((2, 0)));
        let labels: Vec<Label> = (0..6).map(|a| (a, 0)).collect();
        assert_eq!(oracle_collinear_triples(&labels), vec![[0, 1, 5], [0, 2, 4], [1, 2, 3], [3, 4, 5]]);
    }
}
