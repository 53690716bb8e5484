//! Conics through six of a point set, and the lines of the split ones.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objects::conic_row;
use super::{ArrangementSummary, Conic, ConicClass, IncidenceError, Line, ProjPoint};
use crate::exactfield::Classification;
use crate::exactfield::IntTower;
use crate::linalg;
use crate::scalar::{CheckedInt, Field, Ring};
use crate::polyring::HomPoly;
use crate::{FieldElement, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConicSpan {
    None,
    Unique(Conic),
    /// Dimension of the space of conic forms through the points.
    Pencil(usize),
}

/// The conics through `points`, from the kernel of their evaluation matrix.
pub fn conic_through(points: &[ProjPoint]) -> Result<ConicSpan, IncidenceError> {
    let unique: HashSet<&ProjPoint> = points.iter().collect();
    if unique.len() != points.len() {
        return Err(IncidenceError::DuplicatePoints);
    }
    let rows: Vec<Vec<FieldElement>> = points.iter().map(|p| conic_row(p.coords()).to_vec()).collect();
    let kernel = linalg::nullspace(&rows);
    Ok(match kernel.len() {
        0 => ConicSpan::None,
        1 => {
            let v = &kernel[0];
            ConicSpan::Unique(Conic::new(std::array::from_fn(|i| v[i].clone()))?)
        }
        n => ConicSpan::Pencil(n),
    })
}

/// Index tables for `Lambda^k(K^6) -> Lambda^(k+1)(K^6)`, `v -> w ^ v`.
///
/// A `k`-vector is stored by its coordinates on `e_I`, `I` running over the
/// `k`-subsets of `0..6` in increasing bitmask order.
pub(super) struct Wedge {
    /// `steps[k - 1][target] = [(source, j, negate)]`.
    steps: Vec<Vec<Vec<(usize, usize, bool)>>>,
}

impl Wedge {
    pub(super) fn new() -> Self {
        let subsets = |k: u32| -> Vec<u8> { (0u8..64).filter(|m| m.count_ones() == k).collect() };
        let mut steps = Vec::new();
        for k in 1..5u32 {
            let src = subsets(k);
            let dst = subsets(k + 1);
            let table = dst
                .iter()
                .map(|&t| {
                    (0..6)
                        .filter(|j| t & (1 << j) != 0)
                        .map(|j| {
                            let s = t & !(1u8 << j);
                            let above = (s >> (j + 1)).count_ones();
                            (src.iter().position(|&m| m == s).expect("subset listed"), j, above % 2 == 1)
                        })
                        .collect()
                })
                .collect();
            steps.push(table);
        }
        Self { steps }
    }

    /// `w ^ v` for a `k`-vector `w`, `1 <= k <= 4`.
    pub(super) fn apply<C: Ring>(&self, k: usize, w: &[C], v: &[C; 6]) -> Vec<C> {
        self.steps[k - 1]
            .iter()
            .map(|terms| {
                terms.iter().fold(C::zero(), |acc, &(s, j, neg)| {
                    let t = w[s].mul_ref(&v[j]);
                    if neg {
                        acc.sub_ref(&t)
                    } else {
                        acc.add_ref(&t)
                    }
                })
            })
            .collect()
    }

    /// Coefficients `c` with `c . r = det(r_1, .., r_5, r)` for the 5-vector
    /// `w = r_1 ^ .. ^ r_5`.
    pub(super) fn dual<C: Ring>(w: &[C]) -> [C; 6] {
        // 5-subsets in mask order miss the elements 5, 4, 3, 2, 1, 0
        std::array::from_fn(|m| {
            let c = &w[5 - m];
            if (5 - m) % 2 == 1 {
                c.neg_ref()
            } else {
                c.clone()
            }
        })
    }
}

/// Scalars the subset scans can run on: exact field elements, or checked
/// machine integers that flag overflow.
pub(super) trait Scan: Ring {
    fn poisoned(&self) -> bool;
    fn exact(&self) -> FieldElement;
}

pub(super) type Fast = IntTower<CheckedInt>;

impl Scan for Fast {
    fn poisoned(&self) -> bool {
        self.coords().iter().any(|c| c.is_poisoned())
    }

    fn exact(&self) -> FieldElement {
        self.to_tower(|c| Rational::from_integer(c.get().expect("not poisoned").into()))
    }
}

impl Scan for FieldElement {
    fn poisoned(&self) -> bool {
        false
    }

    fn exact(&self) -> FieldElement {
        self.clone()
    }
}

pub(super) fn ring_dot<C: Ring>(a: &[C; 6], b: &[C; 6]) -> C {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

/// Conic rows of denominator-free representatives of the points.
pub(super) fn integral_rows(points: &[ProjPoint]) -> Vec<[FieldElement; 6]> {
    points.iter().map(|p| conic_row(&p.integral_coords())).collect()
}

pub(super) fn fast_rows(rows: &[[FieldElement; 6]]) -> Option<Vec<[Fast; 6]>> {
    let conv = |x: &FieldElement| {
        Fast::convert(x, |q| {
            q.is_integer().then(|| q.to_integer()).and_then(|n| i128::try_from(n).ok()).map(CheckedInt::new)
        })
    };
    rows.iter()
        .map(|r| {
            let mut out: [Option<Fast>; 6] = Default::default();
            for (slot, x) in out.iter_mut().zip(r) {
                *slot = Some(conv(x)?);
            }
            Some(out.map(|c| c.expect("filled above")))
        })
        .collect()
}

/// A 6-subset on a conic: members, the conic (absent when five of them
/// already span a pencil) and how many of all the points lie on it.
type Hit = ([usize; 6], Option<[FieldElement; 6]>, usize);

/// Scans the 6-subsets starting with `a < b`; `None` on overflow.
fn scan_prefix<C: Scan>(wedge: &Wedge, rows: &[[C; 6]], a: usize, b: usize) -> Option<(usize, Vec<Hit>)> {
    let n = rows.len();
    let mut hits = Vec::new();
    let mut scanned = 0;
    let w2 = wedge.apply(1, &rows[a], &rows[b]);
    for c in b + 1..n {
        let w3 = wedge.apply(2, &w2, &rows[c]);
        for d in c + 1..n {
            let w4 = wedge.apply(3, &w3, &rows[d]);
            for e in d + 1..n {
                let w5 = wedge.apply(4, &w4, &rows[e]);
                let q = Wedge::dual(&w5);
                if q.iter().any(Scan::poisoned) {
                    return None;
                }
                let degenerate = q.iter().all(Zero::is_zero);
                for f in e + 1..n {
                    scanned += 1;
                    if degenerate {
                        hits.push(([a, b, c, d, e, f], None, 0));
                        continue;
                    }
                    let v = ring_dot(&q, &rows[f]);
                    if v.poisoned() {
                        return None;
                    }
                    if v.is_zero() {
                        let mut on = 0;
                        for r in rows {
                            let v = ring_dot(&q, r);
                            if v.poisoned() {
                                return None;
                            }
                            on += usize::from(v.is_zero());
                        }
                        hits.push(([a, b, c, d, e, f], Some(q.clone().map(|x| x.exact())), on));
                    }
                }
            }
        }
    }
    Some((scanned, hits))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConic {
    pub conic: Conic,
    pub members: [usize; 6],
    #[serde(flatten)]
    pub class: ConicClass,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    pub total: usize,
    pub smooth: usize,
    pub split: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicCensus {
    pub subsets_scanned: usize,
    pub total: usize,
    pub smooth: usize,
    pub split: usize,
    pub double_line: usize,
    /// Largest number of the input points found on one census conic.
    pub max_points_on_conic: usize,
    pub per_point: Vec<PointCounts>,
    /// Sorted by member indices.
    pub conics: Vec<CensusConic>,
}

/// Every conic through six of `points`, found by scanning all 6-subsets.
///
/// The scan walks subsets in lexicographic order, sharing the exterior
/// products of common prefixes; rows are processed in parallel by the
/// current rayon pool and the result does not depend on its size.
pub fn conic_census(points: &[ProjPoint]) -> Result<ConicCensus, IncidenceError> {
    let n = points.len();
    let rows = integral_rows(points);
    let fast = fast_rows(&rows);
    let wedge = Wedge::new();
    let prefixes: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let chunks: Vec<(usize, Vec<Hit>)> = prefixes
        .par_iter()
        .map(|&(a, b)| {
            fast.as_ref()
                .and_then(|f| scan_prefix(&wedge, f, a, b))
                .or_else(|| scan_prefix(&wedge, &rows, a, b))
                .expect("exact scan never overflows")
        })
        .collect();

    let subsets_scanned = chunks.iter().map(|c| c.0).sum();
    let hits: Vec<Hit> = chunks.into_iter().flat_map(|c| c.1).collect();
    let resolved: Vec<Option<([usize; 6], Conic, usize)>> = hits
        .into_par_iter()
        .map(|(members, q, on)| -> Result<_, IncidenceError> {
            Ok(Some(match q {
                Some(q) => (members, Conic::new(q)?, on),
                None => match conic_through(&members.map(|i| points[i].clone()))? {
                    ConicSpan::Unique(c) => {
                        let on = points.iter().filter(|p| c.contains(p)).count();
                        (members, c, on)
                    }
                    _ => return Ok(None),
                },
            }))
        })
        .collect::<Result<_, _>>()?;

    let mut seen: HashMap<Conic, ([usize; 6], usize)> = HashMap::new();
    for (members, conic, on) in resolved.into_iter().flatten() {
        if let Some(prev) = seen.insert(conic.clone(), (members, on)) {
            return Err(IncidenceError::unexpected("points on a census conic", 6, format!("more ({:?}, {members:?})", prev.0)));
        }
    }
    let mut found: Vec<([usize; 6], Conic, usize)> = seen.into_iter().map(|(c, (m, on))| (m, c, on)).collect();
    found.sort_by(|x, y| x.0.cmp(&y.0));

    let conics: Vec<(CensusConic, usize)> = found
        .into_par_iter()
        .map(|(members, conic, on)| {
            let class = classify_with_members(&conic, &members.map(|i| &points[i]));
            (CensusConic { conic, members, class }, on)
        })
        .collect();
    let max_points_on_conic = conics.iter().map(|c| c.1).max().unwrap_or(0);
    let conics: Vec<CensusConic> = conics.into_iter().map(|c| c.0).collect();

    let mut per_point = vec![PointCounts::default(); n];
    let (mut smooth, mut split, mut double_line) = (0, 0, 0);
    for c in &conics {
        let (s, t) = match c.class {
            ConicClass::Smooth => {
                smooth += 1;
                (1, 0)
            }
            ConicClass::TwoLines { .. } => {
                split += 1;
                (0, 1)
            }
            ConicClass::DoubleLine { .. } => {
                double_line += 1;
                (0, 0)
            }
        };
        for &i in &c.members {
            per_point[i].total += 1;
            per_point[i].smooth += s;
            per_point[i].split += t;
        }
    }
    Ok(ConicCensus {
        subsets_scanned,
        total: conics.len(),
        smooth,
        split,
        double_line,
        max_points_on_conic,
        per_point,
        conics,
    })
}

/// Like [`Conic::classify`], but a singular conic is first tried as the
/// union of two lines through triples of `members`; the candidate pair is
/// accepted only when its product is proportional to the conic.
fn classify_with_members(conic: &Conic, members: &[&ProjPoint; 6]) -> ConicClass {
    if conic.rank() == 3 {
        return ConicClass::Smooth;
    }
    let poly = conic.to_poly();
    for mask in 0u32..64 {
        if mask.count_ones() != 3 || mask & 1 == 0 {
            continue;
        }
        let side = |inside: bool| -> Vec<&ProjPoint> {
            (0..6).filter(|i| ((mask >> i) & 1 == 1) == inside).map(|i| members[i]).collect()
        };
        let (a, b) = (side(true), side(false));
        let (Some(l1), Some(l2)) = (collinear(&a), collinear(&b)) else { continue };
        if l1 != l2 && l1.to_poly().mul(&l2.to_poly()).proportional(&poly).is_some() {
            let mut pair = [l1, l2];
            pair.sort();
            return ConicClass::TwoLines { factors: Some(pair) };
        }
    }
    conic.classify()
}

fn collinear(pts: &[&ProjPoint]) -> Option<Line> {
    let l = Line::through(pts[0], pts[1]).ok()?;
    pts[2..].iter().all(|p| l.contains(p)).then_some(l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitLines {
    /// Canonically sorted.
    pub lines: Vec<Line>,
    pub summary: ArrangementSummary,
    /// Point indices on each line, parallel to `lines`.
    pub triples: Vec<Vec<usize>>,
    /// Split conics whose lines could not be recovered over `K`.
    pub unfactored: usize,
    /// Split conics having a line with other than 3 of the six members.
    pub unbalanced: usize,
    /// Split conics whose two lines meet in one of the points.
    pub vertex_in_set: usize,
}

/// The line factors of the split census conics.
pub fn split_conic_lines(census: &ConicCensus, points: &[ProjPoint]) -> Result<SplitLines, IncidenceError> {
    let mut lines = HashSet::new();
    let (mut unfactored, mut unbalanced, mut vertex_in_set) = (0, 0, 0);
    let set: HashSet<&ProjPoint> = points.iter().collect();
    for c in &census.conics {
        let ConicClass::TwoLines { factors } = &c.class else { continue };
        let Some([l1, l2]) = factors else {
            unfactored += 1;
            continue;
        };
        let on = |l: &Line| c.members.iter().filter(|&&i| l.contains(&points[i])).count();
        if on(l1) != 3 || on(l2) != 3 {
            unbalanced += 1;
        }
        if set.contains(&l1.meet(l2)?) {
            vertex_in_set += 1;
        }
        lines.insert(l1.clone());
        lines.insert(l2.clone());
    }
    let mut lines: Vec<Line> = lines.into_iter().collect();
    lines.sort_by_cached_key(Line::canonical_key);
    let triples = lines
        .iter()
        .map(|l| (0..points.len()).filter(|&i| l.contains(&points[i])).collect())
        .collect();
    let summary = ArrangementSummary::from_incidence(&lines, points);
    Ok(SplitLines { lines, summary, triples, unfactored, unbalanced, vertex_in_set })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integrality {
    pub integral: bool,
    /// The product after the overall scaling.
    pub product: Poly,
    /// The single scalar applied to the product of the denominator-free line
    /// equations.
    pub scale: FieldElement,
    pub cyclic_invariant: bool,
}

type IntPoly = HomPoly<IntTower<BigInt>>;

fn product_tree(polys: &[IntPoly]) -> IntPoly {
    match polys {
        [] => IntPoly::constant(IntTower::one()),
        [p] => p.clone(),
        _ => {
            let (a, b) = polys.split_at(polys.len() / 2);
            let (x, y) = rayon::join(|| product_tree(a), || product_tree(b));
            x.mul(&y)
        }
    }
}

/// Multiplies the line equations and tests whether one overall scalar makes
/// every coefficient a rational integer.
pub fn lines_product_integrality(lines: &[Line]) -> Integrality {
    // clear denominators line by line so the product runs over integers
    let to_int = |q: &Rational| q.is_integer().then(|| q.to_integer());
    let polys: Vec<IntPoly> = lines
        .iter()
        .map(|l| {
            let c = ProjPoint::new(l.coeffs().clone()).expect("line is nonzero").integral_coords();
            let c = c.map(|x| IntTower::convert(&x, to_int).expect("denominators cleared"));
            HomPoly::linear(&c)
        })
        .collect();
    let int_product = product_tree(&polys);
    let raw = Poly::from_terms(
        int_product.terms().map(|(m, c)| (c.to_tower(|n| Rational::from_integer(n.clone())), m.0)),
    )
    .expect("product is homogeneous");
    let cyclic_invariant = raw.permute_vars([1, 2, 0]).proportional(&raw).is_some();
    let Some((_, lead)) = raw.leading() else {
        return Integrality { integral: false, product: raw, scale: FieldElement::zero(), cyclic_invariant };
    };
    let inv = lead.inv().expect("leading coefficient is nonzero");
    let monic = raw.scale(&inv);
    let rational: Option<Vec<&Rational>> = monic.terms().map(|(_, c)| c.as_base()).collect();
    let Some(coeffs) = rational else {
        return Integrality { integral: false, product: monic, scale: inv, cyclic_invariant };
    };
    let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = coeffs.iter().fold(BigInt::zero(), |acc, q| acc.gcd(&(*q * Rational::from_integer(den.clone())).to_integer()));
    let s = Rational::new(den, num.abs());
    let product = monic.scale(&FieldElement::from_base(s.clone()));
    let integral = product.terms().all(|(_, c)| c.classify() == Classification::RationalInteger);
    Integrality { integral, product, scale: inv.scale(&s), cyclic_invariant }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::dot;

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse_expr(s).unwrap()
    }

    fn pt(a: &str, b: &str, c: &str) -> ProjPoint {
        ProjPoint::new([fe(a), fe(b), fe(c)]).unwrap()
    }

    #[test]
    fn wedge_dual_is_a_determinant() {
        let w = Wedge::new();
        let rows: Vec<[FieldElement; 6]> = [[1, 2, 3], [0, 1, 5], [2, 0, 1], [1, 1, 1], [3, 1, 4], [2, 7, 1]]
            .iter()
            .map(|p| conic_row(&p.map(FieldElement::from_i64)))
            .collect();
        let mut acc = rows[0].to_vec();
        for (k, r) in rows[1..5].iter().enumerate() {
            acc = w.apply(k + 1, &acc, r);
        }
        let q = Wedge::dual(&acc);
        for r in &rows[..5] {
            assert!(dot(&q, r).is_zero());
        }
        let m: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.to_vec()).collect();
        let full = dot(&q, &rows[5]);
        assert_eq!(full.is_zero(), linalg::rank(&m) < 6);
    }

    #[test]
    fn two_coordinate_lines_force_xy() {
        let on_x = [pt("0", "1", "-1"), pt("0", "1", "-eps"), pt("0", "1", "-eps^2")];
        let on_y = [pt("1", "0", "-1"), pt("1", "0", "-eps"), pt("1", "0", "-eps^2")];
        let pts: Vec<ProjPoint> = on_x.into_iter().chain(on_y).collect();
        let ConicSpan::Unique(c) = conic_through(&pts).unwrap() else { panic!() };
        assert_eq!(c, Conic::new([fe("0"), fe("0"), fe("0"), fe("1"), fe("0"), fe("0")]).unwrap());
    }

    #[test]
    fn generic_six_points_span_nothing() {
        let pts: Vec<ProjPoint> =
            [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]].map(ProjPoint::from_i64).to_vec();
        assert_eq!(conic_through(&pts).unwrap(), ConicSpan::None);
        let dup = vec![pts[0].clone(), pts[0].clone()];
        assert!(matches!(conic_through(&dup), Err(IncidenceError::DuplicatePoints)));
        assert!(matches!(conic_through(&pts[..4]).unwrap(), ConicSpan::Pencil(2)));
    }

    #[test]
    fn census_of_a_small_set() {
        // six points on x^2 + y^2 - z^2 and one off it
        let mut pts: Vec<ProjPoint> =
            [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1], [3, 4, 5], [4, 3, 5], [2, 3, 7]].map(ProjPoint::from_i64).to_vec();
        let census = conic_census(&pts).unwrap();
        assert_eq!(census.subsets_scanned, 7);
        assert_eq!(census.total, 1);
        assert_eq!(census.smooth, 1);
        assert_eq!(census.conics[0].members, [0, 1, 2, 3, 4, 5]);
        let circle = Conic::new([fe("1"), fe("1"), fe("-1"), fe("0"), fe("0"), fe("0")]).unwrap();
        assert_eq!(census.conics[0].conic, circle);
        assert_eq!(census.per_point[6], PointCounts::default());
        // a seventh point on the circle trips the guard
        pts.push(ProjPoint::from_i64([5, 12, 13]));
        assert!(conic_census(&pts).is_err());
    }

    #[test]
    fn integrality_of_a_conjugate_pair() {
        let lines = [Line::new([fe("1"), fe("-eps"), fe("0")]).unwrap(), Line::new([fe("1"), fe("-eps^2"), fe("0")]).unwrap()];
        let r = lines_product_integrality(&lines);
        assert!(r.integral);
        assert_eq!(r.product, "x^2 + x*y + y^2".parse::<Poly>().unwrap());
        assert!(!r.cyclic_invariant);
        let r = lines_product_integrality(&[Line::new([fe("1"), fe("mu"), fe("0")]).unwrap()]);
        assert!(!r.integral);
    }
}
