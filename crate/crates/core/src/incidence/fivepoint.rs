//! Conics through exactly five sextactic points.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::census::{fast_rows, integral_rows, ring_dot, Scan, Wedge};
use super::objects::{conic_row, cross, dot, gradient_at};
use super::{Conic, IncidenceError, ProjPoint};
use crate::grouplaw::{Curve, Label, LevelStructure};
use crate::FieldElement;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FivePointReport {
    pub subsets: usize,
    /// The five points span no unique conic.
    pub degenerate: usize,
    /// The conic also passes through a sixth point of the set.
    pub on_six_point_conic: usize,
    /// The residual intersection is one of the five, where the conic is
    /// tangent to the curve.
    pub tangent_at_member: usize,
    /// The residual intersection is a flex.
    pub flex_residual: usize,
    pub other: usize,
    /// Largest set-wise intersection of a scanned conic with the curve.
    pub max_intersection: usize,
    /// Every residual passed its geometric check.
    pub certified: bool,
    pub example_tangent: Option<[usize; 5]>,
    pub example_flex: Option<[usize; 5]>,
}

impl FivePointReport {
    fn empty() -> Self {
        Self { certified: true, ..Default::default() }
    }

    fn merge(mut self, o: Self) -> Self {
        self.subsets += o.subsets;
        self.degenerate += o.degenerate;
        self.on_six_point_conic += o.on_six_point_conic;
        self.tangent_at_member += o.tangent_at_member;
        self.flex_residual += o.flex_residual;
        self.other += o.other;
        self.max_intersection = self.max_intersection.max(o.max_intersection);
        self.certified &= o.certified;
        self.example_tangent = self.example_tangent.or(o.example_tangent);
        self.example_flex = self.example_flex.or(o.example_flex);
        self
    }
}

/// Classifies the sixth intersection of every conic spanned by five of
/// `points` and passing through no further one of them.
///
/// The residual point is predicted from the labels (the six intersections of
/// a conic sum to the origin) and then checked on the conic itself; tangency
/// is checked by comparing gradients.
pub fn five_point_scan(
    curve: &Curve,
    level: &LevelStructure,
    points: &[ProjPoint],
    labels: &[Label],
) -> Result<FivePointReport, IncidenceError> {
    let n = points.len();
    let rows = integral_rows(points);
    let fast = fast_rows(&rows);
    let wedge = Wedge::new();
    let prefixes: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let ctx = Ctx { curve, level, points, labels };
    let report = prefixes
        .par_iter()
        .map(|&(a, b)| {
            fast.as_ref()
                .and_then(|f| ctx.scan_prefix(&wedge, f, a, b))
                .or_else(|| ctx.scan_prefix(&wedge, &rows, a, b))
                .expect("exact scan never overflows")
        })
        .reduce(FivePointReport::empty, FivePointReport::merge);
    Ok(report)
}

struct Ctx<'a> {
    curve: &'a Curve,
    level: &'a LevelStructure,
    points: &'a [ProjPoint],
    labels: &'a [Label],
}

impl Ctx<'_> {
    /// Five-subsets starting with `a < b`; `None` on overflow.
    fn scan_prefix<C: Scan>(&self, wedge: &Wedge, rows: &[[C; 6]], a: usize, b: usize) -> Option<FivePointReport> {
        let n = rows.len();
        let mut r = FivePointReport::empty();
        let w2 = wedge.apply(1, &rows[a], &rows[b]);
        for c in b + 1..n {
            let w3 = wedge.apply(2, &w2, &rows[c]);
            for d in c + 1..n {
                let w4 = wedge.apply(3, &w3, &rows[d]);
                for e in d + 1..n {
                    r.subsets += 1;
                    let members = [a, b, c, d, e];
                    let q = Wedge::dual(&wedge.apply(4, &w4, &rows[e]));
                    if q.iter().any(Scan::poisoned) {
                        return None;
                    }
                    if q.iter().all(Zero::is_zero) {
                        r.degenerate += 1;
                        continue;
                    }
                    let mut sixth = false;
                    for i in (0..n).filter(|i| !members.contains(i)) {
                        let v = ring_dot(&q, &rows[i]);
                        if v.poisoned() {
                            return None;
                        }
                        sixth |= v.is_zero();
                    }
                    if sixth {
                        r.on_six_point_conic += 1;
                        continue;
                    }
                    let q = q.map(|x| x.exact());
                    classify(self.curve, self.level, self.points, self.labels, &members, &q, &mut r);
                }
            }
        }
        Some(r)
    }
}

fn classify(
    curve: &Curve,
    level: &LevelStructure,
    points: &[ProjPoint],
    labels: &[Label],
    members: &[usize; 5],
    q: &[FieldElement; 6],
    r: &mut FivePointReport,
) {
    let label = LevelStructure::residual_label(members.iter().map(|&i| labels[i]));
    let residual = level.point_at(label).point();
    let rc = residual.coords();
    if !dot(q, &conic_row(rc)).is_zero() {
        r.certified = false;
        return;
    }
    if members.iter().any(|&i| points[i] == *residual) {
        let conic = Conic::new(q.clone()).expect("nonzero conic");
        let tangent = cross(&conic.gradient_at(rc), &gradient_at(curve.poly(), rc)).iter().all(Zero::is_zero);
        r.certified &= tangent;
        r.tangent_at_member += 1;
        r.max_intersection = r.max_intersection.max(5);
        r.example_tangent.get_or_insert(*members);
    } else if label.0 % 2 == 0 && label.1 % 2 == 0 {
        r.flex_residual += 1;
        r.max_intersection = r.max_intersection.max(6);
        r.example_flex.get_or_insert(*members);
    } else {
        r.other += 1;
        r.max_intersection = r.max_intersection.max(6);
    }
}
