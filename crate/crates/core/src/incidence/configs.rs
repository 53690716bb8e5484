//! Flexes, Hesse and dual Hesse arrangements, sextactic points.

use std::collections::HashSet;

use num_traits::Zero;

use super::objects::{dot, gradient_at};
use super::{IncidenceError, Line, ProjPoint};
use crate::cayley::{self, dual_hesse_product, fermat_cubic, Coefficients};
use crate::exactfield::binomial_roots;
use crate::expected::manifest;
use crate::scalar::Ring;
use crate::{FieldElement, Poly};

/// The points where `line` meets the cubic `cubic`, without multiplicity.
///
/// The restriction to the line must be a binomial cubic `a s^3 + b t^3` for
/// some pair of spanning points; anything else is reported as an error.
pub fn intersect_line_cubic(cubic: &Poly, line: &Line) -> Result<Vec<ProjPoint>, IncidenceError> {
    if cubic.degree() != Some(3) {
        return Err(IncidenceError::WrongDegree { expected: 3, found: cubic.degree() });
    }
    let spans = line.points();
    for (i, p) in spans.iter().enumerate() {
        for q in &spans[i + 1..] {
            let (p, q) = (p.coords(), q.coords());
            let c3 = cubic.evaluate(p);
            let c0 = cubic.evaluate(q);
            let c2 = dot(&gradient_at(cubic, p), q);
            let c1 = dot(&gradient_at(cubic, q), p);
            if !(c1.is_zero() && c2.is_zero()) {
                continue;
            }
            return match (c3.is_zero(), c0.is_zero()) {
                (true, true) => Err(IncidenceError::LineOnCurve),
                (true, false) => Ok(vec![ProjPoint::new(p.clone())?]),
                (false, true) => Ok(vec![ProjPoint::new(q.clone())?]),
                (false, false) => {
                    let roots = match binomial_roots(&c3, &c0.neg_ref()) {
                        Ok(r) => r,
                        Err(_) => continue,
                    };
                    roots
                        .iter()
                        .map(|s| ProjPoint::new(std::array::from_fn(|k| s.mul_ref(&p[k]).add_ref(&q[k]))))
                        .collect()
                }
            };
        }
    }
    Err(IncidenceError::NonBinomial)
}

/// Orders `computed` like the named `reference` list; both must agree as sets.
pub fn name_points(
    computed: &[ProjPoint],
    reference: &[(String, ProjPoint)],
) -> Result<Vec<(String, ProjPoint)>, IncidenceError> {
    if computed.len() != reference.len() {
        return Err(IncidenceError::unexpected("point count", reference.len(), computed.len()));
    }
    let have: HashSet<&ProjPoint> = computed.iter().collect();
    for (name, p) in reference {
        if !have.contains(p) {
            return Err(IncidenceError::unexpected("reference point", format!("{name} = {p}"), "no computed match"));
        }
    }
    Ok(reference.to_vec())
}

fn coordinate_lines() -> [Line; 3] {
    [Line::from_i64([1, 0, 0]), Line::from_i64([0, 1, 0]), Line::from_i64([0, 0, 1])]
}

fn distinct(points: impl IntoIterator<Item = ProjPoint>) -> Vec<ProjPoint> {
    let mut seen = HashSet::new();
    let mut out: Vec<ProjPoint> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
    out.sort_by_cached_key(ProjPoint::canonical_key);
    out
}

fn product(lines: &[Line]) -> Poly {
    lines.iter().fold(Poly::constant(FieldElement::from_i64(1)), |acc, l| acc.mul(&l.to_poly()))
}

/// The 9 flexes, in reference order, as `F = 0` on the three coordinate
/// lines into which `H(F)` splits.
pub fn flex_points() -> Result<Vec<(String, ProjPoint)>, IncidenceError> {
    let f: Poly = fermat_cubic();
    let h = cayley::hessian(&f)?.h;
    let lines = coordinate_lines();
    if h.proportional(&product(&lines)).is_none() {
        return Err(IncidenceError::unexpected("Hessian", "multiple of xyz", &h));
    }
    let mut pts = Vec::new();
    for l in &lines {
        pts.extend(intersect_line_cubic(&f, l)?);
    }
    let pts = distinct(pts);
    for p in &pts {
        if !(p.on_curve(&f) && p.on_curve(&h)) {
            return Err(IncidenceError::unexpected("flex", "F = H = 0", p));
        }
    }
    let reference = manifest().flexes().map_err(|e| IncidenceError::unexpected("manifest", "valid", e))?;
    name_points(&pts, &reference)
}

/// Every line through two flexes, deduplicated, in reference order.
pub fn hesse_lines(flexes: &[ProjPoint]) -> Result<Vec<(String, Line)>, IncidenceError> {
    let mut lines = HashSet::new();
    for (i, p) in flexes.iter().enumerate() {
        for q in &flexes[i + 1..] {
            lines.insert(Line::through(p, q)?);
        }
    }
    for l in &lines {
        let k = flexes.iter().filter(|p| l.contains(p)).count();
        if k != 3 {
            return Err(IncidenceError::unexpected("flexes on a Hesse line", 3, k));
        }
    }
    let reference = manifest().hesse().map_err(|e| IncidenceError::unexpected("manifest", "valid", e))?;
    if lines.len() != reference.len() || reference.iter().any(|(_, l)| !lines.contains(l)) {
        return Err(IncidenceError::unexpected("Hesse lines", "reference set", lines.len()));
    }
    Ok(reference)
}

/// The linear factors `u - t v` of `u^3 - v^3` for `(u, v)` = `(x, y)`,
/// `(y, z)`, `(z, x)`.
pub fn dual_hesse_lines() -> Result<Vec<Line>, IncidenceError> {
    let one = FieldElement::from_i64(1);
    let roots = binomial_roots(&one, &one)?;
    let mut out = Vec::new();
    for (u, v) in [(0, 1), (1, 2), (2, 0)] {
        for t in &roots {
            let mut c: [FieldElement; 3] = std::array::from_fn(|_| FieldElement::zero());
            c[u] = one.clone();
            c[v] = t.neg_ref();
            out.push(Line::new(c)?);
        }
    }
    let witness: Poly = dual_hesse_product();
    if product(&out).proportional(&witness).is_none() {
        return Err(IncidenceError::unexpected("dual Hesse factors", "product equal to the witness", "mismatch"));
    }
    Ok(out)
}

/// The pairwise intersections of the dual Hesse lines, deduplicated.
pub fn dual_hesse_triple_points(lines: &[Line]) -> Result<Vec<ProjPoint>, IncidenceError> {
    let mut pts = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            pts.push(l.meet(m)?);
        }
    }
    Ok(distinct(pts))
}

/// `H2(F)`, the nine lines it splits into and the constant relating it to
/// `(x^3 - y^3)(y^3 - z^3)(z^3 - x^3)`.
#[derive(Debug, Clone)]
pub struct Sextactic {
    pub h2: Poly,
    pub lambda: FieldElement,
    pub lines: Vec<Line>,
}

pub fn sextactic_lines() -> Result<Sextactic, IncidenceError> {
    sextactic_lines_with(Coefficients::corrected(3))
}

/// Same, with `H2` assembled from the given weights.
pub fn sextactic_lines_with(coeffs: Coefficients) -> Result<Sextactic, IncidenceError> {
    let f: Poly = fermat_cubic();
    let h2 = cayley::second_hessian_with(&f, coeffs)?.h2;
    let lines = dual_hesse_lines()?;
    let witness: Poly = dual_hesse_product();
    let lambda = h2
        .proportional(&witness)
        .filter(|l| !l.is_zero())
        .ok_or_else(|| IncidenceError::unexpected("H2(F)", "nonzero multiple of the witness", "not proportional"))?;
    Ok(Sextactic { h2, lambda, lines })
}

/// The 27 points of `F = H2(F) = 0`, canonically ordered.
pub fn sextactic_points_computed(s: &Sextactic) -> Result<Vec<ProjPoint>, IncidenceError> {
    let f: Poly = fermat_cubic();
    let mut pts = Vec::new();
    for l in &s.lines {
        pts.extend(intersect_line_cubic(&f, l)?);
    }
    let raw = pts.len();
    let pts = distinct(pts);
    if pts.len() != raw {
        return Err(IncidenceError::unexpected("distinct sextactic points", raw, pts.len()));
    }
    for p in &pts {
        if !(p.on_curve(&f) && p.on_curve(&s.h2)) {
            return Err(IncidenceError::unexpected("sextactic point", "F = H2 = 0", p));
        }
    }
    Ok(pts)
}

/// The sextactic points named `S1..S27` after the corrected reference list.
pub fn sextactic_points(s: &Sextactic) -> Result<Vec<(String, ProjPoint)>, IncidenceError> {
    let pts = sextactic_points_computed(s)?;
    let reference = manifest().sextactic_corrected().map_err(|e| IncidenceError::unexpected("manifest", "valid", e))?;
    name_points(&pts, &reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flexes_match_reference() {
        let flexes = flex_points().unwrap();
        assert_eq!(flexes.len(), 9);
        assert_eq!(flexes[0].1, ProjPoint::from_i64([1, -1, 0]));
        let f: Poly = fermat_cubic();
        for l in coordinate_lines() {
            assert_eq!(flexes.iter().filter(|(_, p)| l.contains(p)).count(), 3);
        }
        assert!(flexes.iter().all(|(_, p)| p.on_curve(&f)));
    }

    #[test]
    fn hesse_configuration() {
        let flexes: Vec<ProjPoint> = flex_points().unwrap().into_iter().map(|x| x.1).collect();
        let lines = hesse_lines(&flexes).unwrap();
        assert_eq!(lines.len(), 12);
        assert!(lines.iter().any(|(_, l)| *l == Line::from_i64([1, 0, 0])));
        for p in &flexes {
            assert_eq!(lines.iter().filter(|(_, l)| l.contains(p)).count(), 4);
        }
    }

    #[test]
    fn dual_hesse_configuration() {
        let lines = dual_hesse_lines().unwrap();
        assert_eq!(lines.len(), 9);
        let pts = dual_hesse_triple_points(&lines).unwrap();
        assert_eq!(pts.len(), 12);
        for p in &pts {
            assert_eq!(lines.iter().filter(|l| l.contains(p)).count(), 3);
        }
    }

    #[test]
    fn non_binomial_is_an_error() {
        let f: Poly = fermat_cubic();
        let l = Line::from_i64([1, 2, 3]);
        assert!(matches!(intersect_line_cubic(&f, &l), Err(IncidenceError::NonBinomial)));
        let xyz: Poly = "x*y*z".parse().unwrap();
        assert!(matches!(intersect_line_cubic(&xyz, &Line::from_i64([1, 0, 0])), Err(IncidenceError::LineOnCurve)));
    }
}
