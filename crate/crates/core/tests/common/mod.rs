//! Randomized properties shared by the property tests and the acceptance
//! harness. Each runner returns the number of cases that passed.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use sextactica::grouplaw::{Curve, CurvePoint};
use sextactica::incidence::{flex_points, sextactic_lines, sextactic_points, Conic, Line, ProjPoint};
use sextactica::polyring::{PolyMatrix, Var};
use sextactica::{Field, FieldElement, Poly, Rational, Ring};

pub const CASES: u32 = 256;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Elements of `K` with small, often sparse, coordinates.
pub fn field_element() -> impl Strategy<Value = FieldElement> {
    proptest::array::uniform6(prop_oneof![1 => Just(Rational::zero()), 2 => rational()])
        .prop_map(FieldElement::from_coords)
}

pub fn nonzero() -> impl Strategy<Value = FieldElement> {
    field_element().prop_filter("nonzero", |a| !a.is_zero())
}

fn triple() -> impl Strategy<Value = [FieldElement; 3]> {
    proptest::array::uniform3(field_element()).prop_filter("nonzero vector", |c| c.iter().any(|x| !x.is_zero()))
}

/// A homogeneous polynomial of degree `d` with up to six terms.
pub fn hom_poly(d: u32) -> impl Strategy<Value = Poly> {
    let exps = (0..=d).prop_flat_map(move |i| (Just(i), 0..=d - i)).prop_map(move |(i, j)| [i, j, d - i - j]);
    proptest::collection::vec((nonzero(), exps), 0..6)
        .prop_map(|terms| terms.into_iter().fold(Poly::zero(), |acc, (c, e)| {
            acc.try_add(&Poly::monomial(c, e)).expect("same degree")
        }))
}

fn any_hom_poly() -> impl Strategy<Value = Poly> {
    (0u32..=5).prop_flat_map(hom_poly)
}

fn square_matrix() -> impl Strategy<Value = Vec<Vec<Poly>>> {
    (3usize..=4).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(hom_poly(1), n), n))
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map(|_| CASES).map_err(|e| e.to_string())
}

pub fn field_axioms() -> Result<u32, String> {
    run((field_element(), field_element(), field_element(), nonzero()), |(a, b, c, n)| {
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&a.neg_ref()), FieldElement::zero());
        prop_assert_eq!(a.mul_ref(&FieldElement::one()), a.clone());
        let inv = n.inv().expect("nonzero");
        prop_assert_eq!(n.mul_ref(&inv), FieldElement::one());
        prop_assert_eq!(inv.inv(), Some(n.clone()));
        prop_assert_eq!(Some(inv), n.inv_by_solve());
        Ok(())
    })
}

pub fn euler_relation() -> Result<u32, String> {
    run(any_hom_poly(), |p| {
        let Some(d) = p.degree() else { return Ok(()) };
        let lhs = Var::ALL.iter().try_fold(Poly::zero(), |acc, &v| {
            acc.try_add(&Poly::var(v).mul(&p.derivative(v)))
        });
        let lhs = lhs.map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(lhs, p.scale(&FieldElement::from_i64(i64::from(d))));
        Ok(())
    })
}

pub fn determinant_alternation() -> Result<u32, String> {
    run((square_matrix(), nonzero(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(rows, c, i, j)| {
        let n = rows.len();
        let (i, j) = (i.index(n), j.index(n));
        let m = PolyMatrix::new(rows.clone()).expect("square");
        let det = m.det().expect("homogeneous entries");
        if i != j {
            let mut swapped = m.clone();
            swapped.swap_rows(i, j);
            prop_assert_eq!(swapped.det().expect("det"), det.neg());
            let mut dup = rows.clone();
            dup[j] = dup[i].clone();
            prop_assert!(PolyMatrix::new(dup).expect("square").det().expect("det").is_zero());
        }
        let mut scaled = m.clone();
        scaled.scale_row(i, &c);
        prop_assert_eq!(scaled.det().expect("det"), det.scale(&c));
        Ok(())
    })
}

/// The curve together with its 36 points of order dividing 6.
pub fn torsion() -> &'static (Curve, Vec<CurvePoint>) {
    static CELL: OnceLock<(Curve, Vec<CurvePoint>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let curve = Curve::fermat();
        let s = sextactic_lines().expect("second Hessian");
        let pts = flex_points()
            .expect("flexes")
            .into_iter()
            .chain(sextactic_points(&s).expect("sextactic points"))
            .map(|(_, p)| curve.point(p).expect("on the curve"))
            .collect();
        (curve, pts)
    })
}

pub fn group_axioms() -> Result<u32, String> {
    let (curve, pts) = torsion();
    let idx = || 0..pts.len();
    run((idx(), idx(), idx()), |(a, b, c)| {
        let (p, q, r) = (&pts[a], &pts[b], &pts[c]);
        let o = curve.origin();
        prop_assert_eq!(&curve.add(p, o), p);
        prop_assert_eq!(&curve.add(p, &curve.neg(p)), o);
        prop_assert_eq!(curve.add(p, q), curve.add(q, p));
        prop_assert_eq!(curve.add(&curve.add(p, q), r), curve.add(p, &curve.add(q, r)));
        prop_assert_eq!(&curve.third(p, &curve.third(p, q)), q);
        prop_assert_eq!(&curve.scalar_mul(6, p), o);
        Ok(())
    })
}

pub fn normalization() -> Result<u32, String> {
    run((triple(), nonzero(), proptest::array::uniform3(field_element()), nonzero()), |(c, k, extra, k2)| {
        let p = ProjPoint::new(c.clone()).expect("nonzero");
        prop_assert_eq!(ProjPoint::new(p.coords().clone()).expect("nonzero"), p.clone());
        prop_assert_eq!(ProjPoint::new(c.clone().map(|x| x.mul_ref(&k))).expect("nonzero"), p);
        let l = Line::new(c.clone()).expect("nonzero");
        prop_assert_eq!(Line::new(l.coeffs().clone()).expect("nonzero"), l.clone());
        prop_assert_eq!(Line::new(c.clone().map(|x| x.mul_ref(&k))).expect("nonzero"), l);
        let six = [c[0].clone(), c[1].clone(), c[2].clone(), extra[0].clone(), extra[1].clone(), extra[2].clone()];
        let conic = Conic::new(six.clone()).expect("nonzero");
        prop_assert_eq!(Conic::new(conic.coeffs().clone()).expect("nonzero"), conic.clone());
        prop_assert_eq!(Conic::new(six.map(|x| x.mul_ref(&k2))).expect("nonzero"), conic);
        Ok(())
    })
}

pub fn evaluation_scaling() -> Result<u32, String> {
    run((any_hom_poly(), triple(), nonzero()), |(p, c, k)| {
        let Some(d) = p.degree() else { return Ok(()) };
        let scaled = c.clone().map(|x| x.mul_ref(&k));
        prop_assert_eq!(p.evaluate(&scaled), p.evaluate(&c).mul_ref(&k.pow(d)));
        Ok(())
    })
}

/// Name and runner of every property suite.
pub const SUITES: [(&str, fn() -> Result<u32, String>); 6] = [
    ("field axioms", field_axioms),
    ("Euler relation", euler_relation),
    ("determinant alternation", determinant_alternation),
    ("group axioms", group_axioms),
    ("normalization idempotence", normalization),
    ("evaluation scaling", evaluation_scaling),
];
