//! The verification pipeline: recomputes every configuration from scratch and
//! compares it with the reference manifest.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cayley::{self, dual_hesse_product, extended_fermat_arrangement, fermat_cubic, CayleyError, Coefficients};
use crate::expected::{counts, manifest, ManifestError};
use crate::grouplaw::{
    oracle_collinear_triples, oracle_conic_subsets, ConicPredicate, Curve, CurvePoint, GroupError, Label,
    LevelStructure,
};
use crate::incidence::{
    dual_hesse_lines, dual_hesse_triple_points, five_point_scan, flex_points, hesse_lines,
    lines_product_integrality, sextactic_lines_with, sextactic_points_computed, name_points, conic_census,
    split_conic_lines, ArrangementSummary, ConicCensus, FivePointReport, IncidenceError, Integrality, Line,
    ProjPoint, Sextactic, SplitLines,
};
use crate::polyring::{PolyError, Var};
use crate::report::{CensusReport, NamedArrangement};
use crate::{FieldElement, Poly, Ring};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    All,
    Flexes,
    Hessians,
    Sextactic,
    Conics,
    Arrangement,
    Group,
}

impl Scope {
    pub const PARTS: [Scope; 6] =
        [Scope::Flexes, Scope::Hessians, Scope::Sextactic, Scope::Conics, Scope::Arrangement, Scope::Group];

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Flexes => "flexes",
            Scope::Hessians => "hessians",
            Scope::Sextactic => "sextactic",
            Scope::Conics => "conics",
            Scope::Arrangement => "arrangement",
            Scope::Group => "group",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Scope::All)
            .chain(Scope::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown scope {s:?}"))
    }
}

/// Lazily computed intermediate results, shared between scopes.
pub struct Pipeline<'a> {
    psi_factor: i64,
    progress: &'a (dyn Fn(&str) + Sync),
    flexes: Option<Vec<(String, ProjPoint)>>,
    sextactic: Option<Sextactic>,
    sextactic_points: Option<Vec<(String, ProjPoint)>>,
    census: Option<ConicCensus>,
    split: Option<SplitLines>,
    integrality: Option<Integrality>,
    curve: Curve,
    level: Option<LevelStructure>,
}

fn quiet(_: &str) {}

impl Default for Pipeline<'_> {
    fn default() -> Self {
        Self::new(manifest().coefficients.psi_corrected, &quiet)
    }
}

impl<'a> Pipeline<'a> {
    /// `psi_factor` is the weight of the `Psi` term of the second Hessian per
    /// `(d - 2)^2`; `progress` receives a line at the start of each stage.
    pub fn new(psi_factor: i64, progress: &'a (dyn Fn(&str) + Sync)) -> Self {
        Self {
            psi_factor,
            progress,
            flexes: None,
            sextactic: None,
            sextactic_points: None,
            census: None,
            split: None,
            integrality: None,
            curve: Curve::fermat(),
            level: None,
        }
    }

    pub fn psi_factor(&self) -> i64 {
        self.psi_factor
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn flexes(&mut self) -> Result<&[(String, ProjPoint)], VerifyError> {
        if self.flexes.is_none() {
            (self.progress)("flex points");
            self.flexes = Some(flex_points()?);
        }
        Ok(self.flexes.as_deref().unwrap_or_default())
    }

    pub fn sextactic(&mut self) -> Result<&Sextactic, VerifyError> {
        if self.sextactic.is_none() {
            (self.progress)("second Hessian");
            self.sextactic = Some(sextactic_lines_with(Coefficients::with_psi_factor(3, self.psi_factor))?);
        }
        Ok(self.sextactic.as_ref().expect("just computed"))
    }

    /// The sextactic points named after the reference list.
    pub fn sextactic_points(&mut self) -> Result<&[(String, ProjPoint)], VerifyError> {
        if self.sextactic_points.is_none() {
            let s = self.sextactic()?.clone();
            (self.progress)("sextactic points");
            let pts = sextactic_points_computed(&s)?;
            let reference = manifest().sextactic_corrected()?;
            self.sextactic_points = Some(name_points(&pts, &reference)?);
        }
        Ok(self.sextactic_points.as_deref().unwrap_or_default())
    }

    fn bare_points(&mut self) -> Result<Vec<ProjPoint>, VerifyError> {
        Ok(self.sextactic_points()?.iter().map(|(_, p)| p.clone()).collect())
    }

    pub fn census(&mut self) -> Result<&ConicCensus, VerifyError> {
        if self.census.is_none() {
            let pts = self.bare_points()?;
            (self.progress)("conic census over all 6-subsets");
            self.census = Some(conic_census(&pts)?);
        }
        Ok(self.census.as_ref().expect("just computed"))
    }

    pub fn split_lines(&mut self) -> Result<&SplitLines, VerifyError> {
        if self.split.is_none() {
            let pts = self.bare_points()?;
            self.census()?;
            (self.progress)("split conic lines");
            let census = self.census.as_ref().expect("computed above");
            self.split = Some(split_conic_lines(census, &pts)?);
        }
        Ok(self.split.as_ref().expect("just computed"))
    }

    pub fn integrality(&mut self) -> Result<&Integrality, VerifyError> {
        if self.integrality.is_none() {
            let lines = self.split_lines()?.lines.clone();
            (self.progress)("product of the split lines");
            self.integrality = Some(lines_product_integrality(&lines));
        }
        Ok(self.integrality.as_ref().expect("just computed"))
    }

    /// Flexes followed by sextactic points, as curve points.
    pub fn six_torsion(&mut self) -> Result<Vec<CurvePoint>, VerifyError> {
        let mut pts: Vec<ProjPoint> = self.flexes()?.iter().map(|(_, p)| p.clone()).collect();
        pts.extend(self.bare_points()?);
        Ok(pts.into_iter().map(|p| self.curve.point(p)).collect::<Result<_, _>>()?)
    }

    pub fn level(&mut self) -> Result<&LevelStructure, VerifyError> {
        if self.level.is_none() {
            let torsion = self.six_torsion()?;
            (self.progress)("level structure");
            self.level = Some(LevelStructure::build(&self.curve, &torsion)?);
        }
        Ok(self.level.as_ref().expect("just computed"))
    }

    /// Labels of the sextactic points, in reference order.
    pub fn sextactic_labels(&mut self) -> Result<Vec<Label>, VerifyError> {
        let pts = self.bare_points()?;
        self.level()?;
        labels_of(&self.curve, self.level.as_ref().expect("computed above"), &pts)
    }

    pub fn run(&mut self, scope: Scope) -> Result<CensusReport, VerifyError> {
        let mut report = CensusReport::new(scope.name());
        let parts: Vec<Scope> = if scope == Scope::All { Scope::PARTS.to_vec() } else { vec![scope] };
        for part in parts {
            match part {
                Scope::Flexes => self.check_flexes(&mut report)?,
                Scope::Hessians => self.check_hessians(&mut report)?,
                Scope::Sextactic => self.check_sextactic(&mut report)?,
                Scope::Conics => self.check_conics(&mut report)?,
                Scope::Arrangement => self.check_arrangement(&mut report)?,
                Scope::Group => self.check_group(&mut report)?,
                Scope::All => unreachable!("expanded above"),
            }
        }
        Ok(report)
    }

    fn check_flexes(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let f: Poly = fermat_cubic();
        let h = cayley::hessian(&f)?.h;
        let xyz = Poly::monomial(FieldElement::from_i64(1), [1, 1, 1]);
        let k = h.proportional(&xyz);
        let got = k.as_ref().map_or_else(|| short(&h), |k| format!("{k} times it"));
        r.check("hessian_proportional_to_xyz", k.is_some(), "multiple of xyz", got);

        let flexes: Vec<ProjPoint> = self.flexes()?.iter().map(|(_, p)| p.clone()).collect();
        r.check_eq("flex_count", c.flexes, flexes.len());
        let reference: HashSet<ProjPoint> = manifest().flexes()?.into_iter().map(|x| x.1).collect();
        let same = flexes.iter().collect::<HashSet<_>>() == reference.iter().collect::<HashSet<_>>();
        r.check("flexes_match_reference", same, "reference set", if same { "reference set" } else { "different set" });
        let on_axes: Vec<usize> = (0..3)
            .map(|i| {
                let mut e = [0; 3];
                e[i] = 1;
                let l = Line::from_i64(e);
                flexes.iter().filter(|p| l.contains(p)).count()
            })
            .collect();
        r.check_eq("flexes_per_coordinate_line", "3,3,3".to_string(), join(&on_axes));

        let hesse: Vec<Line> = hesse_lines(&flexes)?.into_iter().map(|x| x.1).collect();
        r.check_eq("hesse_line_count", c.hesse_lines, hesse.len());
        let summary = ArrangementSummary::from_incidence(&hesse, &flexes);
        r.check_eq("hesse_signature", c.hesse_signature.clone(), summary.signature.clone());
        r.arrangements.push(NamedArrangement { name: "hesse".into(), summary });

        let dual = dual_hesse_lines()?;
        let triple = dual_hesse_triple_points(&dual)?;
        r.check_eq("dual_hesse_line_count", c.dual_hesse_lines, dual.len());
        r.check_eq("dual_hesse_point_count", c.dual_hesse_points, triple.len());
        let summary = ArrangementSummary::from_incidence(&dual, &triple);
        r.check_eq("dual_hesse_signature", c.dual_hesse_signature.clone(), summary.signature.clone());
        r.arrangements.push(NamedArrangement { name: "dual_hesse".into(), summary });

        let witness: Poly = dual_hesse_product();
        let orders = triple
            .iter()
            .map(|p| witness.vanishing_order(p.coords()))
            .collect::<Result<BTreeSet<u32>, _>>()?;
        let want = BTreeSet::from([c.witness_vanishing_order]);
        r.check("witness_vanishing_order", orders == want, join(&want), join(&orders));
        Ok(())
    }

    fn check_hessians(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let f: Poly = fermat_cubic();
        let bundle = cayley::hessian(&f)?;
        let xyz = Poly::monomial(FieldElement::from_i64(1), [1, 1, 1]);
        r.check_eq("hessian_degree", c.hessian_degree.to_string(), degree(&bundle.h));
        match bundle.h.proportional(&xyz) {
            Some(k) => r.scalars.insert("hessian_over_xyz", k.to_string()),
            None => r.check("hessian_proportional_to_xyz", false, "multiple of xyz", short(&bundle.h)),
        }

        (self.progress)("second Hessian parts");
        let parts = cayley::second_hessian_with(&f, Coefficients::with_psi_factor(3, self.psi_factor))?;
        let leibniz = Var::ALL.iter().enumerate().all(|(i, &v)| {
            parts.omega_gamma_grad[i].try_add(&parts.omega_h_grad[i]).ok() == Some(parts.omega.derivative(v))
        });
        r.check("omega_leibniz_identity", leibniz, "holds", if leibniz { "holds" } else { "fails" });
        r.check_eq("second_hessian_degree", c.second_hessian_degree.to_string(), degree(&parts.h2));
        r.check_eq("second_hessian_degree_formula", 12 * 3 - 27, c.second_hessian_degree);
        let witness: Poly = dual_hesse_product();
        let lambda = parts.h2.proportional(&witness);
        r.check(
            "second_hessian_proportional_to_witness",
            lambda.is_some(),
            "multiple of (x^3-y^3)(y^3-z^3)(z^3-x^3)",
            lambda.as_ref().map_or_else(|| short(&parts.h2), |l| format!("{l} times it")),
        );
        if let Some(l) = lambda {
            r.scalars.insert("h2_over_witness", l.to_string());
        }
        r.scalars.insert("psi_weight", (-self.psi_factor).to_string());

        let product = bundle.h.mul(&parts.h2);
        let ext: Poly = extended_fermat_arrangement();
        r.check_eq("extended_fermat_degree", "12".to_string(), degree(&product));
        let ok = product.proportional(&ext).is_some();
        r.check("extended_fermat_proportional", ok, "multiple of xyz*(x^3-y^3)(y^3-z^3)(z^3-x^3)", short(&product));
        Ok(())
    }

    fn check_sextactic(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let f: Poly = fermat_cubic();
        let s = self.sextactic()?.clone();
        let computed = sextactic_points_computed(&s)?;
        r.check_eq("sextactic_count", c.sextactic_points, computed.len());
        let distinct: HashSet<&ProjPoint> = computed.iter().collect();
        r.check_eq("sextactic_distinct", computed.len(), distinct.len());
        let on = computed.iter().filter(|p| p.on_curve(&f) && p.on_curve(&s.h2)).count();
        r.check_eq("sextactic_on_f_and_h2", computed.len(), on);
        let bezout = 3 * s.h2.degree().unwrap_or(0) as usize;
        r.check_eq("sextactic_bezout_bound", bezout, computed.len());

        let named = self.sextactic_points()?.to_vec();
        r.check_eq("sextactic_match_reference", c.sextactic_points, named.len());
        for ((name, listed), (_, p)) in manifest().sextactic_verbatim()?.iter().zip(&named) {
            if listed != p {
                let on = if listed.on_curve(&f) { "on" } else { "not on" };
                r.notes.push(format!("{name}: reference {listed} is {on} the curve; computed {p}"));
            }
        }
        let ext: Poly = extended_fermat_arrangement();
        let flexes: Vec<ProjPoint> = self.flexes()?.iter().map(|(_, p)| p.clone()).collect();
        let zeros = flexes.iter().chain(named.iter().map(|(_, p)| p)).filter(|p| p.on_curve(&ext)).count();
        r.check_eq("extended_fermat_vanishes_on_six_torsion", c.torsion_6, zeros);
        Ok(())
    }

    fn check_conics(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let names: Vec<String> = self.sextactic_points()?.iter().map(|(n, _)| n.clone()).collect();
        let census = self.census()?.clone();
        r.check_eq("six_subsets_scanned", c.six_subsets, census.subsets_scanned);
        r.check_eq("conics_total", c.conics_total, census.total);
        r.check_eq("conics_smooth", c.conics_smooth, census.smooth);
        r.check_eq("conics_split", c.conics_split, census.split);
        r.check_eq("conics_double_line", c.conics_double_line, census.double_line);
        r.check_eq("conics_partition", census.total, census.smooth + census.split + census.double_line);
        r.check("conics_at_most_six_points", census.max_points_on_conic <= 6, "<= 6", census.max_points_on_conic);
        let per: BTreeSet<usize> = census.per_point.iter().map(|p| p.total).collect();
        let per_smooth: BTreeSet<usize> = census.per_point.iter().map(|p| p.smooth).collect();
        r.check_eq("conics_per_point", c.conics_per_point.to_string(), join(&per));
        r.check_eq("smooth_conics_per_point", c.smooth_conics_per_point.to_string(), join(&per_smooth));
        let n = c.sextactic_points;
        r.check_eq("identity_total_minus_smooth", c.conics_split, c.conics_total - c.conics_smooth);
        r.check_eq("identity_per_point", c.conics_per_point * n, c.conics_total * 6);
        r.check_eq("identity_smooth_per_point", c.smooth_conics_per_point * n, c.conics_smooth * 6);
        r.counts.total = Some(census.total);
        r.counts.smooth = Some(census.smooth);
        r.counts.split = Some(census.split);
        for (name, p) in names.iter().zip(&census.per_point) {
            r.counts.per_point.insert(name.clone(), *p);
        }
        Ok(())
    }

    fn check_arrangement(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let split = self.split_lines()?.clone();
        r.check_eq("split_line_count", c.split_lines, split.lines.len());
        r.check_eq("split_lines_signature", c.split_lines_signature.clone(), split.summary.signature.clone());
        let (a, b) = split.summary.incidences();
        r.check("split_lines_incidences", a == b && a == c.split_lines * 3, c.split_lines * 3, format!("{a} = {b}"));
        r.check_eq("split_conics_unfactored", 0, split.unfactored);
        r.check_eq("split_conics_three_points_per_line", 0, split.unbalanced);
        r.check_eq("split_conic_vertex_in_set", 0, split.vertex_in_set);
        let integ = self.integrality()?.clone();
        r.check_eq("lines_product_degree", c.split_lines_product_degree.to_string(), degree(&integ.product));
        r.check("lines_product_integral", integ.integral, true, integ.integral);
        r.check("lines_product_cyclic_invariant", integ.cyclic_invariant, true, integ.cyclic_invariant);
        r.counts.lines81 = split.lines.iter().map(|l| l.to_poly().to_string()).collect();
        r.counts.signature = Some(split.summary.signature.clone());
        r.arrangements.push(NamedArrangement { name: "split_lines".into(), summary: split.summary });
        Ok(())
    }

    fn check_group(&mut self, r: &mut CensusReport) -> Result<(), VerifyError> {
        let c = counts();
        let flexes: Vec<ProjPoint> = self.flexes()?.iter().map(|(_, p)| p.clone()).collect();
        let sextactic = self.bare_points()?;
        let torsion = self.six_torsion()?;
        let curve = self.curve.clone();
        (self.progress)("torsion subgroups");
        let t2 = curve.torsion(2, &torsion)?;
        let t3 = curve.torsion(3, &torsion)?;
        let t6 = curve.torsion(6, &torsion)?;
        r.check_eq("torsion_2", c.torsion_2, t2.len());
        r.check_eq("torsion_3", c.torsion_3, t3.len());
        r.check_eq("torsion_6", c.torsion_6, t6.len());
        let t3_set: HashSet<&ProjPoint> = t3.iter().map(CurvePoint::point).collect();
        let flex_set: HashSet<&ProjPoint> = flexes.iter().collect();
        r.check("torsion_3_is_flexes", t3_set == flex_set, "flex set", t3_set.len());
        let rest: HashSet<&ProjPoint> = t6.iter().map(CurvePoint::point).filter(|p| !t3_set.contains(p)).collect();
        let sext_set: HashSet<&ProjPoint> = sextactic.iter().collect();
        r.check("sextactic_is_torsion_6_minus_3", rest == sext_set, "sextactic set", rest.len());
        let o = curve.origin();
        let six_not_three = torsion[flexes.len()..]
            .iter()
            .filter(|p| &curve.scalar_mul(6, p) == o && &curve.scalar_mul(3, p) != o)
            .count();
        r.check_eq("sextactic_six_not_three_division", c.sextactic_points, six_not_three);

        let level = self.level()?.clone();
        (self.progress)("homomorphism check");
        let pairs = level.check_homomorphism(&curve)?;
        r.check_eq("level_homomorphism_pairs", c.torsion_6 * c.torsion_6, pairs);
        r.check_eq("level_origin_label", "Some((0, 0))".to_string(), format!("{:?}", level.label(curve.origin())));
        let flex_labels = labels_of(&curve, &level, &flexes)?;
        let even = flex_labels.iter().all(|l| l.0 % 2 == 0 && l.1 % 2 == 0);
        let distinct: HashSet<Label> = flex_labels.iter().copied().collect();
        r.check("flex_labels_even", even && distinct.len() == flexes.len(), "{0,2,4}^2", format!("{flex_labels:?}"));
        let labels = labels_of(&curve, &level, &sextactic)?;
        let odd = labels.iter().all(|l| l.0 % 2 == 1 || l.1 % 2 == 1);
        r.check("sextactic_labels_odd", odd, "a or b odd", if odd { "a or b odd" } else { "even label found" });

        let triples = oracle_collinear_triples(&labels);
        r.check_eq("collinear_triples", c.collinear_triples, triples.len());
        let split = self.split_lines()?.clone();
        let geometric: BTreeSet<Vec<usize>> = split.triples.iter().cloned().collect();
        let oracle: BTreeSet<Vec<usize>> = triples.iter().map(|t| t.to_vec()).collect();
        r.check("collinear_triples_match_lines", geometric == oracle, "identical", diff_note(&geometric, &oracle));
        let flex_triples = oracle_collinear_triples(&flex_labels);
        r.check_eq("flex_triples", c.flex_triples, flex_triples.len());
        let hesse: Vec<Line> = hesse_lines(&flexes)?.into_iter().map(|x| x.1).collect();
        let hesse_triples: BTreeSet<Vec<usize>> = hesse
            .iter()
            .map(|l| (0..flexes.len()).filter(|&i| l.contains(&flexes[i])).collect())
            .collect();
        let oracle: BTreeSet<Vec<usize>> = flex_triples.iter().map(|t| t.to_vec()).collect();
        r.check("flex_triples_match_hesse", hesse_triples == oracle, "identical", diff_note(&hesse_triples, &oracle));

        (self.progress)("label predicates");
        let census = self.census()?.clone();
        let members: BTreeSet<[usize; 6]> = census.conics.iter().map(|c| c.members).collect();
        let mut matching = Vec::new();
        let mut predicate_counts = Vec::new();
        for p in ConicPredicate::ALL {
            let subsets = oracle_conic_subsets(&labels, p);
            r.counts.predicates.insert(p.name(), subsets.len());
            predicate_counts.push(subsets.len());
            if subsets.len() == census.total {
                matching.push((p, subsets));
            }
        }
        r.check_eq("conic_predicates_matching", 1, matching.len());
        if let [(p, subsets)] = matching.as_slice() {
            r.conic_predicate = Some(p.name().to_string());
            let same = subsets.iter().copied().collect::<BTreeSet<_>>() == members;
            r.check("conic_predicate_matches_census", same, "identical", diff_note(&members, &subsets.iter().copied().collect()));
        }

        (self.progress)("alternative generators");
        let alternatives: Vec<(CurvePoint, CurvePoint)> =
            LevelStructure::generator_pairs(&curve, &torsion).skip(1).step_by(37).take(3).collect();
        let mut stable = alternatives.len() == 3;
        for (g1, g2) in alternatives {
            let alt = LevelStructure::with_generators(&curve, &torsion, g1, g2)?;
            let alt_labels = labels_of(&curve, &alt, &sextactic)?;
            stable &= oracle_collinear_triples(&alt_labels).len() == triples.len();
            let counts: Vec<usize> =
                ConicPredicate::ALL.iter().map(|&p| oracle_conic_subsets(&alt_labels, p).len()).collect();
            stable &= counts == predicate_counts;
        }
        r.check("generator_independence", stable, "same counts for 3 other generator pairs", stable);

        (self.progress)("five-point conics");
        let five: FivePointReport = five_point_scan(&curve, &level, &sextactic, &labels)?;
        r.check_eq("five_subsets_scanned", c.five_subsets, five.subsets);
        let classified = five.degenerate + five.on_six_point_conic + five.tangent_at_member + five.flex_residual + five.other;
        r.check_eq("five_point_partition", five.subsets, classified);
        r.check_eq("five_point_on_census_conics", census.total * 6, five.on_six_point_conic);
        r.check("five_point_tangent_exists", five.tangent_at_member > 0, "> 0", five.tangent_at_member);
        r.check("five_point_bezout", five.max_intersection <= 6, "<= 6", five.max_intersection);
        r.check("five_point_certified", five.certified, true, five.certified);
        r.counts.five_point = Some(five);
        Ok(())
    }
}

fn labels_of(curve: &Curve, level: &LevelStructure, pts: &[ProjPoint]) -> Result<Vec<Label>, VerifyError> {
    pts.iter()
        .map(|p| {
            let q = curve.point(p.clone())?;
            level.label(&q).ok_or_else(|| VerifyError::Group(GroupError::NotBijective))
        })
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn degree(p: &Poly) -> String {
    p.degree().map_or_else(|| "zero".to_string(), |d| d.to_string())
}

fn short(p: &Poly) -> String {
    match p.degree() {
        Some(d) => format!("degree {d} with {} terms", p.num_terms()),
        None => "0".to_string(),
    }
}

fn diff_note<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> String {
    if a == b {
        "identical".into()
    } else {
        format!("{} vs {} entries, {} shared", a.len(), b.len(), a.intersection(b).count())
    }
}
