//! The reference manifest: every reference constant used by the checks.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::exactfield::FieldError;
use crate::incidence::{IncidenceError, Line, ProjPoint};
use crate::FieldElement;

const MANIFEST: &str = include_str!("../data/expected.toml");

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest does not parse: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("entry {name}: {source}")]
    Field { name: String, source: FieldError },
    #[error("entry {name}: {source}")]
    Incidence { name: String, source: IncidenceError },
    #[error("erratum for unknown entry {0}")]
    UnknownErratum(String),
}

#[derive(Debug, Clone, Deserialize)]
pub struct Counts {
    pub flexes: usize,
    pub hesse_lines: usize,
    pub hesse_signature: String,
    pub dual_hesse_lines: usize,
    pub dual_hesse_points: usize,
    pub dual_hesse_signature: String,
    pub hessian_degree: u32,
    pub second_hessian_degree: u32,
    pub sextactic_points: usize,
    pub six_subsets: usize,
    pub five_subsets: usize,
    pub conics_total: usize,
    pub conics_smooth: usize,
    pub conics_split: usize,
    pub conics_double_line: usize,
    pub conics_per_point: usize,
    pub smooth_conics_per_point: usize,
    pub split_lines: usize,
    pub split_lines_signature: String,
    pub split_lines_product_degree: u32,
    pub torsion_2: usize,
    pub torsion_3: usize,
    pub torsion_6: usize,
    pub collinear_triples: usize,
    pub flex_triples: usize,
    pub witness_vanishing_order: u32,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PsiCoefficients {
    pub psi_corrected: i64,
    pub psi_original: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NamedTriple {
    pub name: String,
    #[serde(alias = "coeffs")]
    pub coords: [String; 3],
}

impl NamedTriple {
    fn values(&self) -> Result<[FieldElement; 3], ManifestError> {
        let parse = |s: &String| {
            FieldElement::parse_expr(s).map_err(|source| ManifestError::Field { name: self.name.clone(), source })
        };
        Ok([parse(&self.coords[0])?, parse(&self.coords[1])?, parse(&self.coords[2])?])
    }

    pub fn point(&self) -> Result<ProjPoint, ManifestError> {
        ProjPoint::new(self.values()?).map_err(|source| ManifestError::Incidence { name: self.name.clone(), source })
    }

    pub fn line(&self) -> Result<Line, ManifestError> {
        Line::new(self.values()?).map_err(|source| ManifestError::Incidence { name: self.name.clone(), source })
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub counts: Counts,
    pub coefficients: PsiCoefficients,
    pub flex_points: Vec<NamedTriple>,
    pub hesse_lines: Vec<NamedTriple>,
    pub sextactic_points: Vec<NamedTriple>,
    #[serde(default)]
    pub sextactic_errata: Vec<NamedTriple>,
}

pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
    Ok(toml::from_str(text)?)
}

/// The embedded manifest.
pub fn manifest() -> &'static Manifest {
    static CELL: OnceLock<Manifest> = OnceLock::new();
    CELL.get_or_init(|| parse(MANIFEST).expect("embedded manifest is valid"))
}

pub fn counts() -> &'static Counts {
    &manifest().counts
}

fn points(list: &[NamedTriple]) -> Result<Vec<(String, ProjPoint)>, ManifestError> {
    list.iter().map(|e| Ok((e.name.clone(), e.point()?))).collect()
}

impl Manifest {
    pub fn flexes(&self) -> Result<Vec<(String, ProjPoint)>, ManifestError> {
        points(&self.flex_points)
    }

    pub fn hesse(&self) -> Result<Vec<(String, Line)>, ManifestError> {
        self.hesse_lines.iter().map(|e| Ok((e.name.clone(), e.line()?))).collect()
    }

    /// The sextactic list exactly as listed in the manifest.
    pub fn sextactic_verbatim(&self) -> Result<Vec<(String, ProjPoint)>, ManifestError> {
        points(&self.sextactic_points)
    }

    /// The sextactic list with the errata applied.
    pub fn sextactic_corrected(&self) -> Result<Vec<(String, ProjPoint)>, ManifestError> {
        let mut fixes: BTreeMap<&str, &NamedTriple> = BTreeMap::new();
        for e in &self.sextactic_errata {
            if !self.sextactic_points.iter().any(|p| p.name == e.name) {
                return Err(ManifestError::UnknownErratum(e.name.clone()));
            }
            fixes.insert(&e.name, e);
        }
        self.sextactic_points
            .iter()
            .map(|e| {
                let src = fixes.get(e.name.as_str()).copied().unwrap_or(e);
                Ok((e.name.clone(), src.point()?))
            })
            .collect()
    }
}
