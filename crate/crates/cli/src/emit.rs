use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use sextactica::cayley::{self, fermat_cubic, SecondHessianParts};
use sextactica::incidence::ProjPoint;
use sextactica::verify::Pipeline;
use sextactica::{FieldElement, Poly};

use crate::point_names;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    /// Flexes and sextactic points.
    Points,
    /// The 81 lines of the split conics.
    Lines,
    /// The census conics.
    Conics,
    /// Hessian, Omega parts, Psi and H2 of the Fermat cubic.
    H2Parts,
    /// The level-6 labels.
    GroupTable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    PolyText,
}

pub fn h2_named_parts(h: &Poly, parts: &SecondHessianParts<FieldElement>) -> Vec<(String, Poly)> {
    let mut out = vec![("H".to_string(), h.clone()), ("Omega".to_string(), parts.omega.clone())];
    for (i, v) in ["x", "y", "z"].iter().enumerate() {
        out.push((format!("Omega_Gamma_{v}"), parts.omega_gamma_grad[i].clone()));
    }
    for (i, v) in ["x", "y", "z"].iter().enumerate() {
        out.push((format!("Omega_H_{v}"), parts.omega_h_grad[i].clone()));
    }
    out.push(("Psi".to_string(), parts.psi.clone()));
    out.push(("H2".to_string(), parts.h2.clone()));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupRow {
    pub point: String,
    pub label: [u8; 2],
    pub order: u32,
}

/// The label table, flexes first.
pub fn group_table(p: &mut Pipeline<'_>) -> Result<Vec<GroupRow>> {
    let names = point_names(p)?;
    let level = p.level()?.clone();
    let mut rows: Vec<GroupRow> = level
        .table(p.curve())
        .into_iter()
        .map(|e| GroupRow {
            point: names.get(e.point.point()).cloned().unwrap_or_default(),
            label: [e.label.0, e.label.1],
            order: e.order,
        })
        .collect();
    rows.sort_by_key(|r| sort_key(&r.point));
    Ok(rows)
}

fn sort_key(name: &str) -> usize {
    let n: usize = name[1..].parse().unwrap_or(usize::MAX / 2);
    if name.starts_with('P') {
        n
    } else {
        100 + n
    }
}

fn json_text(v: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn lines_text(rows: impl IntoIterator<Item = String>) -> String {
    rows.into_iter().map(|r| r + "\n").collect()
}

fn coords_text(p: &ProjPoint) -> [String; 3] {
    p.coords().clone().map(|c| c.to_bracketed())
}

pub fn render(p: &mut Pipeline<'_>, what: Target, format: Format) -> Result<String> {
    match what {
        Target::Points => {
            let mut pts: Vec<(String, &str, ProjPoint)> =
                p.flexes()?.iter().map(|(n, q)| (n.clone(), "flex", q.clone())).collect();
            pts.extend(p.sextactic_points()?.iter().map(|(n, q)| (n.clone(), "sextactic", q.clone())));
            match format {
                Format::Json => json_text(
                    &pts.iter().map(|(n, k, q)| json!({"name": n, "kind": k, "coords": q})).collect::<Vec<_>>(),
                ),
                Format::Csv => csv_text(
                    &["name", "kind", "x", "y", "z"],
                    pts.iter().map(|(n, k, q)| {
                        let [x, y, z] = coords_text(q);
                        vec![n.clone(), k.to_string(), x, y, z]
                    }),
                ),
                Format::PolyText => Ok(lines_text(pts.iter().map(|(n, _, q)| format!("{n} = {q}")))),
            }
        }
        Target::Lines => {
            let names: Vec<String> = p.sextactic_points()?.iter().map(|(n, _)| n.clone()).collect();
            let split = p.split_lines()?.clone();
            let on = |t: &Vec<usize>| t.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
            match format {
                Format::Json => json_text(
                    &split
                        .lines
                        .iter()
                        .zip(&split.triples)
                        .map(|(l, t)| json!({"coeffs": l, "equation": l.to_string(), "points": on(t)}))
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => csv_text(
                    &["a", "b", "c", "points"],
                    split.lines.iter().zip(&split.triples).map(|(l, t)| {
                        let mut row: Vec<String> = l.coeffs().iter().map(|c| c.to_bracketed()).collect();
                        row.push(on(t).join(" "));
                        row
                    }),
                ),
                Format::PolyText => Ok(lines_text(split.lines.iter().map(|l| l.to_string()))),
            }
        }
        Target::Conics => {
            let names: Vec<String> = p.sextactic_points()?.iter().map(|(n, _)| n.clone()).collect();
            let census = p.census()?.clone();
            let members = |m: &[usize; 6]| m.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
            match format {
                Format::Json => json_text(
                    &census
                        .conics
                        .iter()
                        .map(|c| {
                            json!({
                                "points": members(&c.members),
                                "class": c.class.name(),
                                "coeffs": c.conic.coeffs(),
                                "equation": c.conic.to_poly().to_string(),
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => csv_text(
                    &["points", "class", "equation"],
                    census.conics.iter().map(|c| {
                        vec![members(&c.members).join(" "), c.class.name().to_string(), c.conic.to_poly().to_string()]
                    }),
                ),
                Format::PolyText => Ok(lines_text(census.conics.iter().map(|c| c.conic.to_poly().to_string()))),
            }
        }
        Target::H2Parts => {
            let f: Poly = fermat_cubic();
            let h = cayley::hessian(&f)?.h;
            let coeffs = cayley::Coefficients::with_psi_factor(3, p.psi_factor());
            let parts = cayley::second_hessian_with(&f, coeffs)?;
            let named = h2_named_parts(&h, &parts);
            match format {
                Format::Json => {
                    let map: serde_json::Map<String, Value> =
                        named.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
                    json_text(&map)
                }
                Format::Csv => csv_text(&["part", "polynomial"], named.iter().map(|(k, v)| vec![k.clone(), v.to_string()])),
                Format::PolyText => Ok(lines_text(named.iter().map(|(k, v)| format!("{k} = {v}")))),
            }
        }
        Target::GroupTable => {
            let rows = group_table(p)?;
            match format {
                Format::Json => json_text(&rows),
                Format::Csv => csv_text(
                    &["point", "a", "b", "order"],
                    rows.iter().map(|r| {
                        vec![r.point.clone(), r.label[0].to_string(), r.label[1].to_string(), r.order.to_string()]
                    }),
                ),
                Format::PolyText => Ok(lines_text(
                    rows.iter().map(|r| format!("{} ({}, {}) order {}", r.point, r.label[0], r.label[1], r.order)),
                )),
            }
        }
    }
}
