use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sextactica::cayley::{self, fermat_cubic, Coefficients};
use sextactica::expected::manifest;
use sextactica::grouplaw::{oracle_conic_subsets, ConicPredicate};
use sextactica::incidence::{
    dual_hesse_lines, dual_hesse_triple_points, hesse_lines, ArrangementSummary, ConicClass, Line, PointCounts,
    ProjPoint,
};
use sextactica::report::Ordered;
use sextactica::verify::{Pipeline, Scope};
use sextactica::Poly;

mod emit;

const THREADS_ENV: &str = "SEXTACTICA_THREADS";

#[derive(Parser)]
#[command(name = "sextactica", version, about = "Exact flexes, sextactic points and conics of the Fermat cubic")]
struct Cli {
    /// Worker threads (default: available parallelism); SEXTACTICA_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The 9 flexes and the 12 lines through them.
    Flexes {
        #[arg(long)]
        json: bool,
    },
    /// Hessian, Omega parts, Psi and the second Hessian of a curve.
    SecondHessian {
        #[arg(long, value_enum, default_value_t = CurveArg::Fermat, conflicts_with = "input")]
        curve: CurveArg,
        /// File holding a homogeneous polynomial in text form.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Weight of the Psi term per (d - 2)^2.
        #[arg(long)]
        psi_factor: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// The 27 sextactic points.
    Sextactic {
        #[arg(long)]
        json: bool,
    },
    /// Conics through six sextactic points.
    Conics {
        /// Print only the number of selected conics.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        /// Keep only conics through this point, e.g. S11.
        #[arg(long)]
        through: Option<String>,
        /// Write the census report to this file.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Line equations and incidence summary of an arrangement.
    Arrangement {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        json: bool,
    },
    /// The level-6 labelling and the label-sum oracles.
    Group {
        /// Print the label table.
        #[arg(long, conflicts_with = "oracle")]
        table: bool,
        /// Compare the conic predicates with the census.
        #[arg(long)]
        oracle: bool,
    },
    /// Recompute everything in a scope and compare with the reference values.
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        /// Print the JSON report on stdout instead of the summary.
        #[arg(long)]
        json: bool,
        /// Weight of the Psi term per (d - 2)^2.
        #[arg(long)]
        psi_factor: Option<i64>,
    },
    /// Write computed objects in a machine-readable format.
    Emit {
        #[arg(value_enum)]
        what: emit::Target,
        #[arg(long, value_enum, default_value_t = emit::Format::Json)]
        format: emit::Format,
        /// Output file (default: stdout).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    Fermat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    All,
    Smooth,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Hesse,
    DualHesse,
    #[value(name = "81lines")]
    Lines81,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Flexes,
    Hessians,
    Sextactic,
    Conics,
    Arrangement,
    Group,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Flexes => Scope::Flexes,
            ScopeArg::Hessians => Scope::Hessians,
            ScopeArg::Sextactic => Scope::Sextactic,
            ScopeArg::Conics => Scope::Conics,
            ScopeArg::Arrangement => Scope::Arrangement,
            ScopeArg::Group => Scope::Group,
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?;
            Ok(Some(n))
        }
        _ => Ok(flag),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = thread_count(cli.threads).and_then(|n| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = n.filter(|&n| n > 0) {
            b = b.num_threads(n);
        }
        Ok(b.build()?)
    });
    let result = pool.and_then(|pool| pool.install(|| run(&cli)));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether all checks passed.
fn run(cli: &Cli) -> Result<bool> {
    let quiet = cli.quiet;
    let progress = move |stage: &str| {
        if !quiet {
            eprintln!("[sextactica] {stage}");
        }
    };
    let default_psi = manifest().coefficients.psi_corrected;
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Flexes { json } => {
            let mut p = Pipeline::new(default_psi, &progress);
            let flexes = p.flexes()?.to_vec();
            let pts: Vec<ProjPoint> = flexes.iter().map(|(_, p)| p.clone()).collect();
            let lines = hesse_lines(&pts)?;
            let bare: Vec<Line> = lines.iter().map(|(_, l)| l.clone()).collect();
            let summary = ArrangementSummary::from_incidence(&bare, &pts);
            if *json {
                let value = json!({
                    "points": flexes.iter().map(|(n, p)| json!({"name": n, "coords": p})).collect::<Vec<_>>(),
                    "lines": lines.iter().map(|(n, l)| json!({"name": n, "equation": l.to_string()})).collect::<Vec<_>>(),
                    "summary": summary,
                });
                write_json(&mut out, &value)?;
            } else {
                for (n, p) in &flexes {
                    writeln!(out, "{n} = {p}")?;
                }
                for (n, l) in &lines {
                    writeln!(out, "{n}: {l:?}")?;
                }
                writeln!(out, "signature {}", summary.signature)?;
            }
        }
        Command::SecondHessian { curve: _, input, psi_factor, json } => {
            let gamma: Poly = match input {
                Some(path) => read_poly(path)?,
                None => fermat_cubic(),
            };
            let d = gamma.degree().ok_or_else(|| anyhow!("the zero polynomial is not a curve"))?;
            let factor = psi_factor.unwrap_or(default_psi);
            progress("second Hessian");
            let h = cayley::hessian(&gamma)?.h;
            let parts = cayley::second_hessian_with(&gamma, Coefficients::with_psi_factor(d, factor))?;
            let named = emit::h2_named_parts(&h, &parts);
            if *json {
                let map: serde_json::Map<String, serde_json::Value> =
                    named.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
                write_json(&mut out, &map)?;
            } else {
                for (k, v) in &named {
                    writeln!(out, "{k} = {v}")?;
                }
            }
        }
        Command::Sextactic { json } => {
            let mut p = Pipeline::new(default_psi, &progress);
            let lambda = p.sextactic()?.lambda.clone();
            let pts = p.sextactic_points()?.to_vec();
            if *json {
                let value = json!({
                    "h2_over_witness": lambda.to_string(),
                    "points": pts.iter().map(|(n, p)| json!({"name": n, "coords": p})).collect::<Vec<_>>(),
                });
                write_json(&mut out, &value)?;
            } else {
                writeln!(out, "H2(F) = {lambda} * (x^3 - y^3)(y^3 - z^3)(z^3 - x^3)")?;
                for (n, p) in &pts {
                    writeln!(out, "{n} = {p}")?;
                }
            }
        }
        Command::Conics { count, class, through, json } => {
            return conics(&mut out, &progress, *count, *class, through.as_deref(), json.as_deref());
        }
        Command::Arrangement { which, json } => {
            let mut p = Pipeline::new(default_psi, &progress);
            let (lines, points): (Vec<Line>, Vec<ProjPoint>) = match which {
                Which::Hesse => {
                    let pts: Vec<ProjPoint> = p.flexes()?.iter().map(|(_, p)| p.clone()).collect();
                    (hesse_lines(&pts)?.into_iter().map(|x| x.1).collect(), pts)
                }
                Which::DualHesse => {
                    let lines = dual_hesse_lines()?;
                    let pts = dual_hesse_triple_points(&lines)?;
                    (lines, pts)
                }
                Which::Lines81 => {
                    let pts: Vec<ProjPoint> = p.sextactic_points()?.iter().map(|(_, p)| p.clone()).collect();
                    (p.split_lines()?.lines.clone(), pts)
                }
            };
            let summary = ArrangementSummary::from_incidence(&lines, &points);
            if *json {
                let value = json!({
                    "lines": lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    "summary": summary,
                });
                write_json(&mut out, &value)?;
            } else {
                for l in &lines {
                    writeln!(out, "{l}")?;
                }
                writeln!(out, "signature {}", summary.signature)?;
            }
        }
        Command::Group { table, oracle } => {
            let mut p = Pipeline::new(default_psi, &progress);
            if *oracle {
                return group_oracle(&mut out, &mut p, &progress);
            }
            if !table {
                bail!("group needs --table or --oracle");
            }
            write_json(&mut out, &emit::group_table(&mut p)?)?;
        }
        Command::Verify { scope, json, psi_factor } => {
            let mut p = Pipeline::new(psi_factor.unwrap_or(default_psi), &progress);
            let report = p.run((*scope).into())?;
            if *json {
                out.write_all(report.to_json().as_bytes())?;
                if !quiet {
                    eprint!("{}", report.summary());
                }
            } else {
                out.write_all(report.summary().as_bytes())?;
            }
            return Ok(report.passed());
        }
        Command::Emit { what, format, output } => {
            let mut p = Pipeline::new(default_psi, &progress);
            let text = emit::render(&mut p, *what, *format)?;
            match output {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(true)
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_poly(path: &Path) -> Result<Poly> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.trim().parse().map_err(|e| anyhow!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct ConicsJson {
    total: usize,
    smooth: usize,
    split: usize,
    per_point: Ordered<PointCounts>,
    lines81: Vec<String>,
    signature: String,
    /// Conics passing the `--class` and `--through` filters.
    selected: usize,
}

fn conics(
    out: &mut impl Write,
    progress: &(dyn Fn(&str) + Sync),
    count: bool,
    class: ClassArg,
    through: Option<&str>,
    json_path: Option<&Path>,
) -> Result<bool> {
    let mut p = Pipeline::new(manifest().coefficients.psi_corrected, progress);
    let names: Vec<String> = p.sextactic_points()?.iter().map(|(n, _)| n.clone()).collect();
    let through = match through {
        Some(name) => Some(names.iter().position(|n| n == name).ok_or_else(|| anyhow!("unknown point {name:?}"))?),
        None => None,
    };
    let census = p.census()?.clone();
    let selected: Vec<_> = census
        .conics
        .iter()
        .filter(|c| match class {
            ClassArg::All => true,
            ClassArg::Smooth => matches!(c.class, ConicClass::Smooth),
            ClassArg::Split => matches!(c.class, ConicClass::TwoLines { .. }),
        })
        .filter(|c| through.is_none_or(|i| c.members.contains(&i)))
        .collect();
    if let Some(path) = json_path {
        let split = p.split_lines()?.clone();
        let mut per_point = Ordered::default();
        for (n, c) in names.iter().zip(&census.per_point) {
            per_point.insert(n.clone(), *c);
        }
        let value = ConicsJson {
            total: census.total,
            smooth: census.smooth,
            split: census.split,
            per_point,
            lines81: split.lines.iter().map(|l| l.to_string()).collect(),
            signature: split.summary.signature,
            selected: selected.len(),
        };
        let mut text = serde_json::to_string_pretty(&value)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if count {
        writeln!(out, "{}", selected.len())?;
    } else {
        for c in &selected {
            let members: Vec<&str> = c.members.iter().map(|&i| names[i].as_str()).collect();
            writeln!(out, "{} {} {}", members.join(","), c.class.name(), c.conic.to_poly())?;
        }
    }
    Ok(true)
}

fn group_oracle(out: &mut impl Write, p: &mut Pipeline<'_>, progress: &(dyn Fn(&str) + Sync)) -> Result<bool> {
    let labels = p.sextactic_labels()?;
    let census = p.census()?.clone();
    progress("label predicates");
    let members: std::collections::BTreeSet<[usize; 6]> = census.conics.iter().map(|c| c.members).collect();
    let mut rows = Vec::new();
    let mut matching = 0;
    for pred in ConicPredicate::ALL {
        let subsets = oracle_conic_subsets(&labels, pred);
        let same = subsets.len() == members.len() && subsets.iter().all(|s| members.contains(s));
        matching += usize::from(same);
        rows.push(json!({
            "predicate": pred.name(),
            "count": subsets.len(),
            "geometric_total": census.total,
            "matches_census": same,
        }));
    }
    write_json(out, &rows)?;
    Ok(matching == 1)
}

/// Names of the flexes and sextactic points.
fn point_names(p: &mut Pipeline<'_>) -> Result<HashMap<ProjPoint, String>> {
    let mut names: HashMap<ProjPoint, String> = p.flexes()?.iter().map(|(n, p)| (p.clone(), n.clone())).collect();
    names.extend(p.sextactic_points()?.iter().map(|(n, p)| (p.clone(), n.clone())));
    Ok(names)
}
