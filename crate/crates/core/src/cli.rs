//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or I/O failure, 2 numerical
//! degeneracy of the curve (a JSON diagnostic goes to stderr), 3 when
//! `gauss-bonnet` exceeds `--tol-residual`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::curve::{cusp_params, Curve, GenericityReport};
use crate::error::{Error, Result};
use crate::evolutoid::{
    area_identity, asymptote_lines, area_inequality, evolutoid_point, singular_params, AreaIdentity, AreaInequality,
    EvolutoidSpec,
};
use crate::front::{classify_sigma, extract_sigma, mesh_front};
use crate::gauss_bonnet::gauss_bonnet_check;
use crate::geom::Vec2;
use crate::io::export::{self, fmt, point_row, Table};
use crate::io::spec::{parse_curve_spec, CurveSpec};
use crate::io::svg::{write_svg, Layer, Marker, PlotScene, Style};
use crate::ses::{ses_inflexions, ses_point, ses_singularities};

#[derive(Debug, Parser)]
#[command(name = "curvelab", version, about = "Evolutoids, singular evolutoid sets and evolutoid fronts of planar curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CurveArg {
    /// Curve specification (JSON).
    #[arg(long, value_name = "FILE")]
    pub curve: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Base,
    Ses,
    Family,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plot the curve, its SES and a family of evolutoids as SVG.
    Show {
        #[command(flatten)]
        curve: CurveArg,
        /// Layers to draw; always stacked as base, family, ses.
        #[arg(long, value_delimiter = ',', default_value = "base,ses,family")]
        what: Vec<What>,
        /// Evolutoid angles for the family layer, e.g. `pi/6,pi/2`.
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true,
              default_value = "pi/6,pi/3,pi/2,2pi/3,5pi/6")]
        alphas: Vec<f64>,
        /// Also draw evolutoid asymptotes (parametric curves).
        #[arg(long)]
        asymptotes: bool,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Sample an evolutoid or list its singular points as CSV.
    #[command(after_help = "CSV columns:\n  samples:    param,x,y\n  --singular: param,alpha,x,y,kind,rho_s1,rho_s2  (kind: cusp|borderline)")]
    Evolutoid {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        /// Write singular points instead of samples.
        #[arg(long)]
        singular: bool,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Sample the singular evolutoid set or classify its special points as CSV.
    #[command(after_help = "CSV columns:\n  samples:    param,x,y,alpha\n  --classify: param,x,y,feature,kind  (feature: singular|inflexion; \
                            kind: cusp|degenerate|inflexion|undulation)")]
    Ses {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        classify: bool,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Mesh the evolutoid front as OBJ, optionally with its singular curve as CSV.
    #[command(after_help = "OBJ: object `front` (v alpha x y, vn, f a//a b//b c//c), then object `sigma` (v, l).\n\
                            CSV columns (--sigma): theta,alpha,x,y,kind  \
                            (kind: cuspidal_edge|swallowtail|boundary_null)")]
    Front {
        #[command(flatten)]
        curve: CurveArg,
        /// Grid size as `NA,NT` (alpha and theta samples, each at least 8).
        #[arg(long, value_parser = parse_grid, default_value = "64,512")]
        grid: (usize, usize),
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, value_name = "FILE")]
        sigma: Option<PathBuf>,
    },
    /// Evaluate both sides of the Gauss-Bonnet identity on the front.
    GaussBonnet {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Exit with status 3 if the relative residual exceeds this.
        #[arg(long, default_value_t = 1e-4)]
        tol_residual: f64,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
    },
    /// Evolutoid area identity and inequality.
    Areas {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
    },
    /// Report genericity violations of the curve.
    Check {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
    },
}

/// Radians, or a multiple of π such as `pi/6`, `3pi/4`, `-3*pi/4`, `2π`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace('π', "pi");
    let bad = || format!("invalid angle {s:?}");
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
    };
    let coef = t[..at].trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[at + 2..].trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        let d = rest.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
        if d == 0.0 {
            return Err(bad());
        }
        d
    };
    let v = coef * std::f64::consts::PI / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected NA,NT")?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn load(arg: &CurveArg) -> Result<CurveSpec> {
    let text = std::fs::read_to_string(&arg.curve).map_err(|e| Error::Io(format!("{}: {e}", arg.curve.display())))?;
    parse_curve_spec(&text)
}

fn curve_id(spec: &CurveSpec, arg: &CurveArg) -> String {
    spec.name.clone().unwrap_or_else(|| {
        arg.curve.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    })
}

fn label<T: Serialize>(v: T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn positive(n: usize, path: &str) -> Result<usize> {
    if n < 2 {
        return Err(Error::spec(path, "need at least 2 samples"));
    }
    Ok(n)
}

/// Split a sampled curve where consecutive points jump by more than `gap`.
fn split_jumps(points: Vec<Option<Vec2>>, gap: f64) -> Vec<Vec<Vec2>> {
    let mut lines: Vec<Vec<Vec2>> = vec![Vec::new()];
    for p in points {
        match p {
            Some(p) if p.is_finite() => {
                let cur = lines.last_mut().expect("non-empty");
                if cur.last().is_some_and(|q| q.distance(p) > gap) {
                    lines.push(vec![p]);
                } else {
                    cur.push(p);
                }
            }
            _ => {
                if !lines.last().expect("non-empty").is_empty() {
                    lines.push(Vec::new());
                }
            }
        }
    }
    lines.retain(|l| l.len() >= 2);
    lines
}

/// Closed curves repeat the first parameter at the end so polylines close.
fn plot_params(curve: &Curve, n: usize) -> Vec<f64> {
    let mut ts = curve.sample_params(n);
    if curve.is_closed() {
        ts.push(curve.domain().1);
    }
    ts
}

fn diameter(points: &[Vec2]) -> f64 {
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in points {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    lo.distance(hi).max(1e-12)
}

/// Evolutoid point, with points at infinity reported as gaps.
fn evolutoid_sample(spec: &EvolutoidSpec, t: f64) -> Result<Option<Vec2>> {
    match evolutoid_point(spec, t) {
        Ok(p) => Ok(Some(p)),
        Err(Error::Flat { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn alpha_label(a: f64) -> String {
    format!("alpha={}", fmt(a))
}

fn show(spec: &CurveSpec, what: &[What], alphas: &[f64], asymptotes: bool, n: usize) -> Result<PlotScene> {
    let curve = &spec.curve;
    let ts = plot_params(curve, positive(n, "samples")?);
    let base: Vec<Vec2> = ts.iter().map(|&t| curve.point(t)).collect();
    let diam = diameter(&base);
    let mut scene = PlotScene::default();
    let mut markers = Vec::new();
    if what.contains(&What::Base) {
        scene.push(Layer { style: Style::Base, label: "base".into(), polylines: split_jumps(base.iter().map(|&p| Some(p)).collect(), diam), markers: vec![] });
        if let Curve::Param(c) = curve {
            for t in cusp_params(c) {
                markers.push(Marker { point: c.point(t), label: format!("base cusp t={}", fmt(t)) });
            }
        }
    }
    if what.contains(&What::Family) {
        for &alpha in alphas {
            let es = EvolutoidSpec::new(curve.clone(), alpha)?;
            let pts = ts.iter().map(|&t| evolutoid_sample(&es, t)).collect::<Result<Vec<_>>>()?;
            let polylines = split_jumps(pts, diam);
            if !polylines.is_empty() {
                scene.push(Layer { style: Style::Evolutoid, label: alpha_label(alpha), polylines, markers: vec![] });
            }
            if !es.is_base() {
                match singular_params(&es) {
                    Ok(sing) => markers.extend(sing.into_iter().filter(|s| s.is_cusp).map(|s| Marker {
                        point: s.location,
                        label: format!("evolutoid cusp {} t={}", alpha_label(alpha), fmt(s.param)),
                    })),
                    Err(e) if e.is_degeneracy() => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if what.contains(&What::Ses) {
        let pts = ts.iter().map(|&t| ses_point(curve, t).map(|s| Some(s.location))).collect::<Result<Vec<_>>>()?;
        let mut polylines = split_jumps(pts, diam);
        if polylines.is_empty() {
            polylines.push(vec![ses_point(curve, ts[0])?.location]);
        }
        scene.push(Layer { style: Style::Ses, label: "ses".into(), polylines, markers: vec![] });
        match ses_singularities(curve) {
            Ok(sing) => markers.extend(sing.into_iter().map(|s| Marker {
                point: s.location,
                label: format!("ses {} t={}", label(s.kind), fmt(s.param)),
            })),
            Err(e) if e.is_degeneracy() => {}
            Err(e) => return Err(e),
        }
    }
    if asymptotes {
        let Curve::Param(c) = curve else {
            return Err(Error::spec("asymptotes", "asymptotes are defined for parametric curves"));
        };
        for &alpha in alphas.iter().filter(|a| a.sin().abs() > 1e-12) {
            let lines: Vec<Vec<Vec2>> = asymptote_lines(c, alpha)
                .into_iter()
                .map(|l| vec![l.point - l.direction * (2.0 * diam), l.point + l.direction * (2.0 * diam)])
                .collect();
            if !lines.is_empty() {
                scene.push(Layer { style: Style::Asymptote, label: format!("asymptotes {}", alpha_label(alpha)), polylines: lines, markers: vec![] });
            }
        }
    }
    if !markers.is_empty() {
        scene.push(Layer::markers("singular points", markers));
    }
    Ok(scene)
}

fn evolutoid_table(spec: &CurveSpec, alpha: f64, singular: bool, n: usize) -> Result<Table> {
    let es = EvolutoidSpec::new(spec.curve.clone(), alpha)?;
    if singular {
        let mut t = Table::new(export::EVOLUTOID_SINGULAR_COLUMNS);
        for s in singular_params(&es)? {
            let (r1, r2) = s.diagnostics;
            t.row(vec![fmt(s.param), fmt(s.alpha), fmt(s.location.x), fmt(s.location.y), label(s.class), fmt(r1), fmt(r2)]);
        }
        return Ok(t);
    }
    let mut t = Table::new(export::EVOLUTOID_COLUMNS);
    for p in spec.curve.sample_params(positive(n, "samples")?) {
        if let Some(q) = evolutoid_sample(&es, p)? {
            t.row(point_row(p, q));
        }
    }
    Ok(t)
}

fn ses_table(spec: &CurveSpec, classify: bool, n: usize) -> Result<Table> {
    let curve = &spec.curve;
    if classify {
        let mut rows: Vec<(f64, Vec2, &str, String)> = Vec::new();
        for s in ses_singularities(curve)? {
            rows.push((s.param, s.location, "singular", label(s.kind)));
        }
        for f in ses_inflexions(curve)? {
            rows.push((f.param, f.location, "inflexion", label(f.kind)));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(b.2)));
        let mut t = Table::new(export::SES_CLASSIFY_COLUMNS);
        for (p, q, feature, kind) in rows {
            t.row(vec![fmt(p), fmt(q.x), fmt(q.y), feature.to_string(), kind]);
        }
        return Ok(t);
    }
    let mut t = Table::new(export::SES_COLUMNS);
    for p in curve.sample_params(positive(n, "samples")?) {
        let s = ses_point(curve, p)?;
        t.row(vec![fmt(p), fmt(s.location.x), fmt(s.location.y), fmt(s.alpha_of_param)]);
    }
    Ok(t)
}

#[derive(Serialize)]
struct AreasReport {
    curve: String,
    identity: AreaIdentity,
    inequality: AreaInequality,
}

#[derive(Serialize)]
struct CheckReport {
    curve: String,
    #[serde(flatten)]
    report: GenericityReport,
}

fn wrote(out: &mut dyn Write, path: &Path, what: String) {
    let _ = writeln!(out, "wrote {} ({what})", path.display());
}

/// Run a parsed command, returning the process exit code.
pub fn run_with(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) if e.is_degeneracy() => {
            let _ = writeln!(err, "{}", json!({ "error": e.kind(), "message": e.to_string() }));
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    run_with(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Show { curve, what, alphas, asymptotes, samples, out: path } => {
            let spec = load(&curve)?;
            let scene = show(&spec, &what, &alphas, asymptotes, samples)?;
            write_svg(&scene, &path)?;
            wrote(out, &path, format!("{} layers", scene.layers.len()));
        }
        Command::Evolutoid { curve, alpha, singular, samples, out: path } => {
            let t = evolutoid_table(&load(&curve)?, alpha, singular, samples)?;
            t.write(&path)?;
            wrote(out, &path, format!("{} rows", t.len()));
        }
        Command::Ses { curve, classify, samples, out: path } => {
            let t = ses_table(&load(&curve)?, classify, samples)?;
            t.write(&path)?;
            wrote(out, &path, format!("{} rows", t.len()));
        }
        Command::Front { curve, grid: (na, nt), out: path, sigma } => {
            if na < 8 || nt < 8 {
                return Err(Error::spec("grid", "grid sizes must be at least 8"));
            }
            let spec = load(&curve)?;
            let c = spec.curve.as_support()?;
            let sig = extract_sigma(c, nt)?;
            let mesh = mesh_front(c, na, nt)?;
            export::write_obj(&mesh, &path)?;
            wrote(out, &path, format!("{} vertices, {} triangles", mesh.vertices.len(), mesh.triangles.len()));
            if let Some(sp) = sigma {
                let t = export::sigma_table(&classify_sigma(&sig, c)?, c);
                t.write(&sp)?;
                wrote(out, &sp, format!("{} rows", t.len()));
            }
        }
        Command::GaussBonnet { curve, tol, tol_residual, report } => {
            if [tol, tol_residual].iter().any(|t| t.is_nan() || *t <= 0.0) {
                return Err(Error::spec("tol", "tolerances must be positive"));
            }
            let spec = load(&curve)?;
            let r = gauss_bonnet_check(spec.curve.as_support()?, tol, &curve_id(&spec, &curve))?;
            export::write_json(&r, &report)?;
            let _ = writeln!(
                out,
                "lhs {:.12e} rhs {:.12e} relative residual {:.3e}",
                r.lhs.value, r.rhs.value, r.relative_residual
            );
            if r.relative_residual > tol_residual {
                return Ok(3);
            }
        }
        Command::Areas { curve, alpha, report } => {
            let spec = load(&curve)?;
            let c = spec.curve.as_support()?;
            let r = AreasReport { curve: curve_id(&spec, &curve), identity: area_identity(c, alpha), inequality: area_inequality(c, alpha) };
            export::write_json(&r, &report)?;
            wrote(out, &report, format!("residual {:.3e}, gap {:.6e}", r.identity.residual, r.inequality.gap));
        }
        Command::Check { curve, report } => {
            let spec = load(&curve)?;
            let r = CheckReport { curve: curve_id(&spec, &curve), report: spec.curve.check_genericity() };
            export::write_json(&r, &report)?;
            wrote(out, &report, format!("{} violations", r.report.violations.len()));
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/6"), Ok(PI / 6.0));
        assert_eq!(parse_angle("3pi/4"), Ok(3.0 * PI / 4.0));
        assert_eq!(parse_angle("3*pi/4"), Ok(3.0 * PI / 4.0));
        assert_eq!(parse_angle("-pi/2"), Ok(-PI / 2.0));
        assert_eq!(parse_angle("pi"), Ok(PI));
        assert_eq!(parse_angle("2π"), Ok(2.0 * PI));
        assert_eq!(parse_angle("0.5"), Ok(0.5));
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("x").is_err());
    }

    #[test]
    fn jumps_split_polylines() {
        let pts = vec![Some(Vec2::new(0.0, 0.0)), Some(Vec2::new(0.1, 0.0)), Some(Vec2::new(9.0, 0.0)), Some(Vec2::new(9.1, 0.0)), None, Some(Vec2::new(1.0, 1.0))];
        let lines = split_jumps(pts, 1.0);
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
