//! CSV, OBJ and JSON writers.
//!
//! Floats are written with ten decimals and a `.` separator; negative zero is
//! printed as zero so that output is byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::curve::SupportCurve;
use crate::error::Result;
use crate::front::{front_sample, FrontMesh, SingularFrontPoint};
use crate::geom::Vec2;

pub(crate) fn fmt(v: f64) -> String {
    let s = format!("{v:.10}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// A CSV table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

pub const EVOLUTOID_COLUMNS: &[&str] = &["param", "x", "y"];
pub const EVOLUTOID_SINGULAR_COLUMNS: &[&str] = &["param", "alpha", "x", "y", "kind", "rho_s1", "rho_s2"];
pub const SES_COLUMNS: &[&str] = &["param", "x", "y", "alpha"];
pub const SES_CLASSIFY_COLUMNS: &[&str] = &["param", "x", "y", "feature", "kind"];
pub const SIGMA_COLUMNS: &[&str] = &["theta", "alpha", "x", "y", "kind"];

pub fn point_row(param: f64, p: Vec2) -> Vec<String> {
    vec![fmt(param), fmt(p.x), fmt(p.y)]
}

/// One row per classified point of `Σ`, located by projecting the front.
pub fn sigma_table(points: &[SingularFrontPoint], c: &SupportCurve) -> Table {
    let mut t = Table::new(SIGMA_COLUMNS);
    for sp in points {
        let p = front_sample(c, sp.alpha, sp.theta).position;
        let kind = serde_json::to_value(sp.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        t.row(vec![fmt(sp.theta), fmt(sp.alpha), fmt(p.y), fmt(p.z), kind]);
    }
    t
}

/// Wavefront OBJ: object `front` with vertices in (α, x, y) order, per-vertex
/// normals and 1-based triangles, then object `sigma` with its polylines as
/// `l` elements.
pub fn mesh_obj(mesh: &FrontMesh) -> String {
    let mut out = String::new();
    out.push_str("o front\n");
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", fmt(v.x), fmt(v.y), fmt(v.z));
    }
    for n in &mesh.normals {
        let _ = writeln!(out, "vn {} {} {}", fmt(n.x), fmt(n.y), fmt(n.z));
    }
    for t in &mesh.triangles {
        let [a, b, c] = t.map(|i| i + 1);
        let _ = writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}");
    }
    out.push_str("o sigma\n");
    let mut next = mesh.vertices.len() + 1;
    for line in &mesh.sigma {
        for v in line {
            let _ = writeln!(out, "v {} {} {}", fmt(v.x), fmt(v.y), fmt(v.z));
        }
        if line.len() >= 2 {
            let ids: Vec<String> = (next..next + line.len()).map(|i| i.to_string()).collect();
            let _ = writeln!(out, "l {}", ids.join(" "));
        }
        next += line.len();
    }
    out
}

pub fn write_obj(mesh: &FrontMesh, path: &Path) -> Result<()> {
    std::fs::write(path, mesh_obj(mesh))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(value))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::mesh_front;
    use crate::{Period, TrigPoly};

    #[test]
    fn number_format() {
        assert_eq!(fmt(-0.0), "0.0000000000");
        assert_eq!(fmt(-1e-12), "0.0000000000");
        assert_eq!(fmt(-0.5), "-0.5000000000");
        assert_eq!(fmt(1.0 / 3.0), "0.3333333333");
    }

    #[test]
    fn csv_has_fixed_header() {
        let mut t = Table::new(SES_COLUMNS);
        t.row(vec![fmt(0.0), fmt(1.0), fmt(2.0), fmt(3.0)]);
        assert_eq!(t.to_csv(), "param,x,y,alpha\n0.0000000000,1.0000000000,2.0000000000,3.0000000000\n");
    }

    #[test]
    fn obj_indices_are_one_based() {
        let p = TrigPoly::new(40.0, &[(3, 3.0)], &[(2, -1.0)], Period::TwoPi);
        let mesh = mesh_front(&SupportCurve::new(p, 1.0), 8, 16).unwrap();
        let obj = mesh_obj(&mesh);
        let nv = mesh.vertices.len() + mesh.sigma.iter().map(Vec::len).sum::<usize>();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), nv);
        assert_eq!(obj.lines().filter(|l| l.starts_with("vn ")).count(), mesh.vertices.len());
        let max_face = obj
            .lines()
            .filter(|l| l.starts_with("f "))
            .flat_map(|l| l[2..].split(' ').map(|t| t.split("//").next().unwrap().parse::<usize>().unwrap()))
            .collect::<Vec<_>>();
        assert_eq!(*max_face.iter().min().unwrap(), 1);
        assert_eq!(*max_face.iter().max().unwrap(), mesh.vertices.len());
        let sigma_at = obj.find("o sigma").unwrap();
        assert!(obj[sigma_at..].lines().any(|l| l.starts_with("l ")));
    }
}
