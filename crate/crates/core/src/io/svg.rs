//! Deterministic SVG plots.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Base,
    Evolutoid,
    Ses,
    Sigma,
    Asymptote,
    Marker,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Base => "base",
            Style::Evolutoid => "evolutoid",
            Style::Ses => "ses",
            Style::Sigma => "sigma",
            Style::Asymptote => "asymptote",
            Style::Marker => "marker",
        }
    }

    fn stroke(self) -> &'static str {
        match self {
            Style::Base => "#000000",
            Style::Evolutoid => "#1f77b4",
            Style::Ses => "#d62728",
            Style::Sigma => "#9467bd",
            Style::Asymptote => "#7f7f7f",
            Style::Marker => "#2ca02c",
        }
    }

    /// Layers whose extent defines the viewport.
    fn anchors(self) -> bool {
        matches!(self, Style::Base | Style::Ses | Style::Sigma | Style::Marker)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marker {
    pub point: Vec2,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layer {
    pub style: Style,
    pub label: String,
    pub polylines: Vec<Vec<Vec2>>,
    pub markers: Vec<Marker>,
}

impl Layer {
    pub fn polyline(style: Style, label: impl Into<String>, points: Vec<Vec2>) -> Self {
        Layer { style, label: label.into(), polylines: vec![points], markers: Vec::new() }
    }

    pub fn markers(label: impl Into<String>, markers: Vec<Marker>) -> Self {
        Layer { style: Style::Marker, label: label.into(), polylines: Vec::new(), markers }
    }

    fn is_empty(&self) -> bool {
        self.polylines.iter().all(|p| p.is_empty()) && self.markers.is_empty()
    }

    fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.polylines.iter().flatten().copied().chain(self.markers.iter().map(|m| m.point))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PlotScene {
    pub layers: Vec<Layer>,
}

impl PlotScene {
    pub fn push(&mut self, layer: Layer) {
        self.layers.push(layer);
    }
}

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;
/// Points farther than this many viewport sizes from the view are dropped.
const CLIP: f64 = 2.0;

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: Vec2,
    max: Vec2,
}

impl Bounds {
    fn of(points: impl Iterator<Item = Vec2>) -> Option<Bounds> {
        let mut b: Option<Bounds> = None;
        for p in points.filter(|p| p.is_finite()) {
            b = Some(match b {
                None => Bounds { min: p, max: p },
                Some(b) => Bounds {
                    min: Vec2::new(b.min.x.min(p.x), b.min.y.min(p.y)),
                    max: Vec2::new(b.max.x.max(p.x), b.max.y.max(p.y)),
                },
            });
        }
        b
    }

    fn padded(self) -> Bounds {
        let span = (self.max.x - self.min.x).max(self.max.y - self.min.y).max(1e-9);
        let pad = Vec2::new(span * MARGIN, span * MARGIN);
        Bounds { min: self.min - pad, max: self.max + pad }
    }

    fn contains_loosely(&self, p: Vec2) -> bool {
        let w = self.max.x - self.min.x;
        let h = self.max.y - self.min.y;
        p.is_finite()
            && p.x >= self.min.x - CLIP * w
            && p.x <= self.max.x + CLIP * w
            && p.y >= self.min.y - CLIP * h
            && p.y <= self.max.y + CLIP * h
    }
}

/// Fixed four-decimal formatting without negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Render the scene. Layers appear in scene order; each non-marker layer is
/// one `path` element and each marker is a `circle` with a `title`.
pub fn render_svg(scene: &PlotScene) -> Result<String> {
    if scene.layers.is_empty() {
        return Err(Error::spec("layers", "scene has no layers"));
    }
    if let Some(i) = scene.layers.iter().position(Layer::is_empty) {
        return Err(Error::spec(format!("layers[{i}]"), "layer is empty"));
    }
    let anchors = scene.layers.iter().filter(|l| l.style.anchors());
    let bounds = Bounds::of(anchors.flat_map(|l| l.points()))
        .or_else(|| Bounds::of(scene.layers.iter().flat_map(|l| l.points())))
        .ok_or_else(|| Error::spec("layers", "scene has no finite points"))?;
    let view = bounds.padded();
    let (w, h) = (view.max.x - view.min.x, view.max.y - view.min.y);
    let height = (WIDTH * h / w).clamp(50.0, 4.0 * WIDTH);
    let radius = 0.006 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(WIDTH),
        num(height),
        num(view.min.x),
        num(-view.max.y),
        num(w),
        num(h)
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke-width="{}">"#, num(0.002 * w.max(h)));
    for layer in &scene.layers {
        let class = layer.style.class();
        if layer.style == Style::Marker {
            let _ = writeln!(out, r#"<g class="{class}" fill="{}" stroke="none">"#, layer.style.stroke());
            for m in layer.markers.iter().filter(|m| view.contains_loosely(m.point)) {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}"><title>{}</title></circle>"#,
                    num(m.point.x),
                    num(m.point.y),
                    num(radius),
                    escape(&m.label)
                );
            }
            let _ = writeln!(out, "</g>");
            continue;
        }
        let mut d = String::new();
        for line in &layer.polylines {
            let mut pen_down = false;
            for p in line {
                if !view.contains_loosely(*p) {
                    pen_down = false;
                    continue;
                }
                let _ = write!(d, "{}{} {} ", if pen_down { "L" } else { "M" }, num(p.x), num(p.y));
                pen_down = true;
            }
        }
        let _ = writeln!(
            out,
            r#"<path class="{class}" stroke="{}" d="{}"><title>{}</title></path>"#,
            layer.style.stroke(),
            d.trim_end(),
            escape(&layer.label)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Render and write; nothing is written if the scene is invalid.
pub fn write_svg(scene: &PlotScene, path: &Path) -> Result<()> {
    let text = render_svg(scene)?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> Vec<Vec2> {
        vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]
    }

    #[test]
    fn one_path_per_layer() {
        let mut s = PlotScene::default();
        s.push(Layer::polyline(Style::Base, "base", tri()));
        let svg = render_svg(&s).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("M0.0000 0.0000 L1.0000 0.0000 L0.0000 1.0000"));
        assert_eq!(svg, render_svg(&s.clone()).unwrap());
    }

    #[test]
    fn layer_order_is_preserved() {
        let mut s = PlotScene::default();
        s.push(Layer::polyline(Style::Base, "base", tri()));
        s.push(Layer::polyline(Style::Evolutoid, "alpha=1", tri()));
        s.push(Layer::polyline(Style::Ses, "ses", tri()));
        s.push(Layer::markers("cusps", vec![Marker { point: Vec2::new(0.5, 0.5), label: "cusp".into() }]));
        let svg = render_svg(&s).unwrap();
        let pos: Vec<usize> = ["class=\"base\"", "class=\"evolutoid\"", "class=\"ses\"", "class=\"marker\""]
            .iter()
            .map(|c| svg.find(c).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(svg.contains("<title>cusp</title>"));
    }

    #[test]
    fn far_points_break_the_path() {
        let mut s = PlotScene::default();
        s.push(Layer::polyline(Style::Base, "base", tri()));
        let far = vec![Vec2::new(0.0, 0.0), Vec2::new(1e9, 0.0), Vec2::new(0.5, 0.5), Vec2::new(f64::NAN, 0.0)];
        s.push(Layer::polyline(Style::Evolutoid, "e", far));
        let svg = render_svg(&s).unwrap();
        assert!(svg.contains(r#"d="M0.0000 0.0000 M0.5000 0.5000""#));
    }

    #[test]
    fn empty_scene_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.svg");
        assert!(matches!(write_svg(&PlotScene::default(), &path), Err(Error::Spec { .. })));
        assert!(!path.exists());
        let mut s = PlotScene::default();
        s.push(Layer::polyline(Style::Base, "b", vec![]));
        assert!(write_svg(&s, &path).is_err());
        assert!(!path.exists());
    }
}
