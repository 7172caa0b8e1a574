//! The extended evolutoids front `F(α, θ) = (α, f_α(θ))` in `ℝ × ℝ²`.
//!
//! Its unit normal is `ν = (−ρ sin α, 𝕟(θ + α)) / √(1 + ρ² sin² α)` and its
//! signed area density is `λ = (ρ cos α + ρ′ sin α)·√(1 + ρ² sin² α)`. The
//! singular set `Σ = {λ = 0}` is the graph of
//! `α_Σ(θ) = arccot(−ρ′/ρ) ∈ (0, π)` over every `θ` with `ρ(θ) ≠ 0`, and
//! `α_Σ′ = (ρρ″ − ρ′²)/(ρ² + ρ′²)`, so swallowtails sit at the zeros of
//! `ρρ″ − ρ′²`. The kernel of `dF` on `Σ` is spanned by `∂/∂θ`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{hedgehog_normal, hedgehog_tangent, SupportCurve};
use crate::error::{Error, Result};
use crate::geom::{Vec2, Vec3};
use crate::roots::{find_roots, find_touching_zeros, is_zero, scan_samples, scan_scale, SCALE_SAMPLES, ZERO_REL};
use crate::ses::{ensure_nondegenerate, ses_point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Plus,
    Minus,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontSample {
    pub alpha: f64,
    pub theta: f64,
    pub position: Vec3,
    pub normal: Vec3,
    pub lambda: f64,
    pub region: Region,
}

/// `λ/√(1 + ρ² sin² α) = ρ cos α + ρ′ sin α`.
pub fn lambda_factor(rho: f64, rho1: f64, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    rho * c + rho1 * s
}

/// Evaluate the front, its normal and `λ` at `(α, θ)`.
///
/// The region is `Singular` when `|ρ cos α + ρ′ sin α| ≤ 1e−9·(1 + |ρ| + |ρ′|)`.
pub fn front_sample(c: &SupportCurve, alpha: f64, theta: f64) -> FrontSample {
    let j = c.rho_jet(theta);
    let (s, _) = alpha.sin_cos();
    let point = c.hedgehog_point(theta) + hedgehog_tangent(theta + alpha) * (j.rho * s);
    let root = (1.0 + (j.rho * s).powi(2)).sqrt();
    let n = hedgehog_normal(theta + alpha);
    let normal = Vec3::new(-j.rho * s, n.x, n.y) * (1.0 / root);
    let g = lambda_factor(j.rho, j.d1, alpha);
    let region = if g.abs() <= ZERO_REL * (1.0 + j.rho.abs() + j.d1.abs()) {
        Region::Singular
    } else if g > 0.0 {
        Region::Plus
    } else {
        Region::Minus
    };
    FrontSample { alpha, theta, position: Vec3::new(alpha, point.x, point.y), normal, lambda: g * root, region }
}

/// `(∂F/∂α, ∂F/∂θ)` in closed form.
pub fn front_partials(c: &SupportCurve, alpha: f64, theta: f64) -> (Vec3, Vec3) {
    let j = c.rho_jet(theta);
    let (s, co) = alpha.sin_cos();
    let t = hedgehog_tangent(theta + alpha);
    let n = hedgehog_normal(theta + alpha);
    let fa = t * (j.rho * co) + n * (j.rho * s);
    let ft = t * lambda_factor(j.rho, j.d1, alpha);
    (Vec3::new(1.0, fa.x, fa.y), Vec3::new(0.0, ft.x, ft.y))
}

/// The interior singular angle over `θ`: the zero of `ρ cos α + ρ′ sin α`
/// in `(0, π)`. Where `ρ = 0` this is `0` or `π`.
pub fn alpha_sigma(rho: f64, rho1: f64) -> f64 {
    let sign = if rho < 0.0 { -1.0 } else { 1.0 };
    rho.abs().atan2(-rho1 * sign)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaSample {
    pub theta: f64,
    pub alpha: f64,
    pub position: Vec3,
    pub projected: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryNull {
    pub theta: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaCurve {
    pub samples: Vec<SigmaSample>,
    pub boundary_null_points: Vec<BoundaryNull>,
}

/// Zeros of `ρ` over the closure period.
pub fn rho_zeros(c: &SupportCurve) -> Vec<f64> {
    let t = c.closure_period();
    let rho = c.rho();
    let d = rho.derivative();
    find_roots(|x| rho.eval(x), Some(|x| d.eval(x)), 0.0, t, scan_samples(t), true)
        .into_iter()
        .map(|r| r.x)
        .collect()
}

/// Reject hedgehogs where `ρ` and `ρ′` vanish together.
pub(crate) fn ensure_transversal(c: &SupportCurve) -> Result<()> {
    let t = c.closure_period();
    let rho = c.rho();
    let d = rho.derivative();
    let scale = c.rho_scale();
    let d_scale = scan_scale(|x| d.eval(x), 0.0, t, SCALE_SAMPLES);
    let tol = ZERO_REL * (1.0 + scale);
    let touching = find_touching_zeros(|x| rho.eval(x), |x| d.eval(x), 0.0, t, scan_samples(t), true, tol);
    for x in rho_zeros(c).into_iter().chain(touching) {
        if is_zero(d.eval(x), d_scale.max(scale)) {
            return Err(Error::DegenerateSigmaPoint { theta: x, value: d.eval(x) });
        }
    }
    Ok(())
}

/// Sample `Σ` as a graph over `n` uniform `θ` values of the closure period.
pub fn extract_sigma(c: &SupportCurve, n_samples: usize) -> Result<SigmaCurve> {
    ensure_nondegenerate(c)?;
    ensure_transversal(c)?;
    let t = c.closure_period();
    let n = n_samples.max(1);
    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            let theta = t * i as f64 / n as f64;
            let j = c.rho_jet(theta);
            let alpha = alpha_sigma(j.rho, j.d1);
            let s = front_sample(c, alpha, theta);
            SigmaSample { theta, alpha, position: s.position, projected: Vec2::new(s.position.y, s.position.z) }
        })
        .collect();
    let mut boundary_null_points = Vec::new();
    for theta in rho_zeros(c) {
        boundary_null_points.push(BoundaryNull { theta, alpha: 0.0 });
        boundary_null_points.push(BoundaryNull { theta, alpha: PI });
    }
    Ok(SigmaCurve { samples, boundary_null_points })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontPointKind {
    CuspidalEdge,
    Swallowtail,
    BoundaryNull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeakSign {
    Positive,
    Negative,
    None,
    /// An extremum of `α_Σ` on a curve where `ρ` changes sign; the sign rule
    /// for rosettes does not apply.
    Candidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremum {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularFrontPoint {
    pub theta: f64,
    pub alpha: f64,
    pub kind: FrontPointKind,
    pub peak_sign: PeakSign,
    pub extremum: Option<Extremum>,
    /// `(ρ, ρ′, ρ″, ρρ″ − ρ′²)`.
    pub diagnostics: (f64, f64, f64, f64),
}

/// Swallowtail parameters: sign-changing zeros of `ρρ″ − ρ′²`.
pub fn swallowtail_thetas(c: &SupportCurve) -> Result<Vec<f64>> {
    Ok(classify_swallowtails(c)?.into_iter().map(|p| p.theta).collect())
}

fn classify_swallowtails(c: &SupportCurve) -> Result<Vec<SingularFrontPoint>> {
    ensure_nondegenerate(c)?;
    let t = c.closure_period();
    let w = c.swallowtail_poly();
    let dw = w.derivative();
    let dw_scale = scan_scale(|x| dw.eval(x), 0.0, t, SCALE_SAMPLES);
    let n = scan_samples(t);
    let rho_positive = (0..SCALE_SAMPLES).all(|i| c.rho().eval(t * i as f64 / SCALE_SAMPLES as f64) > 0.0)
        && rho_zeros(c).is_empty();
    let tol = ZERO_REL * (1.0 + c.swallowtail_scale());
    if let Some(&x) = find_touching_zeros(|x| w.eval(x), |x| dw.eval(x), 0.0, t, n, true, tol).first() {
        return Err(Error::BorderlineClassification { theta: x, slope: dw.eval(x) });
    }
    let mut out = Vec::new();
    for r in find_roots(|x| w.eval(x), Some(|x| dw.eval(x)), 0.0, t, n, true) {
        let slope = dw.eval(r.x);
        if !r.crosses || is_zero(slope, dw_scale) {
            return Err(Error::BorderlineClassification { theta: r.x, slope });
        }
        let j = c.rho_jet(r.x);
        // α_Σ′ has the sign of w, so w decreasing through zero is a maximum
        let extremum = if slope < 0.0 { Extremum::Maximum } else { Extremum::Minimum };
        let peak_sign = match (rho_positive, extremum) {
            (true, Extremum::Maximum) => PeakSign::Negative,
            (true, Extremum::Minimum) => PeakSign::Positive,
            (false, _) => PeakSign::Candidate,
        };
        out.push(SingularFrontPoint {
            theta: r.x,
            alpha: alpha_sigma(j.rho, j.d1),
            kind: FrontPointKind::Swallowtail,
            peak_sign,
            extremum: Some(extremum),
            diagnostics: (j.rho, j.d1, j.d2, w.eval(r.x)),
        });
    }
    Ok(out)
}

/// Classify every sample of `Σ` and add swallowtails and boundary null
/// points; the result is sorted by `θ`.
pub fn classify_sigma(sigma: &SigmaCurve, c: &SupportCurve) -> Result<Vec<SingularFrontPoint>> {
    let mut out = classify_swallowtails(c)?;
    let w = c.swallowtail_poly();
    let w_scale = c.swallowtail_scale();
    for s in &sigma.samples {
        let j = c.rho_jet(s.theta);
        let wv = w.eval(s.theta);
        if j.rho == 0.0 || is_zero(wv, w_scale) {
            continue;
        }
        out.push(SingularFrontPoint {
            theta: s.theta,
            alpha: s.alpha,
            kind: FrontPointKind::CuspidalEdge,
            peak_sign: PeakSign::None,
            extremum: None,
            diagnostics: (j.rho, j.d1, j.d2, wv),
        });
    }
    for b in &sigma.boundary_null_points {
        let j = c.rho_jet(b.theta);
        out.push(SingularFrontPoint {
            theta: b.theta,
            alpha: b.alpha,
            kind: FrontPointKind::BoundaryNull,
            peak_sign: PeakSign::None,
            extremum: None,
            diagnostics: (j.rho, j.d1, j.d2, w.eval(b.theta)),
        });
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.alpha.total_cmp(&b.alpha)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionCheck {
    pub hausdorff_distance: f64,
    pub diameter: f64,
    pub samples: usize,
}

fn directed_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.par_iter()
        .map(|p| b.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min))
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between the projection of `Σ` and the
/// singular evolutoids set, both sampled on the same `θ` grid.
pub fn projection_check(c: &SupportCurve, n_samples: usize) -> Result<ProjectionCheck> {
    let sigma = extract_sigma(c, n_samples)?;
    let curve = c.clone().into();
    let proj: Vec<Vec2> = sigma.samples.iter().map(|s| s.projected).collect();
    let ses: Vec<Vec2> = sigma
        .samples
        .iter()
        .map(|s| ses_point(&curve, s.theta).map(|p| p.location))
        .collect::<Result<_>>()?;
    let base: Vec<Vec2> = sigma.samples.iter().map(|s| c.hedgehog_point(s.theta)).collect();
    let diameter = base
        .par_iter()
        .map(|p| base.iter().map(|q| p.distance(*q)).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max);
    let h = directed_hausdorff(&proj, &ses).max(directed_hausdorff(&ses, &proj));
    Ok(ProjectionCheck { hausdorff_distance: h, diameter, samples: proj.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullDirection {
    pub theta: f64,
    pub alpha: f64,
    pub d_theta_norm: f64,
    pub d_alpha_norm: f64,
}

/// Central-difference partials of `F` at the point of `Σ` over `θ`.
pub fn null_direction(c: &SupportCurve, theta: f64) -> NullDirection {
    let j = c.rho_jet(theta);
    let alpha = alpha_sigma(j.rho, j.d1);
    let h = 1e-6;
    let at = |a: f64, t: f64| front_sample(c, a, t).position;
    let dt = (at(alpha, theta + h) - at(alpha, theta - h)) * (0.5 / h);
    let da = (at(alpha + h, theta) - at(alpha - h, theta)) * (0.5 / h);
    NullDirection { theta, alpha, d_theta_norm: dt.norm(), d_alpha_norm: da.norm() }
}

/// `θ` values where `λ` changes sign along the slice `{α} × S¹`, located by
/// linear interpolation on an `n`-point grid.
pub fn slice_sign_changes(c: &SupportCurve, alpha: f64, n: usize) -> Vec<f64> {
    let t = c.closure_period();
    let h = t / n as f64;
    let lam: Vec<f64> = (0..=n).map(|i| front_sample(c, alpha, h * i as f64).lambda).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (lam[i], lam[i + 1]);
        if a == 0.0 {
            out.push(h * i as f64);
        } else if a * b < 0.0 {
            out.push(h * (i as f64 + a / (a - b)));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontMesh {
    pub n_alpha: usize,
    pub n_theta: usize,
    /// `(α, x, y)`, row-major in `α`.
    pub vertices: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub lambda_sign: Vec<i8>,
    /// Zero-based vertex indices, counterclockwise in the `(α, θ)` chart.
    pub triangles: Vec<[usize; 3]>,
    /// `Σ` split into polylines wherever it leaves through `α ∈ {0, π}`.
    pub sigma: Vec<Vec<Vec3>>,
    pub boundary_null_thetas: Vec<f64>,
}

/// Triangulate the front on an `n_alpha × n_theta` grid, closed in `θ` and
/// open in `α`, with `Σ` sampled on the same `θ` grid.
pub fn mesh_front(c: &SupportCurve, n_alpha: usize, n_theta: usize) -> Result<FrontMesh> {
    if n_alpha < 8 || n_theta < 8 {
        return Err(Error::spec("grid", "both grid sizes must be at least 8"));
    }
    let t = c.closure_period();
    let samples: Vec<FrontSample> = (0..n_alpha * n_theta)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n_theta, k % n_theta);
            let alpha = PI * i as f64 / (n_alpha - 1) as f64;
            front_sample(c, alpha, t * j as f64 / n_theta as f64)
        })
        .collect();
    let mut triangles = Vec::with_capacity(2 * (n_alpha - 1) * n_theta);
    for i in 0..n_alpha - 1 {
        for j in 0..n_theta {
            let jn = (j + 1) % n_theta;
            let (a, b, cc, d) = (i * n_theta + j, i * n_theta + jn, (i + 1) * n_theta + jn, (i + 1) * n_theta + j);
            triangles.push([a, d, cc]);
            triangles.push([a, cc, b]);
        }
    }
    let sigma = match extract_sigma(c, n_theta) {
        Ok(s) => split_sigma(&s, c),
        Err(Error::DegenerateSingularSet(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    Ok(FrontMesh {
        n_alpha,
        n_theta,
        vertices: samples.iter().map(|s| s.position).collect(),
        normals: samples.iter().map(|s| s.normal).collect(),
        lambda_sign: samples
            .iter()
            .map(|s| match s.region {
                Region::Plus => 1,
                Region::Minus => -1,
                Region::Singular => 0,
            })
            .collect(),
        triangles,
        sigma,
        boundary_null_thetas: rho_zeros(c),
    })
}

fn split_sigma(s: &SigmaCurve, c: &SupportCurve) -> Vec<Vec<Vec3>> {
    // samples exactly on the boundary are dropped; Σ leaves M where ρ changes sign
    let (pts, rho): (Vec<&SigmaSample>, Vec<f64>) =
        s.samples.iter().map(|p| (p, c.rho().eval(p.theta))).filter(|(_, r)| *r != 0.0).unzip();
    let n = pts.len();
    let jump = |i: usize| rho[i] * rho[(i + 1) % n] < 0.0;
    let Some(first_jump) = (0..n).find(|&i| jump(i)) else {
        let mut line: Vec<Vec3> = pts.iter().map(|p| p.position).collect();
        if let Some(&p) = line.first() {
            line.push(p);
        }
        return vec![line];
    };
    let mut lines = Vec::new();
    let mut current = Vec::new();
    for k in 1..=n {
        let i = (first_jump + k) % n;
        current.push(pts[i].position);
        if jump(i) {
            lines.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        lines.push(current);
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigpoly::{Period, TrigPoly};

    fn oval() -> SupportCurve {
        SupportCurve::new(TrigPoly::new(40.0, &[(3, 3.0)], &[(2, -1.0)], Period::TwoPi), 1.0)
    }

    fn sin_k(k: u32) -> SupportCurve {
        SupportCurve::new(TrigPoly::new(0.0, &[], &[(k, 1.0)], Period::TwoPi), 1.0)
    }

    fn circle() -> SupportCurve {
        SupportCurve::new(TrigPoly::constant_fn(1.0, Period::TwoPi), 1.0)
    }

    #[test]
    fn sample_examples() {
        let s = front_sample(&circle(), 0.0, 0.0);
        assert_eq!(s.lambda, 1.0);
        assert_eq!(s.region, Region::Plus);
        for &t in &[0.0, 2.0] {
            assert_eq!(front_sample(&circle(), PI / 2.0, t).region, Region::Singular);
        }
        let s = front_sample(&oval(), PI / 4.0, 0.0);
        let expect = 11.0 * 2f64.sqrt() * 129f64.sqrt();
        assert!((s.lambda - expect).abs() < 1e-11 * expect);
    }

    #[test]
    fn normal_is_orthogonal_to_partials() {
        let c = oval();
        for &(a, t) in &[(0.3, 0.1), (1.2, 2.0), (2.9, 5.5)] {
            let s = front_sample(&c, a, t);
            let (fa, ft) = front_partials(&c, a, t);
            assert!((s.normal.norm() - 1.0).abs() < 1e-14);
            assert!(s.normal.dot(fa).abs() < 1e-12 && s.normal.dot(ft).abs() < 1e-12);
            let lam = fa.cross(ft).dot(s.normal);
            assert!((lam - s.lambda).abs() < 1e-10 * s.lambda.abs().max(1.0));
        }
    }

    #[test]
    fn sigma_examples() {
        let s = extract_sigma(&oval(), 64).unwrap();
        assert!((s.samples[0].alpha - 16f64.atan2(-6.0)).abs() < 1e-14);
        assert!(s.boundary_null_points.is_empty());
        for p in &s.samples {
            let j = oval().rho_jet(p.theta);
            assert!(lambda_factor(j.rho, j.d1, p.alpha).abs() < 1e-10);
            assert!(p.alpha > 0.0 && p.alpha < PI);
        }
        assert!(matches!(extract_sigma(&circle(), 16), Err(Error::DegenerateSingularSet(_))));
        let s = extract_sigma(&sin_k(3), 64).unwrap();
        assert!(s.boundary_null_points.iter().any(|b| b.theta.abs() < 1e-12));
        assert_eq!(s.boundary_null_points.len(), 12);
    }

    #[test]
    fn null_direction_is_theta() {
        let c = oval();
        for &t in &[0.0, 1.3, 4.0] {
            let n = null_direction(&c, t);
            assert!(n.d_theta_norm < 1e-6 && n.d_alpha_norm > 1.0);
        }
    }

    #[test]
    fn swallowtails_and_peaks() {
        let c = oval();
        let w = c.swallowtail_poly();
        let sign_changes = (0..4096)
            .filter(|&i| {
                let a = w.eval(2.0 * PI * i as f64 / 4096.0);
                let b = w.eval(2.0 * PI * (i + 1) as f64 / 4096.0);
                a * b < 0.0
            })
            .count();
        let st = swallowtail_thetas(&c).unwrap();
        assert_eq!(st.len(), sign_changes);
        let rosette = SupportCurve::new(TrigPoly::new(20.0, &[(5, 0.25)], &[(3, 1.0), (2, 0.5)], Period::TwoPi), 1.0);
        let marks = classify_sigma(&extract_sigma(&rosette, 256).unwrap(), &rosette).unwrap();
        let peaks: Vec<PeakSign> =
            marks.iter().filter(|m| m.kind == FrontPointKind::Swallowtail).map(|m| m.peak_sign).collect();
        assert!(!peaks.is_empty() && peaks.len().is_multiple_of(2));
        for w in peaks.windows(2) {
            assert_ne!(w[0], w[1]);
        }
        let marks = classify_sigma(&extract_sigma(&sin_k(3), 64).unwrap(), &sin_k(3)).unwrap();
        assert!(marks.iter().filter(|m| m.kind == FrontPointKind::Swallowtail).all(|m| m.peak_sign == PeakSign::Candidate));
    }

    #[test]
    fn projection_matches_ses() {
        let c = oval();
        let p = projection_check(&c, 512).unwrap();
        assert!(p.hausdorff_distance < 1e-6 * p.diameter);
        assert!(projection_check(&circle(), 16).is_err());
    }

    #[test]
    fn mesh_examples() {
        let m = mesh_front(&circle(), 16, 16).unwrap();
        assert_eq!(m.vertices.len(), 256);
        assert_eq!(m.triangles.len(), 2 * 15 * 16);
        assert!(m.sigma.is_empty());
        assert!(m.normals.iter().all(|n| (n.norm() - 1.0).abs() < 1e-12));
        let m = mesh_front(&sin_k(2), 64, 256).unwrap();
        assert_eq!(m.boundary_null_thetas.len(), 4);
        assert_eq!(m.sigma.len(), 4);
        let m = mesh_front(&oval(), 8, 32).unwrap();
        assert_eq!(m.sigma.len(), 1);
        assert_eq!(m.sigma[0].len(), 33);
        assert!(mesh_front(&oval(), 4, 32).is_err());
    }

    #[test]
    fn slice_matches_evolutoid_singular_points() {
        let c = oval();
        let spec = crate::evolutoid::EvolutoidSpec::new(c.clone().into(), PI / 6.0).unwrap();
        let a: Vec<f64> = crate::evolutoid::singular_params(&spec).unwrap().iter().map(|s| s.param).collect();
        let b = slice_sign_changes(&c, PI / 6.0, 4096);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-3);
        }
    }
}
