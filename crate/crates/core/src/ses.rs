//! The singular evolutoids set: the union of the singular points of all
//! `α`-evolutoids, parameterized by the base curve.
//!
//! For a hedgehog the point over `θ` is `f + ρ²(−ρ′𝕥 + ρ𝕟)/(ρ² + ρ′²)`,
//! the singular point of the evolutoid at `α = arccot(−ρ′/ρ) ∈ (0, π)`.

use serde::Serialize;

use crate::curve::{cusp_params, hedgehog_normal, hedgehog_tangent, Curve, FlexKind, ParamCurve, SupportCurve};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::roots::{self, find_roots, find_touching_zeros, is_zero, scan_samples, scan_scale, SCALE_SAMPLES};
use crate::trigpoly::TrigPoly;

/// Steps of the one-sided Richardson limit at base-curve cusps.
pub const CUSP_LIMIT_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SesPoint {
    pub param: f64,
    pub location: Vec2,
    /// The `α ∈ [0, π]` at which this point is singular on the `α`-evolutoid.
    pub alpha_of_param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SesSingularKind {
    Cusp,
    Degenerate,
}

/// Where a singular point of the set comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SesSource {
    /// A zero of `ρ″ₛ` at a regular point of the base curve.
    Vertex,
    /// A cusp of the base curve.
    BaseCusp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SesSingularity {
    pub param: f64,
    pub location: Vec2,
    pub kind: SesSingularKind,
    pub source: SesSource,
    /// `(ρ″ₛ, ρ‴ₛ)`; not finite at base cusps.
    pub diagnostics: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SesInflexion {
    pub param: f64,
    pub location: Vec2,
    pub kind: FlexKind,
    pub nondegenerate: bool,
}

pub fn ses_point(curve: &Curve, param: f64) -> Result<SesPoint> {
    match curve {
        Curve::Support(c) => Ok(support_ses_point(c, param)),
        Curve::Param(c) => param_ses_point(c, param),
    }
}

fn support_ses_point(c: &SupportCurve, theta: f64) -> SesPoint {
    let j = c.rho_jet(theta);
    let (rho, r1) = (j.rho, j.d1);
    let f = c.hedgehog_point(theta);
    let den = rho * rho + r1 * r1;
    let location = if den == 0.0 {
        f
    } else {
        f + (hedgehog_tangent(theta) * (-r1) + hedgehog_normal(theta) * rho) * (rho * rho / den)
    };
    let sign = if rho < 0.0 { -1.0 } else { 1.0 };
    SesPoint { param: theta, location, alpha_of_param: rho.abs().atan2(-r1 * sign) }
}

/// `f + S²(−QD f′ + D³ f′^⊥)/(D⁴ + Q²)`, or `None` where it is `0/0`.
fn param_ses_raw(c: &ParamCurve, t: f64) -> Option<(Vec2, f64)> {
    let lf = c.local_forms(t);
    let d2 = lf.det * lf.det;
    let den = d2 * d2 + lf.q * lf.q;
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let v = (lf.d1 * (-lf.q * lf.det) + lf.d1.perp() * (d2 * lf.det)) * (lf.speed_sq / den);
    Some((lf.point + v, d2.atan2(-lf.q)))
}

fn param_ses_point(c: &ParamCurve, t: f64) -> Result<SesPoint> {
    let scales = c.scales();
    let lf = c.local_forms(t);
    if is_zero(lf.speed_sq.sqrt(), scales.speed) {
        if !c.is_cusp_at(t, &scales) {
            return Err(Error::Regularity { param: t, speed: lf.speed_sq.sqrt() });
        }
        return cusp_limit(c, t);
    }
    match param_ses_raw(c, t) {
        Some((location, alpha)) => Ok(SesPoint { param: t, location, alpha_of_param: alpha }),
        None => Err(Error::Flat { param: t }),
    }
}

/// Two-level Richardson extrapolation of the one-sided limits, averaged.
fn cusp_limit(c: &ParamCurve, t: f64) -> Result<SesPoint> {
    let (a, b) = c.domain();
    let mut sides = Vec::new();
    for dir in [-1.0, 1.0] {
        let pts: Option<Vec<(Vec2, f64)>> = CUSP_LIMIT_STEPS
            .iter()
            .map(|h| t + dir * h)
            .map(|s| if (a..=b).contains(&s) || c.is_closed() { param_ses_raw(c, s) } else { None })
            .collect();
        if let Some(p) = pts {
            let r1a = p[1].0 * 2.0 - p[0].0;
            let r1b = p[2].0 * 2.0 - p[1].0;
            let loc = (r1b * 4.0 - r1a) * (1.0 / 3.0);
            sides.push((loc, p[2].1));
        }
    }
    match sides.as_slice() {
        [] => Err(Error::Flat { param: t }),
        [one] => Ok(SesPoint { param: t, location: one.0, alpha_of_param: one.1 }),
        [l, r, ..] => Ok(SesPoint { param: t, location: (l.0 + r.0) * 0.5, alpha_of_param: 0.5 * (l.1 + r.1) }),
    }
}

/// Reject curves whose singular set is a whole interval (circles).
pub(crate) fn ensure_nondegenerate(c: &SupportCurve) -> Result<()> {
    let w = c.swallowtail_poly();
    let sup = scan_scale(|x| w.eval(x), 0.0, c.closure_period(), SCALE_SAMPLES);
    if is_zero(sup, c.swallowtail_scale()) {
        return Err(Error::DegenerateSingularSet("ρρ″ − ρ′² vanishes identically".into()));
    }
    Ok(())
}

pub fn ses_singularities(curve: &Curve) -> Result<Vec<SesSingularity>> {
    let mut out = match curve {
        Curve::Support(c) => support_ses_singularities(c)?,
        Curve::Param(c) => param_ses_singularities(c)?,
    };
    out.sort_by(|a, b| a.param.total_cmp(&b.param));
    Ok(out)
}

fn support_ses_singularities(c: &SupportCurve) -> Result<Vec<SesSingularity>> {
    ensure_nondegenerate(c)?;
    let t = c.closure_period();
    let n = scan_samples(t);
    let w = c.swallowtail_poly();
    let dw = w.derivative();
    let dw_scale = scan_scale(|x| dw.eval(x), 0.0, t, SCALE_SAMPLES);
    let mut out = Vec::new();
    for r in find_roots(|x| w.eval(x), Some(|x| dw.eval(x)), 0.0, t, n, true) {
        let j = c.rho_jet(r.x);
        let slope = dw.eval(r.x);
        let rs3 = (j.rho * j.rho * j.d3 - 4.0 * j.rho * j.d1 * j.d2 + 3.0 * j.d1.powi(3)) / j.rho.powi(5);
        out.push(SesSingularity {
            param: r.x,
            location: support_ses_point(c, r.x).location,
            kind: if r.crosses && !is_zero(slope, dw_scale) { SesSingularKind::Cusp } else { SesSingularKind::Degenerate },
            source: SesSource::Vertex,
            diagnostics: (w.eval(r.x) / j.rho.powi(3), rs3),
        });
    }
    let rho = c.rho();
    let d_rho = rho.derivative();
    for r in find_roots(|x| rho.eval(x), Some(|x| d_rho.eval(x)), 0.0, t, n, true) {
        out.push(SesSingularity {
            param: r.x,
            location: c.hedgehog_point(r.x),
            kind: SesSingularKind::Cusp,
            source: SesSource::BaseCusp,
            diagnostics: (f64::INFINITY, f64::INFINITY),
        });
    }
    Ok(out)
}

fn param_ses_singularities(c: &ParamCurve) -> Result<Vec<SesSingularity>> {
    let scales = c.scales();
    if scales.n2 <= roots::ZERO_REL * (1.0 + scales.det.powi(2) * scales.speed.powi(4)) {
        return Err(Error::DegenerateSingularSet("ρ″ₛ vanishes identically".into()));
    }
    let (a, b) = c.domain();
    let n2 = |t: f64| c.local_forms(t).n2;
    let n2_d = |t: f64| c.local_forms(t).n2_d1;
    let slope_scale = scan_scale(n2_d, a, b, SCALE_SAMPLES);
    let mut out = Vec::new();
    for r in find_roots(n2, Some(n2_d), a, b, scan_samples(b - a), c.is_closed()) {
        if is_zero(c.derivs(r.x, 1)[1].norm(), scales.speed) {
            continue;
        }
        let j = c.jet_with_scales(r.x, &scales)?;
        let slope = n2_d(r.x);
        out.push(SesSingularity {
            param: r.x,
            location: param_ses_point(c, r.x)?.location,
            kind: if r.crosses && !is_zero(slope, slope_scale) { SesSingularKind::Cusp } else { SesSingularKind::Degenerate },
            source: SesSource::Vertex,
            diagnostics: (j.rho_s2, j.rho_s3),
        });
    }
    for t in cusp_params(c) {
        out.push(SesSingularity {
            param: t,
            location: param_ses_point(c, t)?.location,
            kind: SesSingularKind::Cusp,
            source: SesSource::BaseCusp,
            diagnostics: (f64::INFINITY, f64::INFINITY),
        });
    }
    Ok(out)
}

/// `ρ² − ρ′² + 2ρρ″`, which is `ρ²(1 + ρ′ₛ² + 2ρρ″ₛ)` for a hedgehog.
pub fn ses_inflexion_poly(c: &SupportCurve) -> TrigPoly {
    let r = c.rho();
    let r1 = r.derivative();
    let r2 = r1.derivative();
    r.mul(r).sub(&r1.mul(&r1)).add(&r.mul(&r2).scaled(2.0))
}

/// Zeros of `1 + ρ′ₛ² + 2ρρ″ₛ` with the non-degeneracy test
/// `ρ′ₛ + ρ′ₛ³ − ρ²ρ‴ₛ ≠ 0`.
pub fn ses_inflexions(curve: &Curve) -> Result<Vec<SesInflexion>> {
    match curve {
        Curve::Support(c) => support_ses_inflexions(c),
        Curve::Param(c) => param_ses_inflexions(c),
    }
}

fn classify_roots<F, D>(f: F, df: D, a: f64, b: f64, periodic: bool) -> Vec<(f64, FlexKind)>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let n = scan_samples(b - a);
    let scale = scan_scale(&f, a, b, SCALE_SAMPLES);
    let mut found: Vec<(f64, FlexKind)> = find_roots(&f, Some(&df), a, b, n, periodic)
        .into_iter()
        .map(|r| (r.x, if r.crosses { FlexKind::Inflexion } else { FlexKind::Undulation }))
        .collect();
    for x in find_touching_zeros(&f, &df, a, b, n, periodic, roots::ZERO_REL * (1.0 + scale)) {
        found.push((x, FlexKind::Undulation));
    }
    found.sort_by(|p, q| p.0.total_cmp(&q.0));
    found.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-8);
    found
}

fn nondegenerate(rs1: f64, rho: f64, rs3: f64) -> bool {
    let terms = [rs1, rs1.powi(3), rho * rho * rs3];
    let v = terms[0] + terms[1] - terms[2];
    v.abs() > roots::ZERO_REL * terms.iter().map(|x| x.abs()).sum::<f64>().max(1.0)
}

fn support_ses_inflexions(c: &SupportCurve) -> Result<Vec<SesInflexion>> {
    ensure_nondegenerate(c)?;
    let e = ses_inflexion_poly(c);
    let de = e.derivative();
    Ok(classify_roots(|x| e.eval(x), |x| de.eval(x), 0.0, c.closure_period(), true)
        .into_iter()
        .map(|(x, kind)| {
            let j = c.rho_jet(x);
            let (rho, r1) = (j.rho, j.d1);
            let rs3 = (rho * rho * j.d3 - 4.0 * rho * r1 * j.d2 + 3.0 * r1.powi(3)) / rho.powi(5);
            SesInflexion {
                param: x,
                location: support_ses_point(c, x).location,
                kind,
                nondegenerate: nondegenerate(r1 / rho, rho, rs3),
            }
        })
        .collect())
}

fn param_ses_inflexions(c: &ParamCurve) -> Result<Vec<SesInflexion>> {
    let scales = c.scales();
    let (a, b) = c.domain();
    let e = |t: f64| c.local_forms(t).ses_inflexion;
    let h = 1e-6 * (b - a);
    let de = |t: f64| (e(t + h) - e(t - h)) / (2.0 * h);
    let mut out = Vec::new();
    for (t, kind) in classify_roots(e, de, a, b, c.is_closed()) {
        if is_zero(c.derivs(t, 1)[1].norm(), scales.speed) {
            continue;
        }
        let j = c.jet_with_scales(t, &scales)?;
        out.push(SesInflexion {
            param: t,
            location: param_ses_point(c, t)?.location,
            kind,
            nondegenerate: nondegenerate(j.rho_s1, j.rho, j.rho_s3),
        });
    }
    Ok(out)
}

/// Reading of the denominator of the second coordinate of the model-cusp
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CuspDenominator {
    /// `4 + 81t² + 324t⁴`; agrees with the general parameterization.
    #[default]
    Quartic,
    /// `4 + 81t² + 324t²`.
    Quadratic,
}

/// Closed form of the singular evolutoids set of the cusp `t ↦ (t², t³)`.
pub fn model_cusp_ses(t: f64, den: CuspDenominator) -> Vec2 {
    let t2 = t * t;
    let t4 = t2 * t2;
    let x = t2 * (-8.0 - 54.0 * t2 + 243.0 * t4) / (8.0 + 162.0 * t2 + 648.0 * t4);
    let last = match den {
        CuspDenominator::Quartic => 324.0 * t4,
        CuspDenominator::Quadratic => 324.0 * t2,
    };
    let y = t2 * t * (4.0 - 27.0 * t2 + 81.0 * t4) / (4.0 + 81.0 * t2 + last);
    Vec2::new(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CoordMap;
    use crate::evolutoid::{evolutoid_point, EvolutoidSpec};
    use crate::trigpoly::Period;
    use std::f64::consts::PI;

    fn oval() -> SupportCurve {
        SupportCurve::new(TrigPoly::new(40.0, &[(3, 3.0)], &[(2, -1.0)], Period::TwoPi), 1.0)
    }

    fn cusp() -> Curve {
        ParamCurve::new(CoordMap::poly(&[0.0, 0.0, 1.0]), CoordMap::poly(&[0.0, 0.0, 0.0, 1.0]), (-1.0, 1.0), false)
            .unwrap()
            .into()
    }

    #[test]
    fn circle_collapses_to_centre() {
        let c: Curve = SupportCurve::new(TrigPoly::new(3.0, &[(1, 1.0)], &[(1, -2.0)], Period::TwoPi), 1.0).into();
        let centre = Vec2::new(1.0, -2.0);
        for i in 0..64 {
            let p = ses_point(&c, i as f64 * 0.1).unwrap();
            assert!(p.location.distance(centre) < 1e-12);
            assert!((p.alpha_of_param - PI / 2.0).abs() < 1e-15);
        }
        assert!(matches!(ses_singularities(&c), Err(Error::DegenerateSingularSet(_))));
    }

    #[test]
    fn model_cusp_values() {
        let c = cusp();
        let one = ses_point(&c, 1.0).unwrap().location;
        assert!(one.distance(Vec2::new(181.0 / 818.0, 58.0 / 409.0)) < 1e-12);
        assert!(ses_point(&c, 0.0).unwrap().location.norm() < 1e-9);
        let m = model_cusp_ses(-1.0, CuspDenominator::Quartic);
        assert!(m.distance(Vec2::new(181.0 / 818.0, -58.0 / 409.0)) < 1e-15);
        assert_eq!(model_cusp_ses(0.0, CuspDenominator::Quadratic), Vec2::ZERO);
    }

    #[test]
    fn quartic_reading_matches_pipeline() {
        let c = cusp();
        for &t in &[0.3, 0.5, -0.6, 0.9] {
            let p = ses_point(&c, t).unwrap().location;
            assert!(p.distance(model_cusp_ses(t, CuspDenominator::Quartic)) < 1e-12);
            assert!(p.distance(model_cusp_ses(t, CuspDenominator::Quadratic)) > 1e-4);
        }
    }

    #[test]
    fn composes_with_evolutoid() {
        let c: Curve = oval().into();
        for &t in &[0.0, 0.8, 2.5, 4.4] {
            let s = ses_point(&c, t).unwrap();
            let e = evolutoid_point(&EvolutoidSpec::new(c.clone(), s.alpha_of_param).unwrap(), t).unwrap();
            assert!(s.location.distance(e) < 1e-9);
        }
        let j = oval().rho_jet(0.0);
        let s = ses_point(&c, 0.0).unwrap();
        assert!((1.0 / s.alpha_of_param.tan() + j.d1 / j.rho).abs() < 1e-12);
    }

    #[test]
    fn support_and_parametric_forms_agree() {
        let c = oval();
        let a: Curve = c.clone().into();
        let b: Curve = c.to_param_curve().into();
        for &t in &[0.3, 1.9, 5.1] {
            let (p, q) = (ses_point(&a, t).unwrap(), ses_point(&b, t).unwrap());
            assert!(p.location.distance(q.location) < 1e-9);
            assert!((p.alpha_of_param - q.alpha_of_param).abs() < 1e-12);
        }
        let sa = ses_singularities(&a).unwrap();
        let sb = ses_singularities(&b).unwrap();
        assert_eq!(sa.len(), sb.len());
        for (x, y) in sa.iter().zip(&sb) {
            assert!((x.param - y.param).abs() < 1e-8);
            assert_eq!(x.kind, y.kind);
        }
    }

    #[test]
    fn oval_singularities_are_cusps() {
        let s = ses_singularities(&oval().into()).unwrap();
        assert!(!s.is_empty() && s.len().is_multiple_of(2));
        assert!(s.iter().all(|x| x.kind == SesSingularKind::Cusp && x.source == SesSource::Vertex));
        for x in &s {
            assert!(x.diagnostics.0.abs() < 1e-9);
        }
    }

    #[test]
    fn base_cusps_are_listed() {
        let c: Curve = SupportCurve::new(TrigPoly::new(0.0, &[], &[(3, 1.0)], Period::TwoPi), 1.0).into();
        let s = ses_singularities(&c).unwrap();
        assert_eq!(s.iter().filter(|x| x.source == SesSource::BaseCusp).count(), 6);
    }

    #[test]
    fn convex_with_mild_curvature_has_no_ses_inflexions() {
        let c = SupportCurve::new(TrigPoly::new(10.0, &[(2, 0.1)], &[], Period::TwoPi), 1.0);
        assert!(ses_inflexions(&c.into()).unwrap().is_empty());
    }
}
