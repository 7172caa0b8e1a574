//! Evolutoids: envelopes of the tangent lines of a curve rotated by a fixed
//! angle `α` about their points of tangency.
//!
//! The `α`-evolutoid is `γ_α = f + ρ sin α · R_α 𝕥`, where `R_α` rotates by
//! `α`. For hedgehogs the singular points are the zeros of
//! `g(θ) = ρ cos α + ρ′ sin α`; this form stays finite where `ρ` vanishes.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve::{Curve, FlexKind, ParamCurve, SupportCurve};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::roots::{find_roots, is_zero, scan_samples, scan_scale, SCALE_SAMPLES};
use crate::trigpoly::TrigPoly;

/// Relative threshold on `ρρ″ − ρ′²` (or its parametric analogue) below
/// which a singular point is reported as borderline instead of a cusp.
pub const CUSP_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutoidSpec {
    pub base: Curve,
    pub alpha: f64,
}

impl EvolutoidSpec {
    pub fn new(base: Curve, alpha: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&alpha) {
            return Err(Error::spec("alpha", format!("{alpha} is outside [0, π]")));
        }
        Ok(EvolutoidSpec { base, alpha })
    }

    /// `α ∈ {0, π}`: the evolutoid is the base curve itself.
    pub fn is_base(&self) -> bool {
        self.alpha == 0.0 || self.alpha == PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularClass {
    Cusp,
    Borderline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutoidSingularity {
    pub param: f64,
    pub alpha: f64,
    pub location: Vec2,
    pub is_cusp: bool,
    pub class: SingularClass,
    /// `(ρ′ₛ, ρ″ₛ)`; infinite where the base curve has a cusp.
    pub diagnostics: (f64, f64),
    /// `ρρ″ − ρ′²` for hedgehogs, `N₂` for parametric curves.
    pub cusp_value: f64,
}

/// Point of the `α`-evolutoid at a parameter of the base curve.
pub fn evolutoid_point(spec: &EvolutoidSpec, param: f64) -> Result<Vec2> {
    let alpha = spec.alpha;
    match &spec.base {
        Curve::Support(c) => {
            if spec.is_base() {
                return Ok(c.hedgehog_point(param));
            }
            let rho = c.rho().eval(param);
            Ok(support_evolutoid_point(c, rho, param, alpha))
        }
        Curve::Param(c) => {
            if spec.is_base() {
                return Ok(c.point(param));
            }
            let scales = c.scales();
            let lf = c.local_forms(param);
            if is_zero(lf.speed_sq.sqrt(), scales.speed) {
                return if c.is_cusp_at(param, &scales) {
                    Ok(lf.point)
                } else {
                    Err(Error::Regularity { param, speed: lf.speed_sq.sqrt() })
                };
            }
            if lf.det == 0.0 {
                return Err(Error::Flat { param });
            }
            let (s, co) = alpha.sin_cos();
            let dir = lf.d1 * co + lf.d1.perp() * s;
            Ok(lf.point + dir * (lf.speed_sq * s / lf.det))
        }
    }
}

fn support_evolutoid_point(c: &SupportCurve, rho: f64, theta: f64, alpha: f64) -> Vec2 {
    c.hedgehog_point(theta) + crate::curve::hedgehog_tangent(theta + alpha) * (rho * alpha.sin())
}

/// Support function of the `α`-evolutoid: `p(θ − α) cos α + p′(θ − α) sin α`.
/// Its normal angle at the point generated by base angle `θ` is `θ + α`.
pub fn evolutoid_support(p: &TrigPoly, alpha: f64) -> TrigPoly {
    let (s, c) = alpha.sin_cos();
    p.shifted(alpha).scaled(c).add(&p.derivative().shifted(alpha).scaled(s))
}

/// Singular points of the `α`-evolutoid, sorted by parameter.
pub fn singular_params(spec: &EvolutoidSpec) -> Result<Vec<EvolutoidSingularity>> {
    let alpha = spec.alpha;
    if spec.is_base() {
        return Err(Error::spec("alpha", "singular points need α strictly inside (0, π)"));
    }
    match &spec.base {
        Curve::Support(c) => support_singular_params(spec, c, alpha),
        Curve::Param(c) => param_singular_params(spec, c, alpha),
    }
}

/// `g = ρ cos α + ρ′ sin α`.
pub fn singular_function(c: &SupportCurve, alpha: f64) -> TrigPoly {
    let (s, co) = alpha.sin_cos();
    c.rho().scaled(co).add(&c.rho().derivative().scaled(s))
}

fn support_singular_params(spec: &EvolutoidSpec, c: &SupportCurve, alpha: f64) -> Result<Vec<EvolutoidSingularity>> {
    let t = c.closure_period();
    let g = singular_function(c, alpha);
    let dg = g.derivative();
    let d_rho = c.rho().derivative();
    let scale = c.rho_scale() + scan_scale(|x| d_rho.eval(x), 0.0, t, SCALE_SAMPLES);
    if is_zero(scan_scale(|x| g.eval(x), 0.0, t, SCALE_SAMPLES), scale) {
        return Err(Error::DegenerateSingularSet(format!("ρ cos α + ρ′ sin α vanishes identically at α = {alpha}")));
    }
    let w = c.swallowtail_poly();
    let w_scale = c.swallowtail_scale();
    let roots = find_roots(|x| g.eval(x), Some(|x| dg.eval(x)), 0.0, t, scan_samples(t), true);
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let j = c.rho_jet(r.x);
        let wv = w.eval(r.x);
        let is_cusp = wv.abs() > CUSP_REL_TOL * w_scale;
        let (rs1, rs2) = if j.rho == 0.0 {
            (f64::INFINITY, f64::INFINITY)
        } else {
            (j.d1 / j.rho, wv / j.rho.powi(3))
        };
        out.push(EvolutoidSingularity {
            param: r.x,
            alpha,
            location: evolutoid_point(spec, r.x)?,
            is_cusp,
            class: if is_cusp { SingularClass::Cusp } else { SingularClass::Borderline },
            diagnostics: (rs1, rs2),
            cusp_value: wv,
        });
    }
    Ok(out)
}

fn param_singular_params(spec: &EvolutoidSpec, c: &ParamCurve, alpha: f64) -> Result<Vec<EvolutoidSingularity>> {
    let (a, b) = c.domain();
    let (s, co) = alpha.sin_cos();
    let scales = c.scales();
    // h = Q sin α + D² cos α vanishes where ρ′ₛ = −cot α
    let h = |t: f64| {
        let lf = c.local_forms(t);
        lf.q * s + lf.det * lf.det * co
    };
    let dh = |t: f64| {
        let lf = c.local_forms(t);
        lf.q_d1 * s + 2.0 * lf.det * lf.det_d1 * co
    };
    let scale = scan_scale(|t| c.local_forms(t).q, a, b, SCALE_SAMPLES) + scales.det * scales.det;
    if is_zero(scan_scale(h, a, b, SCALE_SAMPLES), scale) {
        return Err(Error::DegenerateSingularSet(format!("ρ′ₛ + cot α vanishes identically at α = {alpha}")));
    }
    let mut out = Vec::new();
    for r in find_roots(h, Some(dh), a, b, scan_samples(b - a), c.is_closed()) {
        if is_zero(c.derivs(r.x, 1)[1].norm(), scales.speed) {
            continue;
        }
        let lf = c.local_forms(r.x);
        let is_cusp = lf.n2.abs() > CUSP_REL_TOL * scales.n2;
        let d2 = lf.det * lf.det;
        let speed = lf.speed_sq.sqrt();
        out.push(EvolutoidSingularity {
            param: r.x,
            alpha,
            location: evolutoid_point(spec, r.x)?,
            is_cusp,
            class: if is_cusp { SingularClass::Cusp } else { SingularClass::Borderline },
            diagnostics: (lf.q / d2, lf.n2 / (d2 * lf.det * speed)),
            cusp_value: lf.n2,
        });
    }
    Ok(out)
}

/// An oriented line through `point` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub param: f64,
    pub point: Vec2,
    pub direction: Vec2,
}

/// Asymptotes of the `α`-evolutoid: tangent lines at inflexion and
/// undulation points rotated by `α`.
pub fn asymptote_lines(base: &ParamCurve, alpha: f64) -> Vec<Line> {
    base.inflexion_points()
        .into_iter()
        .filter(|f| matches!(f.kind, FlexKind::Inflexion | FlexKind::Undulation))
        .map(|f| {
            let d = base.derivs(f.t, 1);
            Line { param: f.t, point: d[0], direction: d[1].normalized().rotate(alpha) }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaIdentity {
    pub alpha: f64,
    pub area: f64,
    pub evolute_area: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Oriented area of the `α`-evolutoid against
/// `Ã cos²α + Ã_evolute sin²α`, both in closed form.
pub fn area_identity(c: &SupportCurve, alpha: f64) -> AreaIdentity {
    let p = c.support();
    let area = p.half_energy_difference();
    let evolute_area = p.derivative().half_energy_difference();
    let lhs = evolutoid_support(p, alpha).half_energy_difference();
    let (s, co) = alpha.sin_cos();
    let rhs = area * co * co + evolute_area * s * s;
    AreaIdentity { alpha, area, evolute_area, lhs, rhs, residual: (lhs - rhs).abs() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaInequality {
    pub alpha: f64,
    pub gap: f64,
    pub satisfied: bool,
    /// Only translation harmonics (`n ≤ 1`) are present.
    pub is_circle: bool,
}

/// `Ã cos²α − Ã_{E_α}`, summed harmonic by harmonic.
///
/// Harmonic `n` of frequency `ω` contributes `(T/4)·ω²(ω² − 1)(aₙ² + bₙ²) sin²α`,
/// so constants and translations contribute exactly zero.
pub fn area_inequality(c: &SupportCurve, alpha: f64) -> AreaInequality {
    let p = c.support();
    let period = p.period().length();
    let s2 = alpha.sin().powi(2);
    let mut gap = 0.0;
    let mut is_circle = true;
    for (_, w, a, b) in p.harmonics() {
        let amp = a * a + b * b;
        if w != 1.0 && amp != 0.0 {
            is_circle = false;
        }
        gap += 0.25 * period * w * w * (w * w - 1.0) * amp * s2;
    }
    let area = p.half_energy_difference();
    AreaInequality { alpha, gap, satisfied: gap >= -1e-10 * (1.0 + area.abs()), is_circle }
}
