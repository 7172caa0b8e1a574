//! Curve representations and their differential data.
//!
//! Two kinds of input curves are supported: hedgehogs given by a
//! trigonometric support function ([`SupportCurve`]) and parametric curves
//! given by polynomial-plus-trigonometric coordinate tables ([`ParamCurve`]).
//! All derivatives are exact coefficient arithmetic.
//!
//! Frame conventions for hedgehogs follow polar tangential coordinates:
//! at angle `θ` the tangent is `(−sin θ, cos θ)`, the normal `(−cos θ, −sin θ)`
//! and `f′(θ) = ρ(θ)·𝕥(θ)` with `ρ = p + p″`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::quadrature::integrate_with_breaks;
use crate::roots::{self, find_roots, find_touching_zeros, is_zero, scan_samples, scan_scale, SCALE_SAMPLES};
use crate::series::Series;
use crate::trigpoly::{Period, TrigPoly};

/// Tangent of a hedgehog at support angle `θ`.
pub fn hedgehog_tangent(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(-s, c)
}

/// Normal of a hedgehog at support angle `θ`; `(𝕥, 𝕟)` is positively oriented.
pub fn hedgehog_normal(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(-c, -s)
}

/// Differential data of a curve at one parameter value.
///
/// `rho_s1..rho_s3` are derivatives of the radius of curvature with respect
/// to arc length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JetSample {
    pub param: f64,
    pub point: Vec2,
    pub tangent: Vec2,
    pub normal: Vec2,
    pub kappa: f64,
    pub rho: f64,
    pub rho_s1: f64,
    pub rho_s2: f64,
    pub rho_s3: f64,
}

/// `ρ` and its first three `θ`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoJet {
    pub rho: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl RhoJet {
    /// `ρρ″ − ρ′²`; its zeros are the critical points of the singular-set graph.
    pub fn swallowtail_function(&self) -> f64 {
        self.rho * self.d2 - self.d1 * self.d1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve {
    p: TrigPoly,
    rho: TrigPoly,
    rotation: f64,
}

impl SupportCurve {
    pub fn new(p: TrigPoly, rotation: f64) -> Self {
        let rho = p.add(&p.nth_derivative(2));
        SupportCurve { p, rho, rotation }
    }

    pub fn support(&self) -> &TrigPoly {
        &self.p
    }

    /// Radius of curvature `ρ = p + p″` as a trigonometric polynomial.
    pub fn rho(&self) -> &TrigPoly {
        &self.rho
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn period(&self) -> Period {
        self.p.period()
    }

    /// Length of the minimal closure domain `[0, T]`.
    pub fn closure_period(&self) -> f64 {
        self.p.period().length()
    }

    /// `(p, p′, …, p⁽ᵒʳᵈᵉʳ⁾)` at `θ`.
    pub fn support_jet(&self, theta: f64, order: usize) -> Vec<f64> {
        self.p.eval_derivs(theta, order)
    }

    pub fn rho_jet(&self, theta: f64) -> RhoJet {
        let d = self.rho.eval_derivs(theta, 3);
        RhoJet { rho: d[0], d1: d[1], d2: d[2], d3: d[3] }
    }

    /// Point of the hedgehog with outward normal `(cos θ, sin θ)`.
    pub fn hedgehog_point(&self, theta: f64) -> Vec2 {
        let d = self.p.eval_derivs(theta, 1);
        let (s, c) = theta.sin_cos();
        Vec2::new(d[0] * c - d[1] * s, d[0] * s + d[1] * c)
    }

    /// Arc-length jet at `θ`; fails where `ρ` vanishes (a cusp of the hedgehog).
    pub fn jet(&self, theta: f64) -> Result<JetSample> {
        let r = self.rho_jet(theta);
        if is_zero(r.rho, self.rho_scale()) {
            return Err(Error::Regularity { param: theta, speed: r.rho.abs() });
        }
        let (rho, r1, r2, r3) = (r.rho, r.d1, r.d2, r.d3);
        Ok(JetSample {
            param: theta,
            point: self.hedgehog_point(theta),
            tangent: hedgehog_tangent(theta),
            normal: hedgehog_normal(theta),
            kappa: 1.0 / rho,
            rho,
            rho_s1: r1 / rho,
            rho_s2: (rho * r2 - r1 * r1) / rho.powi(3),
            rho_s3: (rho * rho * r3 - 4.0 * rho * r1 * r2 + 3.0 * r1.powi(3)) / rho.powi(5),
        })
    }

    /// Signed length `∫₀ᵀ p dθ`.
    pub fn length(&self) -> f64 {
        self.p.integral_over_period()
    }

    /// Oriented area `½∫₀ᵀ (p² − p′²) dθ` in closed form.
    pub fn oriented_area(&self) -> f64 {
        self.p.half_energy_difference()
    }

    /// `sup |ρ|` over a coarse scan.
    pub fn rho_scale(&self) -> f64 {
        scan_scale(|t| self.rho.eval(t), 0.0, self.closure_period(), SCALE_SAMPLES)
    }

    /// `ρρ″ − ρ′²` as an exact trigonometric polynomial.
    pub fn swallowtail_poly(&self) -> TrigPoly {
        let r1 = self.rho.derivative();
        let r2 = r1.derivative();
        self.rho.mul(&r2).sub(&r1.mul(&r1))
    }

    /// Scale of the terms of `ρρ″ − ρ′²`, for relative zero tests.
    pub fn swallowtail_scale(&self) -> f64 {
        let r1 = self.rho.derivative();
        let r2 = r1.derivative();
        let t = self.closure_period();
        scan_scale(|x| self.rho.eval(x) * r2.eval(x), 0.0, t, SCALE_SAMPLES)
            + scan_scale(|x| r1.eval(x).powi(2), 0.0, t, SCALE_SAMPLES)
    }

    /// The hedgehog map as an exact parametric curve over `[0, T]`.
    pub fn to_param_curve(&self) -> ParamCurve {
        let mut x = TermAccumulator::default();
        let mut y = TermAccumulator::default();
        let p = &self.p;
        let dp = p.derivative();
        // x = p cos θ − p′ sin θ,  y = p sin θ + p′ cos θ
        for (term, sign_x, sign_y) in trig_terms(p).into_iter().map(|t| (t, 1.0, 1.0)) {
            x.times_cos1(term, sign_x);
            y.times_sin1(term, sign_y);
        }
        for term in trig_terms(&dp) {
            x.times_sin1(term, -1.0);
            y.times_cos1(term, 1.0);
        }
        let t = self.closure_period();
        ParamCurve::new(x.into_map(), y.into_map(), (0.0, t), true).expect("hedgehog map closes")
    }
}

#[derive(Debug, Clone, Copy)]
enum TrigKind {
    Cos,
    Sin,
}

fn trig_terms(p: &TrigPoly) -> Vec<(TrigKind, f64, f64)> {
    let mut out = vec![(TrigKind::Cos, 0.0, p.constant())];
    for (_, w, a, b) in p.harmonics() {
        out.push((TrigKind::Cos, w, a));
        out.push((TrigKind::Sin, w, b));
    }
    out
}

/// Collects `Σ c cos(ωt) + s sin(ωt)` keyed by `2ω` (frequencies are half-integers).
#[derive(Default)]
struct TermAccumulator {
    terms: BTreeMap<i64, (f64, f64)>,
}

impl TermAccumulator {
    fn add(&mut self, kind: TrigKind, w: f64, c: f64) {
        let key = (2.0 * w).round() as i64;
        let (key, c) = match kind {
            TrigKind::Cos => (key.abs(), c),
            TrigKind::Sin if key < 0 => (-key, -c),
            TrigKind::Sin => (key, c),
        };
        let e = self.terms.entry(key).or_insert((0.0, 0.0));
        match kind {
            TrigKind::Cos => e.0 += c,
            TrigKind::Sin => e.1 += c,
        }
    }

    fn times_cos1(&mut self, (kind, w, c): (TrigKind, f64, f64), sign: f64) {
        let c = 0.5 * sign * c;
        self.add(kind, w - 1.0, c);
        self.add(kind, w + 1.0, c);
    }

    fn times_sin1(&mut self, (kind, w, c): (TrigKind, f64, f64), sign: f64) {
        let c = 0.5 * sign * c;
        match kind {
            // cos(ω)·sin = ½[sin(ω+1) − sin(ω−1)]
            TrigKind::Cos => {
                self.add(TrigKind::Sin, w + 1.0, c);
                self.add(TrigKind::Sin, w - 1.0, -c);
            }
            // sin(ω)·sin = ½[cos(ω−1) − cos(ω+1)]
            TrigKind::Sin => {
                self.add(TrigKind::Cos, w - 1.0, c);
                self.add(TrigKind::Cos, w + 1.0, -c);
            }
        }
    }

    fn into_map(self) -> CoordMap {
        let mut m = CoordMap::default();
        for (key, (c, s)) in self.terms {
            if key == 0 {
                m.poly = vec![c];
                continue;
            }
            let w = key as f64 / 2.0;
            if c != 0.0 {
                m.cos.push((w, c));
            }
            if s != 0.0 {
                m.sin.push((w, s));
            }
        }
        m
    }
}

/// One coordinate of a parametric curve: `Σ cₖ tᵏ + Σ aᵢ cos(ωᵢt) + Σ bᵢ sin(ωᵢt)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoordMap {
    pub poly: Vec<f64>,
    /// `(frequency, coefficient)` pairs.
    pub cos: Vec<(f64, f64)>,
    pub sin: Vec<(f64, f64)>,
}

impl CoordMap {
    pub fn poly(coeffs: &[f64]) -> Self {
        CoordMap { poly: coeffs.to_vec(), ..Default::default() }
    }

    /// Values of the coordinate and its derivatives up to `order` at `t`.
    pub fn derivs(&self, t: f64, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order + 1];
        for (d, slot) in out.iter_mut().enumerate() {
            // Horner on the d-th derivative's coefficients c_k·k!/(k−d)!
            let mut acc = 0.0;
            for k in (d..self.poly.len()).rev() {
                let falling: f64 = ((k - d + 1)..=k).map(|i| i as f64).product();
                acc = acc * t + self.poly[k] * falling;
            }
            *slot = acc;
        }
        for (terms, is_sin) in [(&self.cos, false), (&self.sin, true)] {
            for &(w, a) in terms {
                let (s, c) = (w * t).sin_cos();
                let mut wd = 1.0;
                for (d, slot) in out.iter_mut().enumerate() {
                    let (cd, sd) = match d % 4 {
                        0 => (c, s),
                        1 => (-s, c),
                        2 => (-c, -s),
                        _ => (s, -c),
                    };
                    *slot += wd * a * if is_sin { sd } else { cd };
                    wd *= w;
                }
            }
        }
        out
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivs(t, 0)[0]
    }
}

/// Smooth local quantities of a parametric curve at one parameter.
///
/// With `S = |f′|`, `D = det(f′, f″)`, the arc-length derivatives of the
/// radius of curvature are `ρ′ₛ = Q/D²` and `ρ″ₛ = N₂/(D³S)`, where
/// `Q = 3(f′·f″)D − S²D′` and `N₂ = Q′D − 2QD′`. These numerators stay
/// finite through inflexions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalForms {
    pub point: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
    pub d3: Vec2,
    pub speed_sq: f64,
    pub det: f64,
    pub det_d1: f64,
    pub q: f64,
    pub q_d1: f64,
    pub n2: f64,
    pub n2_d1: f64,
    /// `D⁴ + Q² + 2S²N₂`, which has the sign of `1 + ρ′ₛ² + 2ρρ″ₛ`.
    pub ses_inflexion: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamCurve {
    x: CoordMap,
    y: CoordMap,
    domain: (f64, f64),
    closed: bool,
    scales: ParamScales,
}

/// Kind of a zero of the curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlexKind {
    Inflexion,
    Undulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inflexion {
    pub t: f64,
    pub kind: FlexKind,
    pub nondegenerate: bool,
}

impl ParamCurve {
    pub fn new(x: CoordMap, y: CoordMap, domain: (f64, f64), closed: bool) -> Result<Self> {
        if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
            return Err(Error::spec("domain", "expected [t0, t1] with t0 < t1"));
        }
        let placeholder = ParamScales { speed: 0.0, det: 0.0, n2: 0.0, ses_inflexion: 0.0 };
        let mut c = ParamCurve { x, y, domain, closed, scales: placeholder };
        if closed {
            let a = c.derivs(domain.0, 3);
            let b = c.derivs(domain.1, 3);
            let scale = a.iter().chain(&b).map(|v| v.norm()).fold(0.0, f64::max);
            for (k, (u, v)) in a.iter().zip(&b).enumerate() {
                if !is_zero(u.distance(*v), scale) {
                    return Err(Error::spec(
                        "closed",
                        format!("curve does not close: derivative {k} differs between the domain ends"),
                    ));
                }
            }
        }
        c.scales = c.compute_scales();
        Ok(c)
    }

    pub fn x_map(&self) -> &CoordMap {
        &self.x
    }

    pub fn y_map(&self) -> &CoordMap {
        &self.y
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn point(&self, t: f64) -> Vec2 {
        Vec2::new(self.x.eval(t), self.y.eval(t))
    }

    /// `f(t), f′(t), …, f⁽ᵒʳᵈᵉʳ⁾(t)`.
    pub fn derivs(&self, t: f64, order: usize) -> Vec<Vec2> {
        let xs = self.x.derivs(t, order);
        let ys = self.y.derivs(t, order);
        xs.into_iter().zip(ys).map(|(x, y)| Vec2::new(x, y)).collect()
    }

    fn series(&self, t: f64) -> (Series, Series) {
        (Series::from_derivatives(&self.x.derivs(t, 5)), Series::from_derivatives(&self.y.derivs(t, 5)))
    }

    pub fn local_forms(&self, t: f64) -> LocalForms {
        let (xs, ys) = self.series(t);
        let dx = xs.deriv();
        let dy = ys.deriv();
        let ddx = dx.deriv();
        let ddy = dy.deriv();
        let s2 = &(&dx * &dx) + &(&dy * &dy);
        let det = &(&dx * &ddy) - &(&dy * &ddx);
        let dot = &(&dx * &ddx) + &(&dy * &ddy);
        let det_d = det.deriv();
        let q = &(&dot * &det).scale(3.0) - &(&s2 * &det_d);
        let q_d = q.deriv();
        let n2 = &(&q_d * &det) - &(&q * &det_d).scale(2.0);
        let e = &(&det.powi(4) + &(&q * &q)) + &(&s2 * &n2).scale(2.0);
        let d = self.derivs(t, 3);
        LocalForms {
            point: d[0],
            d1: d[1],
            d2: d[2],
            d3: d[3],
            speed_sq: s2.value(),
            det: det.value(),
            det_d1: det_d.value(),
            q: q.value(),
            q_d1: q_d.value(),
            n2: n2.value(),
            n2_d1: n2.deriv().value(),
            ses_inflexion: e.value(),
        }
    }

    /// Scan scales of `|f′|`, `|D|` and `|N₂|`.
    /// Magnitudes of the local forms over the domain, fixed at construction.
    pub fn scales(&self) -> ParamScales {
        self.scales
    }

    fn compute_scales(&self) -> ParamScales {
        let (a, b) = self.domain;
        ParamScales {
            speed: scan_scale(|t| self.derivs(t, 1)[1].norm(), a, b, SCALE_SAMPLES),
            det: scan_scale(|t| self.local_forms(t).det, a, b, SCALE_SAMPLES),
            n2: scan_scale(|t| self.local_forms(t).n2, a, b, SCALE_SAMPLES),
            ses_inflexion: scan_scale(|t| self.local_forms(t).ses_inflexion, a, b, SCALE_SAMPLES),
        }
    }

    /// A singular point whose second and third derivatives are independent.
    pub fn is_cusp_at(&self, t: f64, scales: &ParamScales) -> bool {
        let d = self.derivs(t, 3);
        is_zero(d[1].norm(), scales.speed) && !is_zero(d[2].cross(d[3]), scales.speed * scales.speed)
    }

    /// Arc-length jet via the chain rule on exact Taylor coefficients.
    pub fn jet(&self, t: f64) -> Result<JetSample> {
        let scales = self.scales();
        self.jet_with_scales(t, &scales)
    }

    pub fn jet_with_scales(&self, t: f64, scales: &ParamScales) -> Result<JetSample> {
        let (xs, ys) = self.series(t);
        let dx = xs.deriv();
        let dy = ys.deriv();
        let ddx = dx.deriv();
        let ddy = dy.deriv();
        let s2 = &(&dx * &dx) + &(&dy * &dy);
        let speed = s2.value().sqrt();
        if is_zero(speed, scales.speed) {
            return Err(Error::Regularity { param: t, speed });
        }
        let det = &(&dx * &ddy) - &(&dy * &ddx);
        if is_zero(det.value(), scales.det) {
            return Err(Error::Flat { param: t });
        }
        let s = s2.sqrt();
        let rho = (&s * &s2).div(&det);
        let rho_s1 = rho.deriv().div(&s);
        let rho_s2 = rho_s1.deriv().div(&s);
        let rho_s3 = rho_s2.deriv().div(&s);
        let tangent = Vec2::new(dx.value(), dy.value()) * (1.0 / speed);
        Ok(JetSample {
            param: t,
            point: Vec2::new(xs.value(), ys.value()),
            tangent,
            normal: tangent.perp(),
            kappa: det.value() / (speed * speed * speed),
            rho: rho.value(),
            rho_s1: rho_s1.value(),
            rho_s2: rho_s2.value(),
            rho_s3: rho_s3.value(),
        })
    }

    /// `½∮(x dy − y dx)` by adaptive quadrature.
    pub fn shoelace_area(&self) -> Result<f64> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        let (a, b) = self.domain;
        let integrand = |t: f64| {
            let d = self.derivs(t, 1);
            0.5 * d[0].cross(d[1])
        };
        let bound = scan_scale(integrand, a, b, SCALE_SAMPLES) * (b - a);
        let breaks: Vec<f64> = (0..=16).map(|i| a + (b - a) * i as f64 / 16.0).collect();
        Ok(integrate_with_breaks(integrand, &breaks, 1e-14 * (1.0 + bound)).value)
    }

    fn scan_count(&self) -> usize {
        scan_samples(self.domain.1 - self.domain.0)
    }

    /// Inflexion and undulation points at regular parameters.
    pub fn inflexion_points(&self) -> Vec<Inflexion> {
        let scales = self.scales();
        let (a, b) = self.domain;
        let n = self.scan_count();
        let det = |t: f64| self.local_forms(t).det;
        let det_d = |t: f64| self.local_forms(t).det_d1;
        let mut found: Vec<(f64, FlexKind)> = find_roots(det, Some(det_d), a, b, n, self.closed)
            .into_iter()
            .map(|r| (r.x, if r.crosses { FlexKind::Inflexion } else { FlexKind::Undulation }))
            .collect();
        let tol = roots::ZERO_REL * (1.0 + scales.det);
        for t in find_touching_zeros(det, det_d, a, b, n, self.closed, tol) {
            found.push((t, FlexKind::Undulation));
        }
        found.sort_by(|p, q| p.0.total_cmp(&q.0));
        found.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-8);
        found
            .into_iter()
            .filter(|&(t, _)| !is_zero(self.derivs(t, 1)[1].norm(), scales.speed))
            .map(|(t, kind)| {
                let d = self.derivs(t, 3);
                let nondeg = d[1].cross(d[3]);
                let scale = scales.speed * scan_scale(|s| self.derivs(s, 3)[3].norm(), a, b, 256);
                Inflexion { t, kind, nondegenerate: !is_zero(nondeg, scale) }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamScales {
    pub speed: f64,
    pub det: f64,
    pub n2: f64,
    pub ses_inflexion: f64,
}

/// Either kind of input curve.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Support(SupportCurve),
    Param(ParamCurve),
}

impl Curve {
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Curve::Support(c) => (0.0, c.closure_period()),
            Curve::Param(c) => c.domain(),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Curve::Support(_) => true,
            Curve::Param(c) => c.is_closed(),
        }
    }

    pub fn point(&self, param: f64) -> Vec2 {
        match self {
            Curve::Support(c) => c.hedgehog_point(param),
            Curve::Param(c) => c.point(param),
        }
    }

    pub fn jet(&self, param: f64) -> Result<JetSample> {
        match self {
            Curve::Support(c) => c.jet(param),
            Curve::Param(c) => c.jet(param),
        }
    }

    pub fn as_support(&self) -> Result<&SupportCurve> {
        match self {
            Curve::Support(c) => Ok(c),
            Curve::Param(_) => Err(Error::NotSupportCurve),
        }
    }

    /// Uniform parameter samples; closed curves omit the duplicate end point.
    pub fn sample_params(&self, n: usize) -> Vec<f64> {
        let (a, b) = self.domain();
        if self.is_closed() {
            (0..n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
        } else {
            (0..n).map(|i| a + (b - a) * i as f64 / (n.max(2) - 1) as f64).collect()
        }
    }

    pub fn check_genericity(&self) -> GenericityReport {
        match self {
            Curve::Support(c) => support_genericity(c),
            Curve::Param(c) => param_genericity(c),
        }
    }
}

impl From<SupportCurve> for Curve {
    fn from(c: SupportCurve) -> Self {
        Curve::Support(c)
    }
}

impl From<ParamCurve> for Curve {
    fn from(c: ParamCurve) -> Self {
        Curve::Param(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// (a) `ρ″ₛ` and `ρ‴ₛ` vanish together.
    DegenerateSesSingularity,
    /// (b)
    Undulation,
    /// (c)
    DegenerateInflexion,
    /// (d) `ρ` and `ρ′` vanish together.
    FrontNotTransversal,
    /// (e) the singular set contains a parameter interval.
    DegenerateSigma,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub param: Option<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenericFlags {
    pub evolutoid: bool,
    pub ses: bool,
    pub front: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericityReport {
    pub violations: Vec<Violation>,
    pub is_generic_for: GenericFlags,
}

impl GenericityReport {
    fn from_violations(violations: Vec<Violation>, support: bool) -> Self {
        let has = |k: ViolationKind| violations.iter().any(|v| v.kind == k);
        use ViolationKind::*;
        let flags = GenericFlags {
            evolutoid: !(has(Undulation) || has(DegenerateInflexion) || has(DegenerateSigma)),
            ses: !(has(DegenerateSesSingularity) || has(Undulation) || has(DegenerateInflexion) || has(DegenerateSigma)),
            front: support && !(has(DegenerateSesSingularity) || has(FrontNotTransversal) || has(DegenerateSigma)),
        };
        GenericityReport { violations, is_generic_for: flags }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

fn support_genericity(c: &SupportCurve) -> GenericityReport {
    let mut violations = Vec::new();
    let t = c.closure_period();
    let n = scan_samples(t);
    let w = c.swallowtail_poly();
    let w_scale = c.swallowtail_scale();
    let w_sup = scan_scale(|x| w.eval(x), 0.0, t, SCALE_SAMPLES);
    if is_zero(w_sup, w_scale) {
        violations.push(Violation { kind: ViolationKind::DegenerateSigma, param: None, values: vec![w_sup] });
    } else {
        let dw = w.derivative();
        let dw_scale = scan_scale(|x| dw.eval(x), 0.0, t, SCALE_SAMPLES);
        for r in find_roots(|x| w.eval(x), Some(|x| dw.eval(x)), 0.0, t, n, true) {
            let slope = dw.eval(r.x);
            if !r.crosses || is_zero(slope, dw_scale) {
                violations.push(Violation {
                    kind: ViolationKind::DegenerateSesSingularity,
                    param: Some(r.x),
                    values: vec![w.eval(r.x), slope],
                });
            }
        }
        let tol = roots::ZERO_REL * (1.0 + w_scale);
        for x in find_touching_zeros(|x| w.eval(x), |x| dw.eval(x), 0.0, t, n, true, tol) {
            violations.push(Violation {
                kind: ViolationKind::DegenerateSesSingularity,
                param: Some(x),
                values: vec![w.eval(x), dw.eval(x)],
            });
        }
    }
    let rho = c.rho();
    let d_rho = rho.derivative();
    let rho_scale = c.rho_scale();
    let d_scale = scan_scale(|x| d_rho.eval(x), 0.0, t, SCALE_SAMPLES);
    let mut rho_zeros: Vec<f64> = find_roots(|x| rho.eval(x), Some(|x| d_rho.eval(x)), 0.0, t, n, true)
        .into_iter()
        .map(|r| r.x)
        .collect();
    rho_zeros.extend(find_touching_zeros(
        |x| rho.eval(x),
        |x| d_rho.eval(x),
        0.0,
        t,
        n,
        true,
        roots::ZERO_REL * (1.0 + rho_scale),
    ));
    for x in rho_zeros {
        let slope = d_rho.eval(x);
        if is_zero(slope, d_scale.max(rho_scale)) {
            violations.push(Violation {
                kind: ViolationKind::FrontNotTransversal,
                param: Some(x),
                values: vec![rho.eval(x), slope],
            });
        }
    }
    violations.sort_by(|a, b| a.param.unwrap_or(-1.0).total_cmp(&b.param.unwrap_or(-1.0)));
    GenericityReport::from_violations(violations, true)
}

fn param_genericity(c: &ParamCurve) -> GenericityReport {
    let mut violations = Vec::new();
    let scales = c.scales();
    for f in c.inflexion_points() {
        match f.kind {
            FlexKind::Undulation => {
                violations.push(Violation { kind: ViolationKind::Undulation, param: Some(f.t), values: vec![] })
            }
            FlexKind::Inflexion if !f.nondegenerate => violations.push(Violation {
                kind: ViolationKind::DegenerateInflexion,
                param: Some(f.t),
                values: vec![],
            }),
            _ => {}
        }
    }
    if is_zero(scales.n2, 0.0) || scales.n2 <= roots::ZERO_REL * scales.det.powi(2) * scales.speed.powi(4) {
        violations.push(Violation { kind: ViolationKind::DegenerateSigma, param: None, values: vec![scales.n2] });
    } else {
        let (a, b) = c.domain();
        let n = c.scan_count();
        let n2 = |t: f64| c.local_forms(t).n2;
        let n2_d = |t: f64| c.local_forms(t).n2_d1;
        let slope_scale = scan_scale(n2_d, a, b, SCALE_SAMPLES);
        for r in find_roots(n2, Some(n2_d), a, b, n, c.is_closed()) {
            if c.is_cusp_at(r.x, &scales) || is_zero(c.derivs(r.x, 1)[1].norm(), scales.speed) {
                continue;
            }
            let slope = n2_d(r.x);
            if !r.crosses || is_zero(slope, slope_scale) {
                violations.push(Violation {
                    kind: ViolationKind::DegenerateSesSingularity,
                    param: Some(r.x),
                    values: vec![n2(r.x), slope],
                });
            }
        }
    }
    GenericityReport::from_violations(violations, false)
}

/// Parameters at which `f` is a cusp of a parametric curve.
pub fn cusp_params(c: &ParamCurve) -> Vec<f64> {
    let scales = c.scales();
    let (a, b) = c.domain();
    let speed = |t: f64| c.derivs(t, 1)[1];
    // velocity zeros are common zeros of both components; search |f′|² minima
    let n = c.scan_count();
    find_touching_zeros(
        |t| speed(t).dot(speed(t)),
        |t| {
            let d = c.derivs(t, 2);
            2.0 * d[1].dot(d[2])
        },
        a,
        b,
        n,
        c.is_closed(),
        roots::ZERO_REL * (1.0 + scales.speed * scales.speed),
    )
    .into_iter()
    .filter(|&t| c.is_cusp_at(t, &scales))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn oval() -> SupportCurve {
        SupportCurve::new(TrigPoly::new(40.0, &[(3, 3.0)], &[(2, -1.0)], Period::TwoPi), 1.0)
    }

    fn circle(r: f64) -> SupportCurve {
        SupportCurve::new(TrigPoly::constant_fn(r, Period::TwoPi), 1.0)
    }

    fn cusp() -> ParamCurve {
        ParamCurve::new(CoordMap::poly(&[0.0, 0.0, 1.0]), CoordMap::poly(&[0.0, 0.0, 0.0, 1.0]), (-1.0, 1.0), false)
            .unwrap()
    }

    fn unit_circle_param(clockwise: bool) -> ParamCurve {
        let s = if clockwise { -1.0 } else { 1.0 };
        ParamCurve::new(
            CoordMap { cos: vec![(1.0, 1.0)], ..Default::default() },
            CoordMap { sin: vec![(1.0, s)], ..Default::default() },
            (0.0, 2.0 * PI),
            true,
        )
        .unwrap()
    }

    #[test]
    fn support_jet_examples() {
        assert_eq!(circle(3.0).support_jet(1.2, 2), vec![3.0, 0.0, 0.0]);
        assert_eq!(oval().support_jet(0.0, 2), vec![43.0, -2.0, -27.0]);
        let half = SupportCurve::new(TrigPoly::new(0.0, &[], &[(5, 1.0)], Period::FourPi), 2.5);
        let d = half.support_jet(0.0, 1);
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 2.5).abs() < 1e-15);
    }

    #[test]
    fn hedgehog_point_examples() {
        assert_eq!(circle(2.0).hedgehog_point(0.0), Vec2::new(2.0, 0.0));
        assert!((circle(2.0).hedgehog_point(2.2).norm() - 2.0).abs() < 1e-14);
        let sin2 = SupportCurve::new(TrigPoly::new(0.0, &[], &[(2, 1.0)], Period::TwoPi), 1.0);
        let p = sin2.hedgehog_point(0.0);
        assert!(p.distance(Vec2::new(0.0, 2.0)) < 1e-15);
    }

    #[test]
    fn hedgehog_velocity_is_rho_times_tangent() {
        let c = oval();
        let h = 1e-5;
        for &t in &[0.1, 1.0, 4.0] {
            let v = (c.hedgehog_point(t + h) - c.hedgehog_point(t - h)) * (0.5 / h);
            let expect = hedgehog_tangent(t) * c.rho_jet(t).rho;
            assert!(v.distance(expect) < 1e-6);
        }
    }

    #[test]
    fn param_jet_examples() {
        let c = unit_circle_param(false);
        let j = c.jet(0.7).unwrap();
        assert!((j.kappa - 1.0).abs() < 1e-14 && (j.rho - 1.0).abs() < 1e-14 && j.rho_s1.abs() < 1e-14);
        let j = cusp().jet(1.0).unwrap();
        assert!((j.kappa - 6.0 / 13f64.powf(1.5)).abs() < 1e-15);
        assert!(matches!(cusp().jet(0.0), Err(Error::Regularity { .. })));
    }

    #[test]
    fn lengths_and_areas() {
        assert!((circle(3.0).length() - 6.0 * PI).abs() < 1e-13);
        assert!((oval().length() - 80.0 * PI).abs() < 1e-12);
        let sin2 = SupportCurve::new(TrigPoly::new(0.0, &[], &[(2, 1.0)], Period::TwoPi), 1.0);
        assert_eq!(sin2.length(), 0.0);
        assert!((circle(3.0).oriented_area() - 9.0 * PI).abs() < 1e-13);
        assert!((oval().oriented_area() - 1562.5 * PI).abs() < 1e-10);
        let point = SupportCurve::new(TrigPoly::new(0.0, &[], &[(1, 1.0)], Period::TwoPi), 1.0);
        assert_eq!(point.oriented_area(), 0.0);
    }

    #[test]
    fn shoelace_examples() {
        assert!((unit_circle_param(false).shoelace_area().unwrap() - PI).abs() < 1e-13);
        assert!((unit_circle_param(true).shoelace_area().unwrap() + PI).abs() < 1e-13);
        assert_eq!(cusp().shoelace_area(), Err(Error::NotClosed));
    }

    #[test]
    fn hedgehog_as_param_matches_pointwise() {
        for c in [oval(), SupportCurve::new(TrigPoly::new(0.0, &[], &[(5, 1.0)], Period::FourPi), 2.5)] {
            let pc = c.to_param_curve();
            for &t in &[0.0, 0.4, 2.0, 5.5, 9.0] {
                assert!(pc.point(t).distance(c.hedgehog_point(t)) < 1e-12);
            }
        }
    }

    #[test]
    fn inflexion_examples() {
        assert!(unit_circle_param(false).inflexion_points().is_empty());
        let quartic = ParamCurve::new(CoordMap::poly(&[0.0, 1.0]), CoordMap::poly(&[0.0, 0.0, 0.0, 0.0, 1.0]), (-1.0, 1.0), false)
            .unwrap();
        let f = quartic.inflexion_points();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FlexKind::Undulation);
        assert!(f[0].t.abs() < 1e-6);
    }

    #[test]
    fn genericity_examples() {
        let r = Curve::from(circle(1.0)).check_genericity();
        assert!(r.has(ViolationKind::DegenerateSigma));
        assert!(!r.is_generic_for.front);
        assert!(Curve::from(oval()).check_genericity().is_empty());
        let sin3 = SupportCurve::new(TrigPoly::new(0.0, &[], &[(3, 1.0)], Period::TwoPi), 1.0);
        let r = Curve::from(sin3).check_genericity();
        assert!(!r.has(ViolationKind::FrontNotTransversal));
        assert!(r.is_empty());
    }

    #[test]
    fn cusp_of_model_curve() {
        let c = cusp();
        let ps = cusp_params(&c);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].abs() < 1e-6);
    }
}
