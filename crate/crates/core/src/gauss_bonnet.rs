//! Curvatures of the extended evolutoids front and the Gauss–Bonnet
//! identity `∫_M K dA = −2∫_Σ κ_s dτ` over `M = [0, π] × [0, T]`.
//!
//! The singular curvature is evaluated from its definition,
//! `κ_s = sgn(dλ(η))·det(γ̂′, γ̂″, ν)/|γ̂′|³` along `γ̂ = F(α_Σ(θ), θ)` with the
//! null direction `η = ±∂/∂θ`, which gives
//!
//! ```text
//! κ_s dτ = −N / ((1 + ρ²)(ρ² + ρ′²)√(ρ² + ρ⁴ + ρ′²)) dθ,
//! N = ρ⁶ + ρ′⁴ − ρ⁴(ρ′² − 1) + 2ρ³ρ″ + 2ρ⁵ρ″.
//! ```
//!
//! The same expression with a positive sign is also provided
//! ([`printed_ks_dtau_density`]); it violates the identity by an overall sign.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{RhoJet, SupportCurve};
use crate::error::{Error, Result};
use crate::front::{alpha_sigma, ensure_transversal, rho_zeros, swallowtail_thetas};
use crate::quadrature::{integrate, integrate_with_breaks, QuadratureEstimate};
use crate::roots::ZERO_REL;
use crate::ses::ensure_nondegenerate;

/// Default absolute tolerance per strip.
pub const DEFAULT_TOL: f64 = 1e-8;

/// `sin α` with the boundary values `α ∈ {0, π}` mapped to exactly zero.
fn sin_alpha(alpha: f64) -> f64 {
    if alpha == 0.0 || alpha == PI {
        0.0
    } else {
        alpha.sin()
    }
}

fn on_sigma(j: &RhoJet, g: f64) -> bool {
    g.abs() <= ZERO_REL * (1.0 + j.rho.abs() + j.d1.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicForm {
    pub kg: f64,
    pub kg_dtau_density: f64,
}

/// Geodesic curvature of the slice `{α} × S¹` and its `dθ`-density.
pub fn geodesic_curvature_form(c: &SupportCurve, alpha: f64, theta: f64) -> Result<GeodesicForm> {
    let j = c.rho_jet(theta);
    let s = sin_alpha(alpha);
    let g = j.rho * alpha.cos() + j.d1 * s;
    if on_sigma(&j, g) {
        return Err(Error::OnSigma { alpha, theta });
    }
    let density = -j.rho * s / (1.0 + (j.rho * s).powi(2)).sqrt();
    Ok(GeodesicForm { kg: density / g.abs(), kg_dtau_density: density })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularForm {
    pub ks: f64,
    pub ks_dtau_density: f64,
}

fn ks_numerator(j: &RhoJet) -> f64 {
    let (r, r1, r2) = (j.rho, j.d1, j.d2);
    r.powi(6) + r1.powi(4) - r.powi(4) * (r1 * r1 - 1.0) + 2.0 * r.powi(3) * r2 + 2.0 * r.powi(5) * r2
}

fn ks_common(j: &RhoJet) -> f64 {
    let (r, r1) = (j.rho, j.d1);
    (r * r + r.powi(4) + r1 * r1).sqrt()
}

/// `κ_s dτ/dθ` along `Σ`.
pub fn ks_dtau_density(j: &RhoJet) -> f64 {
    let (r, r1) = (j.rho, j.d1);
    -ks_numerator(j) / ((1.0 + r * r) * (r * r + r1 * r1) * ks_common(j))
}

/// The density with the opposite overall sign; kept for comparison.
pub fn printed_ks_dtau_density(j: &RhoJet) -> f64 {
    -ks_dtau_density(j)
}

/// `dτ/dθ` along `Σ`: `|ρρ″ − ρ′²|·√(1 + ρ²)/(ρ² + ρ′²)`.
pub fn sigma_speed(j: &RhoJet) -> f64 {
    let (r, r1) = (j.rho, j.d1);
    j.swallowtail_function().abs() * (1.0 + r * r).sqrt() / (r * r + r1 * r1)
}

/// Singular curvature at the point of `Σ` over `θ`.
pub fn singular_curvature_form(c: &SupportCurve, theta: f64) -> Result<SingularForm> {
    let j = c.rho_jet(theta);
    let w = j.swallowtail_function();
    if w.abs() <= ZERO_REL * (1.0 + (j.rho * j.d2).abs() + j.d1 * j.d1) || j.rho * j.rho + j.d1 * j.d1 == 0.0 {
        return Err(Error::DegenerateSigmaPoint { theta, value: w });
    }
    let r = j.rho;
    let ks = -ks_numerator(&j) / ((1.0 + r * r).powf(1.5) * w.abs() * ks_common(&j));
    Ok(SingularForm { ks, ks_dtau_density: ks_dtau_density(&j) })
}

/// The signed singular curvature with the alternative normalization
/// `sgn(ρ′² − ρρ″)·N/((ρ′² − ρρ″)(1 + ρ²)^{3/2}(ρ² + ρ′²)√(ρ² + ρ⁴ + ρ′²))`.
pub fn printed_ks(j: &RhoJet) -> f64 {
    let w = -j.swallowtail_function();
    let (r, r1) = (j.rho, j.d1);
    w.signum() * ks_numerator(j) / (w * (1.0 + r * r).powf(1.5) * (r * r + r1 * r1) * ks_common(j))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianForm {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "K_dA_density")]
    pub k_da_density: f64,
}

/// `(ρ cos α − ρ′ sin α)·sgn(ρ cos α + ρ′ sin α)/(1 + ρ² sin² α)^{3/2}`.
pub fn k_da_density(rho: f64, rho1: f64, alpha: f64) -> f64 {
    let s = sin_alpha(alpha);
    let c = alpha.cos();
    let g = rho * c + rho1 * s;
    (rho * c - rho1 * s) * g.signum() / (1.0 + (rho * s).powi(2)).powf(1.5)
}

pub fn gaussian_curvature(c: &SupportCurve, alpha: f64, theta: f64) -> Result<GaussianForm> {
    let j = c.rho_jet(theta);
    let s = sin_alpha(alpha);
    let co = alpha.cos();
    let g = j.rho * co + j.d1 * s;
    if on_sigma(&j, g) {
        return Err(Error::OnSigma { alpha, theta });
    }
    let h = j.rho * co - j.d1 * s;
    let q = 1.0 + (j.rho * s).powi(2);
    Ok(GaussianForm { k: h / (q * q * g), k_da_density: k_da_density(j.rho, j.d1, alpha) })
}

/// `θ` breakpoints: the period ends, the zeros of `ρ` and the swallowtails.
pub fn theta_breaks(c: &SupportCurve) -> Result<Vec<f64>> {
    let mut b = vec![0.0, c.closure_period()];
    b.extend(rho_zeros(c));
    b.extend(swallowtail_thetas(c)?);
    b.sort_by(f64::total_cmp);
    b.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    Ok(b)
}

fn prepare(c: &SupportCurve) -> Result<Vec<f64>> {
    ensure_nondegenerate(c)?;
    ensure_transversal(c)?;
    theta_breaks(c)
}

/// `∫_M K dA`: for each `θ` the `α`-integral is split at `α_Σ(θ)`, and the
/// `θ`-integral has panel boundaries at the zeros of `ρ` and at swallowtails.
/// Panels run in parallel and are summed in `θ` order.
pub fn integrate_k_da(c: &SupportCurve, tol: f64) -> Result<QuadratureEstimate> {
    let breaks = prepare(c)?;
    Ok(integrate_k_da_with_breaks(c, &breaks, tol).0)
}

fn integrate_k_da_with_breaks(c: &SupportCurve, breaks: &[f64], tol: f64) -> (QuadratureEstimate, usize) {
    let panels: Vec<(QuadratureEstimate, usize)> = breaks
        .par_windows(2)
        .map(|w| {
            let mut inner_err: f64 = 0.0;
            let mut inner_evals = 0;
            let mut strips = 0;
            let outer = integrate(
                |theta| {
                    let j = c.rho_jet(theta);
                    let f = |a: f64| k_da_density(j.rho, j.d1, a);
                    let q = if j.rho == 0.0 {
                        integrate(f, 0.0, PI, tol)
                    } else {
                        integrate_with_breaks(f, &[0.0, alpha_sigma(j.rho, j.d1), PI], tol)
                    };
                    inner_err = inner_err.max(q.abs_error_estimate);
                    inner_evals += q.n_evaluations;
                    strips = strips.max(if j.rho == 0.0 { 1 } else { 2 });
                    q.value
                },
                w[0],
                w[1],
                tol,
            );
            let est = QuadratureEstimate {
                value: outer.value,
                abs_error_estimate: outer.abs_error_estimate + (w[1] - w[0]) * inner_err,
                n_evaluations: inner_evals,
                subdivisions: outer.subdivisions,
            };
            (est, strips)
        })
        .collect();
    let strips = panels.iter().map(|p| p.1).sum();
    (QuadratureEstimate::sum(panels.iter().map(|p| &p.0)), strips)
}

/// `∫_Σ κ_s dτ` as a `θ`-integral over the closure period.
pub fn integrate_ks_dtau(c: &SupportCurve, tol: f64) -> Result<QuadratureEstimate> {
    let breaks = prepare(c)?;
    Ok(integrate_with_breaks(|t| ks_dtau_density(&c.rho_jet(t)), &breaks, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryNullReport {
    pub theta: f64,
    pub alpha: f64,
    pub alpha_plus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryTerms {
    /// Total geodesic curvature of `{0} × S¹`.
    pub alpha_zero: f64,
    /// Total geodesic curvature of `{π} × S¹`.
    pub alpha_pi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    #[serde(rename = "curve")]
    pub curve_id: String,
    /// `∫_M K dA`.
    pub lhs: QuadratureEstimate,
    /// `−2∫_Σ κ_s dτ`.
    pub rhs: QuadratureEstimate,
    pub residual: f64,
    pub relative_residual: f64,
    pub strip_count: usize,
    pub theta_period: f64,
    pub boundary_terms: BoundaryTerms,
    pub boundary_null_points: Vec<BoundaryNullReport>,
    pub swallowtails: Vec<f64>,
}

/// Evaluate both sides of the identity independently.
pub fn gauss_bonnet_check(c: &SupportCurve, tol: f64, curve_id: &str) -> Result<GaussBonnetReport> {
    let breaks = prepare(c)?;
    let (lhs, strip_count) = integrate_k_da_with_breaks(c, &breaks, tol);
    let rhs = integrate_with_breaks(|t| ks_dtau_density(&c.rho_jet(t)), &breaks, tol).scaled(-2.0);
    let t = c.closure_period();
    let boundary = |alpha: f64| {
        integrate(|th| -c.rho().eval(th) * sin_alpha(alpha) / (1.0 + (c.rho().eval(th) * sin_alpha(alpha)).powi(2)).sqrt(), 0.0, t, tol)
            .value
    };
    let residual = (lhs.value - rhs.value).abs();
    let scale = 1f64.max(lhs.value.abs()).max(rhs.value.abs());
    let boundary_null_points = rho_zeros(c)
        .into_iter()
        .flat_map(|theta| [0.0, PI].map(|alpha| BoundaryNullReport { theta, alpha, alpha_plus: FRAC_PI_2 }))
        .collect();
    Ok(GaussBonnetReport {
        curve_id: curve_id.to_string(),
        lhs,
        rhs,
        residual,
        relative_residual: residual / scale,
        strip_count,
        theta_period: t,
        boundary_terms: BoundaryTerms { alpha_zero: boundary(0.0), alpha_pi: boundary(PI) },
        boundary_null_points,
        swallowtails: swallowtail_thetas(c)?,
    })
}
