//! Reference computations written without the library: support functions are
//! evaluated from their raw coefficients, the front is differentiated with
//! fourth-order finite differences and the fundamental forms are assembled by
//! hand.

use serde_json::Value;

/// `p(θ) = c + Σ aᵢ cos ωᵢθ + bᵢ sin ωᵢθ`.
#[derive(Debug, Clone)]
pub struct Support {
    pub constant: f64,
    pub cos: Vec<(f64, f64)>,
    pub sin: Vec<(f64, f64)>,
}

impl Support {
    pub fn from_json(text: &str) -> Support {
        let v: Value = serde_json::from_str(text).unwrap();
        let half = v.get("half_harmonics").and_then(Value::as_bool).unwrap_or(false);
        let table = |key: &str| -> Vec<(f64, f64)> {
            v.get(key)
                .and_then(Value::as_object)
                .map(|m| {
                    m.iter()
                        .map(|(k, c)| {
                            let n: f64 = k.parse().unwrap();
                            (if half { n / 2.0 } else { n }, c.as_f64().unwrap())
                        })
                        .collect()
                })
                .unwrap_or_default()
        };
        Support { constant: v.get("constant").and_then(Value::as_f64).unwrap_or(0.0), cos: table("cos"), sin: table("sin") }
    }

    /// k-th derivative of `p`.
    pub fn p(&self, t: f64, k: u32) -> f64 {
        let mut s = if k == 0 { self.constant } else { 0.0 };
        for &(w, a) in &self.cos {
            s += a * w.powi(k as i32) * (w * t + k as f64 * std::f64::consts::FRAC_PI_2).cos();
        }
        for &(w, b) in &self.sin {
            s += b * w.powi(k as i32) * (w * t + k as f64 * std::f64::consts::FRAC_PI_2).sin();
        }
        s
    }

    /// k-th derivative of `ρ = p + p″`.
    pub fn rho(&self, t: f64, k: u32) -> f64 {
        self.p(t, k) + self.p(t, k + 2)
    }

    /// Envelope of the support lines `x cos θ + y sin θ = p(θ)`.
    pub fn point(&self, t: f64) -> [f64; 2] {
        let (s, c) = t.sin_cos();
        [self.p(t, 0) * c - self.p(t, 1) * s, self.p(t, 0) * s + self.p(t, 1) * c]
    }

    /// The front `(α, f(θ) + ρ(θ) sin α · (−sin(θ+α), cos(θ+α)))`.
    pub fn front(&self, alpha: f64, t: f64) -> [f64; 3] {
        let f = self.point(t);
        let r = self.rho(t, 0) * alpha.sin();
        let (s, c) = (t + alpha).sin_cos();
        [alpha, f[0] - r * s, f[1] + r * c]
    }

    /// `ρ cos α + ρ′ sin α`.
    pub fn g(&self, alpha: f64, t: f64) -> f64 {
        self.rho(t, 0) * alpha.cos() + self.rho(t, 1) * alpha.sin()
    }
}

pub type V3 = [f64; 3];

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: V3, k: f64) -> V3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn det(a: V3, b: V3, c: V3) -> f64 {
    dot(a, cross(b, c))
}

/// `(−f(x+2h) + 8f(x+h) − 8f(x−h) + f(x−2h))/12h`.
pub fn d1<F: Fn(f64) -> V3>(f: F, x: f64, h: f64) -> V3 {
    let t = add(sub(scale(f(x + h), 8.0), scale(f(x - h), 8.0)), sub(f(x - 2.0 * h), f(x + 2.0 * h)));
    scale(t, 1.0 / (12.0 * h))
}

/// `(−f(x+2h) + 16f(x+h) − 30f(x) + 16f(x−h) − f(x−2h))/12h²`.
pub fn d2<F: Fn(f64) -> V3>(f: F, x: f64, h: f64) -> V3 {
    let inner = add(scale(add(f(x + h), f(x - h)), 16.0), scale(f(x), -30.0));
    let t = sub(inner, add(f(x + 2.0 * h), f(x - 2.0 * h)));
    scale(t, 1.0 / (12.0 * h * h))
}

const H: f64 = 1e-3;

pub struct FundamentalForms {
    pub fa: V3,
    pub ft: V3,
    pub faa: V3,
    pub fat: V3,
    pub ftt: V3,
}

pub fn forms(s: &Support, alpha: f64, t: f64) -> FundamentalForms {
    FundamentalForms {
        fa: d1(|a| s.front(a, t), alpha, H),
        ft: d1(|x| s.front(alpha, x), t, H),
        faa: d2(|a| s.front(a, t), alpha, H),
        fat: d1(|a| d1(|x| s.front(a, x), t, H), alpha, H),
        ftt: d2(|x| s.front(alpha, x), t, H),
    }
}

/// `K·√(EG − F²)`, from the first and second fundamental forms.
pub fn k_da_density(s: &Support, alpha: f64, t: f64) -> f64 {
    let f = forms(s, alpha, t);
    let c = cross(f.fa, f.ft);
    let area = norm(c);
    let nu = scale(c, 1.0 / area);
    let (e, ff, g) = (dot(f.fa, f.fa), dot(f.fa, f.ft), dot(f.ft, f.ft));
    let (l, m, n) = (dot(f.faa, nu), dot(f.fat, nu), dot(f.ftt, nu));
    (l * n - m * m) / (e * g - ff * ff) * area
}

/// Unit normal that extends smoothly across the singular set: the normalized
/// cross product oriented by the side of `Σ`.
pub fn unit_normal(s: &Support, alpha: f64, t: f64) -> V3 {
    let f = forms(s, alpha, t);
    let c = cross(f.fa, f.ft);
    scale(c, s.g(alpha, t).signum() / norm(c))
}

/// `det(c′, c″, ν)/|c′|²` along the slice `θ ↦ F(α, θ)`.
pub fn kg_dtau_density(s: &Support, alpha: f64, t: f64) -> f64 {
    let f = forms(s, alpha, t);
    let nu = unit_normal(s, alpha, t);
    det(f.ft, f.ftt, nu) / dot(f.ft, f.ft)
}

/// Zero of `ρ cos α + ρ′ sin α` in `(0, π)` by bisection.
pub fn alpha_sigma(s: &Support, t: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
    let glo = s.g(lo, t);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if s.g(mid, t).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Singular curvature density `κ_s |γ̂′|` along `γ̂(θ) = F(α_Σ(θ), θ)`:
/// `sgn(dλ(η))·det(γ̂′, γ̂″, ν)/|γ̂′|²` with the null direction `η = ±∂θ`
/// chosen so that `(γ̂′, η)` is positively oriented in the `(α, θ)` plane.
///
/// The derivatives of `γ̂` come from the chain rule with `α_Σ′`, `α_Σ″` by
/// implicit differentiation of `g = 0`. Since `F_θ` vanishes on `Σ`,
/// `ν·F_θθ = 0` there and `ν ∝ F_α × F_θθ`; with that choice
/// `dλ(∂θ) = det(F_α, F_θθ, ν) > 0`. `None` within a small neighbourhood
/// of swallowtails: there `α_Σ′ → 0` and divides the difference error.
pub fn ks_dtau_density(s: &Support, t: f64) -> Option<f64> {
    let a = alpha_sigma(s, t);
    let [r, r1, r2, r3] = [0, 1, 2, 3].map(|k| s.rho(t, k));
    let (sa, ca) = a.sin_cos();
    let g_a = -r * sa + r1 * ca;
    let g_t = r1 * ca + r2 * sa;
    let g_aa = -r * ca - r1 * sa;
    let g_at = -r1 * sa + r2 * ca;
    let g_tt = r2 * ca + r3 * sa;
    let da = -g_t / g_a;
    if da.abs() < 2e-3 || !da.is_finite() {
        return None;
    }
    let dda = -(g_aa * da * da + 2.0 * g_at * da + g_tt) / g_a;
    let f = forms(s, a, t);
    let c1 = add(scale(f.fa, da), f.ft);
    let c2 = add(add(scale(f.faa, da * da), scale(f.fat, 2.0 * da)), add(f.ftt, scale(f.fa, dda)));
    let n = cross(f.fa, f.ftt);
    let nu = scale(n, 1.0 / norm(n));
    Some(da.signum() * det(c1, c2, nu) / dot(c1, c1))
}

/// `∫ (ρ cos α − ρ′ sin α)/(1 + ρ² sin² α)^{3/2} dα` in closed form.
pub fn phi(rho: f64, rho1: f64, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    (rho * s + rho1 * c / (1.0 + rho * rho)) / (1.0 + (rho * s).powi(2)).sqrt()
}

/// `∫₀^π K dA` over the slice at `θ`, split where `g` changes sign.
pub fn inner_k_da(s: &Support, t: f64) -> f64 {
    let (r, r1) = (s.rho(t, 0), s.rho(t, 1));
    let pi = std::f64::consts::PI;
    if r == 0.0 {
        return (phi(r, r1, pi) - phi(r, r1, 0.0)) * r1.signum();
    }
    let a = alpha_sigma(s, t);
    let lower = s.g(0.5 * a, t).signum();
    let upper = s.g(0.5 * (a + pi), t).signum();
    lower * (phi(r, r1, a) - phi(r, r1, 0.0)) + upper * (phi(r, r1, pi) - phi(r, r1, a))
}

/// Area enclosed by a closed polyline, counted with winding number on an
/// `n × n` grid of cell centres.
pub fn winding_area(poly: &[[f64; 2]], n: usize) -> f64 {
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for p in poly {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let (w, h) = ((hi[0] - lo[0]) / n as f64, (hi[1] - lo[1]) / n as f64);
    let mut total = 0i64;
    for i in 0..n {
        let y = lo[1] + (i as f64 + 0.5) * h;
        for j in 0..n {
            let x = lo[0] + (j as f64 + 0.5) * w;
            total += winding(poly, [x, y]);
        }
    }
    total as f64 * w * h
}

fn winding(poly: &[[f64; 2]], q: [f64; 2]) -> i64 {
    let mut wn = 0;
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        let side = (b[0] - a[0]) * (q[1] - a[1]) - (q[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= q[1] && b[1] > q[1] && side > 0.0 {
            wn += 1;
        } else if a[1] > q[1] && b[1] <= q[1] && side < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Composite Gauss–Legendre (5 points) over `[a, b]` with `panels` panels.
pub fn gauss5<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let x = [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
    let w = [0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1, 0.236_926_885_056_189_1];
    let hw = (b - a) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * hw;
        for k in 0..5 {
            sum += w[k] * f(mid + 0.5 * hw * x[k]);
        }
    }
    sum * 0.5 * hw
}

impl Support {
    /// Point and velocity of the `α`-evolutoid `f + ρ sin α · 𝕥(θ + α)`.
    pub fn evolutoid(&self, alpha: f64, t: f64) -> ([f64; 2], [f64; 2]) {
        let f = self.point(t);
        let (r, r1) = (self.rho(t, 0), self.rho(t, 1));
        let s = alpha.sin();
        let (st, ct) = t.sin_cos();
        let (sa, ca) = (t + alpha).sin_cos();
        let tan = [-sa, ca];
        let nor = [-ca, -sa];
        let p = [f[0] + r * s * tan[0], f[1] + r * s * tan[1]];
        let v = [
            -r * st + s * (r1 * tan[0] + r * nor[0]),
            r * ct + s * (r1 * tan[1] + r * nor[1]),
        ];
        (p, v)
    }

    /// `½∮ det(γ, γ′) dθ` by the trapezoid rule, exact for trigonometric
    /// polynomials once `n` exceeds twice the degree.
    pub fn evolutoid_area(&self, alpha: f64, period: f64, n: usize) -> f64 {
        let h = period / n as f64;
        (0..n)
            .map(|i| {
                let (p, v) = self.evolutoid(alpha, i as f64 * h);
                p[0] * v[1] - p[1] * v[0]
            })
            .sum::<f64>()
            * 0.5
            * h
    }
}
