//! Globally adaptive 15-point Gauss–Legendre quadrature.
//!
//! Every panel is integrated once whole and once as two halves; the halves
//! value is kept and `|whole − halves|` is its error estimate. The panel with
//! the largest estimate is bisected until the summed estimate drops below the
//! requested absolute tolerance. Caller-supplied breakpoints become initial
//! panel boundaries, so kinks of the integrand never sit inside a panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use serde::Serialize;

/// Default cap on the number of panel bisections per integral.
pub const MAX_SUBDIVISIONS: usize = 4000;

const GL_POINTS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    #[serde(rename = "err")]
    pub abs_error_estimate: f64,
    #[serde(rename = "evals")]
    pub n_evaluations: usize,
    pub subdivisions: usize,
}

impl QuadratureEstimate {
    pub fn zero() -> Self {
        QuadratureEstimate { value: 0.0, abs_error_estimate: 0.0, n_evaluations: 0, subdivisions: 0 }
    }

    /// Combine independent pieces in the given order (compensated sum).
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a QuadratureEstimate>) -> Self {
        let mut value = KahanSum::default();
        let mut err = KahanSum::default();
        let mut evals = 0;
        let mut subs = 0;
        for p in parts {
            value.add(p.value);
            err.add(p.abs_error_estimate);
            evals += p.n_evaluations;
            subs += p.subdivisions;
        }
        QuadratureEstimate { value: value.total(), abs_error_estimate: err.total(), n_evaluations: evals, subdivisions: subs }
    }

    pub fn scaled(self, k: f64) -> Self {
        QuadratureEstimate { value: self.value * k, abs_error_estimate: self.abs_error_estimate * k.abs(), ..self }
    }
}

/// Neumaier-compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Nodes and weights of the 15-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_15() -> &'static [(f64, f64); GL_POINTS] {
    static RULE: OnceLock<[(f64, f64); GL_POINTS]> = OnceLock::new();
    RULE.get_or_init(legendre_rule::<GL_POINTS>)
}

fn legendre_rule<const N: usize>() -> [(f64, f64); N] {
    let mut out = [(0.0, 0.0); N];
    let n = N as f64;
    for (i, slot) in out.iter_mut().enumerate() {
        // Tricomi initial guess, then Newton on P_N
        let k = (i + 1) as f64;
        let mut x = ((4.0 * k - 1.0) / (4.0 * n + 2.0) * std::f64::consts::PI).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(N, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(N, x);
        if d != 0.0 {
            dp = d;
        }
        *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gl15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = KahanSum::default();
    for &(x, w) in gauss_legendre_15() {
        acc.add(w * f(c + h * x));
    }
    acc.total() * h
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    err: f64,
}

impl Panel {
    fn new<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, whole: f64) -> Panel {
        let m = 0.5 * (a + b);
        let left = gl15(f, a, m);
        let right = gl15(f, m, b);
        Panel { a, b, left, right, err: (whole - (left + right)).abs() }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Adaptive integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> QuadratureEstimate {
    integrate_with_breaks(f, &[a, b], tol)
}

/// Adaptive integral over `[breaks[0], breaks[last]]` with initial panels at
/// the (sorted) breakpoints. Degenerate panels are skipped.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], tol: f64) -> QuadratureEstimate {
    assert!(breaks.len() >= 2, "need at least one panel");
    let mut evals = 0usize;
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let whole = gl15(&mut f, a, b);
        heap.push(Panel::new(&mut f, a, b, whole));
        evals += 3 * GL_POINTS;
    }
    let mut subdivisions = 0;
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
    let mut total_val: f64 = heap.iter().map(|p| p.left + p.right).sum();
    while total_err > tol.max(4.0 * f64::EPSILON * total_val.abs()) && subdivisions < MAX_SUBDIVISIONS {
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let l = Panel::new(&mut f, p.a, m, p.left);
        let r = Panel::new(&mut f, m, p.b, p.right);
        evals += 4 * GL_POINTS;
        total_err += l.err + r.err - p.err;
        total_val += (l.left + l.right + r.left + r.right) - (p.left + p.right);
        heap.push(l);
        heap.push(r);
        subdivisions += 1;
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = KahanSum::default();
    let mut err = KahanSum::default();
    for p in &panels {
        value.add(p.left);
        value.add(p.right);
        err.add(p.err);
    }
    QuadratureEstimate { value: value.total(), abs_error_estimate: err.total(), n_evaluations: evals, subdivisions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_degree_29_exactly() {
        let r = gauss_legendre_15();
        let w: f64 = r.iter().map(|p| p.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        let m28: f64 = r.iter().map(|(x, w)| w * x.powi(28)).sum();
        assert!((m28 - 2.0 / 29.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integral() {
        let q = integrate(|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((q.value - 2.0).abs() < 1e-13);
        assert!(q.abs_error_estimate <= 1e-12);
    }

    #[test]
    fn kink_with_breakpoint_converges_fast() {
        let f = |x: f64| (x - 0.3).abs();
        let with = integrate_with_breaks(f, &[0.0, 0.3, 1.0], 1e-12);
        assert_eq!(with.subdivisions, 0);
        assert!((with.value - (0.045 + 0.245)).abs() < 1e-14);
        let without = integrate(f, 0.0, 1.0, 1e-10);
        assert!((without.value - 0.29).abs() < 1e-9);
        assert!(without.subdivisions > 0);
    }

    #[test]
    fn error_estimate_is_honest() {
        let f = |x: f64| 1.0 / (1.0 + 25.0 * x * x);
        let exact = 2.0 * (5.0f64).atan() / 5.0;
        for tol in [1e-4, 1e-6, 1e-8, 1e-10] {
            let q = integrate(f, -1.0, 1.0, tol);
            assert!((q.value - exact).abs() <= q.abs_error_estimate.max(1e-15));
        }
    }
}
