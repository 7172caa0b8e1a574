//! Real trigonometric polynomials with exact coefficient-space calculus.
//!
//! A [`TrigPoly`] is `a0 + Σ aₙ cos(ωₙθ) + bₙ sin(ωₙθ)` with `ωₙ = n·2π/T`,
//! where the period `T` is either `2π` (integer harmonics) or `4π`
//! (half-integer harmonics, used for anti-periodic support functions).

use std::f64::consts::PI;

/// Closure period of a trigonometric polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Period {
    TwoPi,
    FourPi,
}

impl Period {
    pub fn length(self) -> f64 {
        match self {
            Period::TwoPi => 2.0 * PI,
            Period::FourPi => 4.0 * PI,
        }
    }

    /// Angular frequency of harmonic 1.
    pub fn fundamental(self) -> f64 {
        match self {
            Period::TwoPi => 1.0,
            Period::FourPi => 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    constant: f64,
    // index i holds harmonic i + 1
    cos: Vec<f64>,
    sin: Vec<f64>,
    period: Period,
}

impl TrigPoly {
    pub fn new(constant: f64, cos: &[(u32, f64)], sin: &[(u32, f64)], period: Period) -> Self {
        let degree = cos.iter().chain(sin).map(|&(n, _)| n as usize).max().unwrap_or(0);
        let mut cv = vec![0.0; degree];
        let mut sv = vec![0.0; degree];
        for &(n, a) in cos {
            assert!(n > 0, "harmonic numbers start at 1");
            cv[n as usize - 1] += a;
        }
        for &(n, b) in sin {
            assert!(n > 0, "harmonic numbers start at 1");
            sv[n as usize - 1] += b;
        }
        let mut p = TrigPoly { constant, cos: cv, sin: sv, period };
        p.trim();
        p
    }

    pub fn constant_fn(c: f64, period: Period) -> Self {
        TrigPoly { constant: c, cos: Vec::new(), sin: Vec::new(), period }
    }

    /// Build from dense coefficient vectors; index `i` is harmonic `i + 1`.
    pub fn from_dense(constant: f64, mut cos: Vec<f64>, mut sin: Vec<f64>, period: Period) -> Self {
        let n = cos.len().max(sin.len());
        cos.resize(n, 0.0);
        sin.resize(n, 0.0);
        let mut p = TrigPoly { constant, cos, sin, period };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!((self.cos.last(), self.sin.last()), (Some(a), Some(b)) if *a == 0.0 && *b == 0.0) {
            self.cos.pop();
            self.sin.pop();
        }
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn cos_coeff(&self, n: u32) -> f64 {
        if n == 0 {
            return self.constant;
        }
        self.cos.get(n as usize - 1).copied().unwrap_or(0.0)
    }

    pub fn sin_coeff(&self, n: u32) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.sin.get(n as usize - 1).copied().unwrap_or(0.0)
    }

    /// `(n, ωₙ, aₙ, bₙ)` for every stored harmonic `n ≥ 1`.
    pub fn harmonics(&self) -> impl Iterator<Item = (u32, f64, f64, f64)> + '_ {
        let w0 = self.period.fundamental();
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(move |(i, (&a, &b))| ((i + 1) as u32, w0 * (i + 1) as f64, a, b))
    }

    pub fn frequency(&self, n: u32) -> f64 {
        self.period.fundamental() * n as f64
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_derivs(theta, 0)[0]
    }

    /// Values `p(θ), p′(θ), …, p⁽ᵒʳᵈᵉʳ⁾(θ)`, each harmonic's cosine and sine
    /// evaluated once.
    pub fn eval_derivs(&self, theta: f64, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order + 1];
        out[0] = self.constant;
        for (_, w, a, b) in self.harmonics() {
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let (s, c) = (w * theta).sin_cos();
            let mut wd = 1.0;
            for (d, slot) in out.iter_mut().enumerate() {
                // d/dθ^d of cos(wθ), sin(wθ) cycle with period 4
                let (cd, sd) = match d % 4 {
                    0 => (c, s),
                    1 => (-s, c),
                    2 => (-c, -s),
                    _ => (s, -c),
                };
                *slot += wd * (a * cd + b * sd);
                wd *= w;
            }
        }
        out
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut cos = Vec::with_capacity(self.cos.len());
        let mut sin = Vec::with_capacity(self.sin.len());
        for (_, w, a, b) in self.harmonics() {
            cos.push(w * b);
            sin.push(-w * a);
        }
        TrigPoly::from_dense(0.0, cos, sin, self.period)
    }

    pub fn nth_derivative(&self, k: usize) -> TrigPoly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// `θ ↦ p(θ − φ)`.
    pub fn shifted(&self, phi: f64) -> TrigPoly {
        let mut cos = Vec::with_capacity(self.cos.len());
        let mut sin = Vec::with_capacity(self.sin.len());
        for (_, w, a, b) in self.harmonics() {
            let (s, c) = (w * phi).sin_cos();
            // a cos(w(θ−φ)) + b sin(w(θ−φ))
            cos.push(a * c - b * s);
            sin.push(a * s + b * c);
        }
        TrigPoly::from_dense(self.constant, cos, sin, self.period)
    }

    pub fn scaled(&self, k: f64) -> TrigPoly {
        TrigPoly {
            constant: self.constant * k,
            cos: self.cos.iter().map(|a| a * k).collect(),
            sin: self.sin.iter().map(|b| b * k).collect(),
            period: self.period,
        }
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        assert_eq!(self.period, other.period, "period mismatch");
        let n = self.degree().max(other.degree());
        let get = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or(0.0);
        let cos = (0..n).map(|i| get(&self.cos, i) + get(&other.cos, i)).collect();
        let sin = (0..n).map(|i| get(&self.sin, i) + get(&other.sin, i)).collect();
        TrigPoly::from_dense(self.constant + other.constant, cos, sin, self.period)
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.scaled(-1.0))
    }

    /// Product, expanded with the product-to-sum identities.
    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        assert_eq!(self.period, other.period, "period mismatch");
        let n = self.degree() + other.degree();
        let mut cos = vec![0.0; n + 1]; // index = harmonic, slot 0 is the constant
        let mut sin = vec![0.0; n + 1];
        let terms = |p: &TrigPoly| {
            let mut t = vec![(0usize, p.constant, 0.0)];
            t.extend(p.harmonics().map(|(k, _, a, b)| (k as usize, a, b)));
            t
        };
        let lhs = terms(self);
        let rhs = terms(other);
        for &(m, a1, b1) in &lhs {
            for &(k, a2, b2) in &rhs {
                let (hi, lo) = (m + k, m.abs_diff(k));
                // cos·cos
                cos[hi] += 0.5 * a1 * a2;
                cos[lo] += 0.5 * a1 * a2;
                // sin·sin
                cos[lo] += 0.5 * b1 * b2;
                cos[hi] -= 0.5 * b1 * b2;
                // sin(m)·cos(k) = ½[sin(m+k) + sin(m−k)]
                let sgn_mk = (m as i64 - k as i64).signum() as f64;
                sin[hi] += 0.5 * b1 * a2;
                sin[lo] += 0.5 * b1 * a2 * sgn_mk;
                // cos(m)·sin(k) = ½[sin(m+k) − sin(m−k)]
                sin[hi] += 0.5 * a1 * b2;
                sin[lo] -= 0.5 * a1 * b2 * sgn_mk;
            }
        }
        let constant = cos[0];
        TrigPoly::from_dense(constant, cos[1..].to_vec(), sin[1..].to_vec(), self.period)
    }

    /// Exact `∫₀ᵀ p dθ`.
    pub fn integral_over_period(&self) -> f64 {
        self.constant * self.period.length()
    }

    /// Exact `½∫₀ᵀ (p² − p′²) dθ` by Parseval.
    pub fn half_energy_difference(&self) -> f64 {
        let t = self.period.length();
        let mut acc = 0.5 * t * self.constant * self.constant;
        for (_, w, a, b) in self.harmonics() {
            acc += 0.25 * t * (1.0 - w * w) * (a * a + b * b);
        }
        acc
    }

    /// Largest coefficient magnitude, constant included.
    pub fn max_abs_coeff(&self) -> f64 {
        self.cos.iter().chain(&self.sin).fold(self.constant.abs(), |m, v| m.max(v.abs()))
    }

    /// Sum of coefficient magnitudes; bounds `sup |p|`.
    pub fn l1_norm(&self) -> f64 {
        self.cos.iter().chain(&self.sin).fold(self.constant.abs(), |m, v| m + v.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oval() -> TrigPoly {
        TrigPoly::new(40.0, &[(3, 3.0)], &[(2, -1.0)], Period::TwoPi)
    }

    #[test]
    fn derivs_of_oval_at_zero() {
        let d = oval().eval_derivs(0.0, 2);
        assert_eq!(d, vec![43.0, -2.0, -27.0]);
    }

    #[test]
    fn derivative_matches_eval_derivs() {
        let p = oval();
        let theta = 0.731;
        let d = p.eval_derivs(theta, 5);
        for (k, expect) in d.iter().enumerate() {
            let v = p.nth_derivative(k).eval(theta);
            assert!((v - expect).abs() < 1e-9 * (1.0 + expect.abs()), "order {k}");
        }
    }

    #[test]
    fn shift_is_translation() {
        let p = oval();
        let q = p.shifted(0.4);
        for &t in &[0.0, 1.0, 2.5, -3.0] {
            assert!((q.eval(t) - p.eval(t - 0.4)).abs() < 1e-12);
        }
    }

    #[test]
    fn product_matches_pointwise() {
        let p = oval();
        let q = TrigPoly::new(-1.5, &[(1, 0.5), (4, 2.0)], &[(3, 1.25)], Period::TwoPi);
        let r = p.mul(&q);
        for &t in &[0.0, 0.3, 1.7, 4.0] {
            assert!((r.eval(t) - p.eval(t) * q.eval(t)).abs() < 1e-10);
        }
    }

    #[test]
    fn half_period_is_periodic_over_four_pi() {
        let p = TrigPoly::new(0.0, &[], &[(5, 1.0)], Period::FourPi);
        assert!((p.eval(1.0) - (2.5f64).sin()).abs() < 1e-15);
        assert!((p.eval(1.0) - p.eval(1.0 + 4.0 * PI)).abs() < 1e-12);
        assert!((p.eval(1.0) + p.eval(1.0 + 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn parseval_area_of_oval() {
        assert!((oval().half_energy_difference() - 1562.5 * PI).abs() < 1e-9);
    }
}
