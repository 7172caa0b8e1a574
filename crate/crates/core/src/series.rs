//! Truncated Taylor series in one variable.
//!
//! Used to push exact derivatives of a parametric curve through the
//! arc-length chain rule: every operation keeps only the coefficients that
//! are fully determined by its inputs.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series(Vec<f64>);

impl Series {
    /// From derivative values `f(t), f′(t), …`; coefficient `k` is `f⁽ᵏ⁾/k!`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        let mut fact = 1.0;
        let coeffs = derivs
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if k > 0 {
                    fact *= k as f64;
                }
                d / fact
            })
            .collect();
        Series(coeffs)
    }

    pub fn constant(c: f64, len: usize) -> Self {
        let mut v = vec![0.0; len.max(1)];
        v[0] = c;
        Series(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative_value(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    pub fn deriv(&self) -> Series {
        assert!(self.0.len() > 1, "series exhausted");
        Series(self.0.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect())
    }

    pub fn scale(&self, k: f64) -> Series {
        Series(self.0.iter().map(|c| c * k).collect())
    }

    pub fn recip(&self) -> Series {
        let n = self.0.len();
        let b0 = self.0[0];
        let mut q = vec![0.0; n];
        q[0] = 1.0 / b0;
        for k in 1..n {
            let s: f64 = (1..=k).map(|i| self.0[i] * q[k - i]).sum();
            q[k] = -s / b0;
        }
        Series(q)
    }

    pub fn div(&self, rhs: &Series) -> Series {
        let n = self.0.len().min(rhs.0.len());
        let b0 = rhs.0[0];
        let mut q = vec![0.0; n];
        for k in 0..n {
            let s: f64 = (1..=k).map(|i| rhs.0[i] * q[k - i]).sum();
            q[k] = (self.0[k] - s) / b0;
        }
        Series(q)
    }

    pub fn sqrt(&self) -> Series {
        let n = self.0.len();
        let mut s = vec![0.0; n];
        s[0] = self.0[0].sqrt();
        for k in 1..n {
            let acc: f64 = (1..k).map(|i| s[i] * s[k - i]).sum();
            s[k] = (self.0[k] - acc) / (2.0 * s[0]);
        }
        Series(s)
    }

    pub fn powi(&self, e: u32) -> Series {
        let mut out = Series::constant(1.0, self.0.len());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.0.len().min(rhs.0.len());
        Series((0..n).map(|i| self.0[i] + rhs.0[i]).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.0.len().min(rhs.0.len());
        Series((0..n).map(|i| self.0[i] - rhs.0[i]).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.0.len().min(rhs.0.len());
        Series((0..n).map(|k| (0..=k).map(|i| self.0[i] * rhs.0[k - i]).sum()).collect())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}
