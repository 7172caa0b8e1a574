//! Scan–bracket–bisect–Newton root finding on an interval.
//!
//! The interval is sampled uniformly, sign changes are bracketed, each
//! bracket is bisected to [`BISECTION_TOL`] and finished with one Newton
//! step when a derivative is supplied and the step stays in the bracket.

/// Bracket width at which bisection stops.
pub const BISECTION_TOL: f64 = 1e-10;

/// Scan density for `2π` of parameter.
pub const SAMPLES_PER_TWO_PI: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Whether the function changes sign across the root.
    pub crosses: bool,
}

/// Number of scan samples for an interval of the given length.
pub fn scan_samples(len: f64) -> usize {
    ((len / std::f64::consts::TAU) * SAMPLES_PER_TWO_PI as f64).ceil().max(64.0) as usize
}

/// Sign-changing zeros of `f` on `[a, b]`.
///
/// With `periodic`, `b` is identified with `a` and a root there is reported
/// once, at `a`. Samples that evaluate to exactly zero are reported as roots
/// and `crosses` records whether the neighbours have opposite signs.
pub fn find_roots<F, D>(f: F, df: Option<D>, a: f64, b: f64, samples: usize, periodic: bool) -> Vec<Root>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let n = samples.max(2);
    let h = (b - a) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + h * i as f64 }).collect();
    let mut fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    if periodic {
        fs[n] = fs[0];
    }
    let mut roots = Vec::new();
    let last = if periodic { n } else { n + 1 };
    for i in 0..last {
        if fs[i] == 0.0 {
            if periodic && i == n {
                continue;
            }
            let prev = if i > 0 {
                Some(fs[i - 1])
            } else if periodic {
                Some(fs[n - 1])
            } else {
                None
            };
            let next = if i < n { Some(fs[i + 1]) } else { None };
            let crosses = match (prev, next) {
                (Some(p), Some(q)) => p * q < 0.0,
                _ => true,
            };
            roots.push(Root { x: xs[i], crosses });
        }
    }
    for i in 0..n {
        let (fa, fb) = (fs[i], fs[i + 1]);
        if fa == 0.0 || fb == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        let x = refine(&f, df.as_ref(), xs[i], xs[i + 1], fa);
        roots.push(Root { x, crosses: true });
    }
    roots.sort_by(|p, q| p.x.total_cmp(&q.x));
    roots
}

fn refine<F, D>(f: &F, df: Option<&D>, mut lo: f64, mut hi: f64, mut flo: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if let Some(df) = df {
        let d = df(mid);
        if d != 0.0 && d.is_finite() {
            let x = mid - f(mid) / d;
            if x >= lo && x <= hi {
                return x;
            }
        }
    }
    // regula falsi on the final bracket
    let (fl, fh) = (f(lo), f(hi));
    if fl != fh {
        let x = lo - fl * (hi - lo) / (fh - fl);
        if x >= lo && x <= hi {
            return x;
        }
    }
    mid
}

/// Zeros of `f` where `f` touches zero without changing sign: zeros of
/// `df` at which `|f| ≤ zero_tol` and `f` keeps its sign.
pub fn find_touching_zeros<F, D>(f: F, df: D, a: f64, b: f64, samples: usize, periodic: bool, zero_tol: f64) -> Vec<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let none: Option<fn(f64) -> f64> = None;
    let crit = find_roots(&df, none, a, b, samples, periodic);
    let h = (b - a) / samples.max(2) as f64;
    crit.into_iter()
        .filter(|r| f(r.x).abs() <= zero_tol)
        .filter(|r| {
            let (l, rr) = (f(r.x - h), f(r.x + h));
            l.signum() == rr.signum()
        })
        .map(|r| r.x)
        .collect()
}

/// `sup |f|` over a uniform scan, the scale for the relative zero test.
pub fn scan_scale<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, samples: usize) -> f64 {
    let h = (b - a) / samples as f64;
    (0..=samples).map(|i| f(a + h * i as f64).abs()).fold(0.0, f64::max)
}

/// The zero test used throughout: `|v| ≤ 1e-9·(1 + scale)`.
pub fn is_zero(v: f64, scale: f64) -> bool {
    v.abs() <= ZERO_REL * (1.0 + scale)
}

pub const ZERO_REL: f64 = 1e-9;

/// Scan density for zero-tolerance scales.
pub const SCALE_SAMPLES: usize = 1024;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn finds_cos2_roots_periodic() {
        let f = |t: f64| (2.0 * t).cos();
        let df = |t: f64| -2.0 * (2.0 * t).sin();
        let r = find_roots(f, Some(df), 0.0, 2.0 * PI, 4096, true);
        let xs: Vec<f64> = r.iter().map(|r| r.x).collect();
        let expect = [PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0];
        assert_eq!(xs.len(), 4);
        for (x, e) in xs.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn root_at_sample_is_reported_once() {
        let r = find_roots(|t: f64| t.sin(), None::<fn(f64) -> f64>, 0.0, 2.0 * PI, 8, true);
        // sin vanishes exactly at 0; the sample at π is only approximately zero
        assert_eq!(r.len(), 2);
        assert!(r[0].x == 0.0 && r[0].crosses);
        assert!((r[1].x - PI).abs() < 1e-12);
    }

    #[test]
    fn touching_zero_detected() {
        let f = |t: f64| 12.0 * t * t;
        let df = |t: f64| 24.0 * t;
        let z = find_touching_zeros(f, df, -1.0, 1.0, 1001, false, 1e-9);
        assert_eq!(z.len(), 1);
        assert!(z[0].abs() < 1e-9);
        let r = find_roots(f, Some(df), -1.0, 1.0, 1001, false);
        assert!(r.iter().all(|r| !r.crosses));
    }
}
