//! Gauss-Legendre rules and adaptive panel integration.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The shared 20-point rule.
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(20))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64) -> Complex64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(c + h * x) * *w;
        }
        acc * h
    }

    /// Composite rule over `panels` equal panels.
    pub fn composite<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|i| self.integrate(&mut f, a + i as f64 * h, a + (i + 1) as f64 * h))
            .sum()
    }
}

const MAX_PANELS: usize = 200_000;

/// Estimates below this multiple of `eps * int |f|` over a panel are
/// treated as rounding noise rather than truncation error.
const ROUNDING_FACTOR: f64 = 8.0;

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    /// Error estimate in excess of the panel's rounding level.
    excess: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.excess == other.excess
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.excess.total_cmp(&other.excess)
    }
}

/// Rule value and `int |f|` on one panel.
fn rule_with_l1<F: Fn(f64) -> Complex64>(rule: &GaussLegendre, f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(c + h * x);
        acc += v * *w;
        l1 += w * v.norm();
    }
    (acc * h, l1 * h.abs())
}

/// Globally adaptive integration with the 20-point rule: the panel with the
/// largest error estimate (difference between the panel and its two halves,
/// less its rounding level) is bisected until the total is below `tol`.
pub fn adaptive_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    adaptive_complex_panels(f, a, b, tol, 1)
}

pub fn adaptive_complex_panels<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    initial_panels: usize,
) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rule = GaussLegendre::standard();
    // panel [lo, hi] given its one-rule value
    let refine = |lo: f64, hi: f64, whole: Complex64| -> Panel {
        let mid = 0.5 * (lo + hi);
        let (l, l1a) = rule_with_l1(rule, &f, lo, mid);
        let (r, l1b) = rule_with_l1(rule, &f, mid, hi);
        let halves = l + r;
        let err = (halves - whole).norm();
        Panel {
            lo,
            hi,
            value: halves,
            excess: (err - ROUNDING_FACTOR * f64::EPSILON * (l1a + l1b)).max(0.0),
        }
    };
    let n = initial_panels.max(1);
    let h = (b - a) / n as f64;
    let mut heap = std::collections::BinaryHeap::new();
    for i in 0..n {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == n { b } else { a + (i + 1) as f64 * h };
        let whole = rule.integrate_complex(&f, lo, hi);
        heap.push(refine(lo, hi, whole));
    }
    let mut err: f64 = heap.iter().map(|p: &Panel| p.excess).sum();
    loop {
        if err <= tol {
            let mut acc = crate::arith::CompensatedSum::new();
            for p in heap.iter() {
                acc.add(p.value);
            }
            return Ok(acc.value());
        }
        let worst = heap.pop().expect("non-empty");
        if heap.len() >= MAX_PANELS || (worst.hi - worst.lo) <= 1e-13 * (b - a).abs() {
            return Err(Error::ToleranceNotMet {
                tol,
                context: format!(
                    "adaptive quadrature stalled on [{}, {}] with error estimate {err:e}",
                    worst.lo, worst.hi
                ),
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let wl = rule.integrate_complex(&f, worst.lo, mid);
        let wr = rule.integrate_complex(&f, mid, worst.hi);
        let l = refine(worst.lo, mid, wl);
        let r = refine(mid, worst.hi, wr);
        err += l.excess + r.excess - worst.excess;
        heap.push(l);
        heap.push(r);
        if heap.len() % 1024 == 0 {
            // refresh the running sum
            err = heap.iter().map(|p| p.excess).sum();
        }
    }
}

pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    adaptive_complex(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|z| z.re)
}

pub fn adaptive_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Result<f64> {
    adaptive_complex_panels(|x| Complex64::new(f(x), 0.0), a, b, tol, panels).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let r = GaussLegendre::new(10);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 19 is exact
        let v = r.integrate(|x| x.powi(18) + x.powi(19), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let one = GaussLegendre::new(1);
        assert_eq!(one.nodes, vec![0.0]);
        assert!((one.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_oscillation_and_kinks() {
        let v = adaptive(|x| (50.0 * x).sin(), 0.0, 3.0, 1e-13).unwrap();
        assert!((v - (1.0 - (150.0f64).cos()) / 50.0).abs() < 1e-12);
        let v = adaptive(|x| x.abs().sqrt(), -1.0, 1.0, 1e-12).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-10);
        let z = adaptive_complex(|x| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!((z - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn adaptive_reports_stall() {
        let r = adaptive(|x| if x > 0.3 { 1.0 / (x - 0.3) } else { 0.0 }, 0.0, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }
}
