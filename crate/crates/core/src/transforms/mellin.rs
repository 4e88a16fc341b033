//! Mellin transforms of smooth weights, evaluated on the unit-scale shape
//! with the scale factored out analytically: `phi~(s) = Y^s w~(s)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::adaptive_complex_panels;
use super::weight::SmoothWeight;
use crate::error::Result;

/// `w~(s) = int shape(u) e(beta_r Y u) u^{s-1} du` by adaptive Gauss-Legendre.
pub fn mellin_unit(weight: &SmoothWeight, s: Complex64, tol: f64) -> Result<Complex64> {
    let (a, b) = weight.shape.support();
    // panels resolve both the ramps and the oscillation of u^{i t}, e(beta_r Y u)
    let osc = (s.im.abs() * (b / a).ln() + 2.0 * PI * weight.unit_frequency() * (b - a)) / PI;
    let panels = (osc.ceil() as usize + (b - a) as usize * 4 + 4).max((4.0 * (b - a) / weight.shape.ramp_width()) as usize);
    adaptive_complex_panels(|u| weight.unit(u) * Complex64::new(u, 0.0).powc(s - 1.0), a, b, tol, panels)
}

/// `phi~(s) = Y^s w~(s)`.
pub fn mellin(weight: &SmoothWeight, s: Complex64, tol: f64) -> Result<Complex64> {
    Ok(Complex64::new(weight.scale, 0.0).powc(s) * mellin_unit(weight, s, tol)?)
}

/// `int phi(u) (log u)^j du`, the `j`-th derivative of `phi~` at `s = 1`.
pub fn mellin_log_moment(weight: &SmoothWeight, j: u32, tol: f64) -> Result<Complex64> {
    let (a, b) = weight.shape.support();
    let ly = weight.scale.ln();
    let panels = (2.0 * weight.unit_frequency() * (b - a)).ceil() as usize + 8;
    let unit = adaptive_complex_panels(|u| weight.unit(u) * (ly + u.ln()).powi(j as i32), a, b, tol, panels)?;
    Ok(unit * weight.scale)
}

/// Trapezoid sum on a uniform grid in `v = log u`. The integrand
/// `shape(e^v) e(...) e^{v s}` is smooth and compactly supported, so the sum
/// is spectrally accurate for `|Im s|` well below the grid's Nyquist limit.
///
/// For untwisted weights a second grid holds `w^{(J)}(e^v) e^{J v}`; after
/// `J` integrations by parts its sum is divided by `s (s+1) ... (s+J-1)`,
/// which keeps the rounding floor far below `|w~(s)|` at large `|Im s|`.
#[derive(Clone, Debug)]
pub struct LogGridMellin {
    v0: f64,
    dv: f64,
    samples: Vec<Complex64>,
    by_parts: Option<Vec<Complex64>>,
}

const BY_PARTS_ORDER: usize = 4;
const BY_PARTS_FROM: f64 = 40.0;

impl LogGridMellin {
    /// Grid resolving `|Im s| <= t_max`.
    pub fn new(weight: &SmoothWeight, t_max: f64) -> Self {
        let (a, b) = weight.shape.support();
        // Frequency band of the sampled function; tripled so the fourth
        // derivative (spectrum amplified by |t|^4) is resolved as well.
        let band = 800.0 / weight.shape.ramp_width() + 2.0 * PI * weight.unit_frequency() * b;
        let dv = 2.0 * PI / (t_max + 3.0 * band);
        let (v0, v1) = (a.ln(), b.ln());
        let n = ((v1 - v0) / dv).ceil() as usize + 1;
        let samples = (0..=n)
            .map(|i| {
                let v = v0 + i as f64 * dv;
                weight.unit(v.exp())
            })
            .collect();
        let by_parts = weight.is_real().then(|| {
            (0..=n)
                .map(|i| {
                    let v = v0 + i as f64 * dv;
                    let d = weight.shape.eval_jet(v.exp()).derivative(BY_PARTS_ORDER);
                    Complex64::new(d * (BY_PARTS_ORDER as f64 * v).exp(), 0.0)
                })
                .collect()
        });
        Self { v0, dv, samples, by_parts }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        match &self.by_parts {
            Some(g) if s.im.abs() >= BY_PARTS_FROM => {
                let mut rising = Complex64::new(1.0, 0.0);
                for j in 0..BY_PARTS_ORDER {
                    rising *= s + j as f64;
                }
                let sign = if BY_PARTS_ORDER % 2 == 0 { 1.0 } else { -1.0 };
                self.sum(g, s) * sign / rising
            }
            _ => self.sum(&self.samples, s),
        }
    }

    fn sum(&self, samples: &[Complex64], s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let step = (s * self.dv).exp();
        let mut rot = Complex64::new(0.0, 0.0);
        for (i, &g) in samples.iter().enumerate() {
            if i % 16 == 0 {
                rot = (s * (self.v0 + i as f64 * self.dv)).exp();
            }
            acc += g * rot;
            rot *= step;
        }
        acc * self.dv
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::weight::Shape;

    fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        (0..=n)
            .map(|i| {
                let v = f(a + i as f64 * h);
                if i == 0 || i == n {
                    0.5 * v
                } else {
                    v
                }
            })
            .sum::<f64>()
            * h
    }

    #[test]
    fn value_at_one_is_the_integral() {
        let w = SmoothWeight::simple(1.0).unwrap();
        let area = trapezoid(|u| w.eval_real(u), 1.0, 2.0, 100_000);
        let at_one = mellin(&w, Complex64::new(1.0, 0.0), 1e-13).unwrap();
        assert!((at_one.re - area).abs() < 1e-10);
        assert!((at_one / area - 1.0).norm() < 1e-10);
        let m0 = mellin_log_moment(&w, 0, 1e-13).unwrap();
        assert!((at_one - m0).norm() < 1e-13);
    }

    #[test]
    fn scaling_law() {
        let unit = SmoothWeight::new(Shape::BumpEq1OnUnit2, 1.0).unwrap();
        let big = SmoothWeight::new(Shape::BumpEq1OnUnit2, 777.0).unwrap();
        for s in [Complex64::new(1.0, 0.0), Complex64::new(0.3, 5.0), Complex64::new(-1.2, -40.0)] {
            let lhs = mellin(&big, s, 1e-13).unwrap();
            let rhs = Complex64::new(777.0, 0.0).powc(s) * mellin(&unit, s, 1e-13).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
        }
        let m1 = mellin_log_moment(&big, 0, 1e-13).unwrap();
        assert!((m1.re - 777.0 * mellin_log_moment(&unit, 0, 1e-13).unwrap().re).abs() < 1e-9 * m1.re);
    }

    #[test]
    fn second_log_moment_against_trapezoid() {
        let w = SmoothWeight::simple(1.0).unwrap();
        let trap = trapezoid(|u| w.eval_real(u) * u.ln().powi(2), 1.0, 2.0, 200_000);
        let got = mellin_log_moment(&w, 2, 1e-14).unwrap().re;
        assert!((got - trap).abs() < 1e-9);
    }

    #[test]
    fn integration_by_parts_branch_agrees() {
        let w = SmoothWeight::new(Shape::BumpEq1OnUnit2, 1.0).unwrap();
        let grid = LogGridMellin::new(&w, 400.0);
        for s in [Complex64::new(-0.5, 45.0), Complex64::new(0.5, -120.0)] {
            let direct = grid.sum(&grid.samples, s);
            let parts = grid.eval(s);
            assert!((direct - parts).norm() < 1e-13, "{s}: {direct} vs {parts}");
        }
    }

    #[test]
    fn log_grid_matches_adaptive() {
        for shape in [Shape::SimpleBump, Shape::BumpEq1OnUnit2, Shape::PlateauDelta(6.0)] {
            let w = SmoothWeight::new(shape, 1.0).unwrap();
            let grid = LogGridMellin::new(&w, 300.0);
            for s in [Complex64::new(0.5, 0.0), Complex64::new(-0.5, 30.0), Complex64::new(1.5, -290.0)] {
                let a = mellin_unit(&w, s, 1e-14).unwrap();
                let b = grid.eval(s);
                assert!((a - b).norm() < 1e-12, "{shape:?} {s}: {a} vs {b}");
            }
        }
    }
}
