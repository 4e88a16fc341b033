//! Compactly supported smooth weights built from the `C^infinity` smoothstep.

use num_complex::Complex64;

use super::jet::Jet;
use crate::arith::e;
use crate::error::{Error, Result};

/// `a(t) = exp(-1/t)` for `t > 0`, else 0.
fn flat(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smoothstep `a(t) / (a(t) + a(1 - t))`: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = flat(t);
        a / (a + flat(1.0 - t))
    }
}

fn smoothstep_jet(t: Jet) -> Jet {
    if t.value() <= 0.0 {
        Jet::constant(0.0)
    } else if t.value() >= 1.0 {
        Jet::constant(1.0)
    } else {
        let a = (-t.recip()).exp();
        let b = (-(-t + 1.0).recip()).exp();
        a / (a + b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    /// Supported on `[1/2, 5/2]` and identically 1 on `[1, 2]`.
    BumpEq1OnUnit2,
    /// Supported on `[1, 2]`, identically 1 on `[1 + 1/delta, 2 - 1/delta]`.
    PlateauDelta(f64),
    /// Supported on `[1, 2]`, peaking at `3/2`.
    SimpleBump,
}

impl Shape {
    pub fn support(self) -> (f64, f64) {
        match self {
            Shape::BumpEq1OnUnit2 => (0.5, 2.5),
            Shape::PlateauDelta(_) | Shape::SimpleBump => (1.0, 2.0),
        }
    }

    pub fn eval(self, u: f64) -> f64 {
        match self {
            Shape::BumpEq1OnUnit2 => smoothstep(2.0 * (u - 0.5)) * smoothstep(2.0 * (2.5 - u)),
            Shape::PlateauDelta(d) => smoothstep(d * (u - 1.0)) * smoothstep(d * (2.0 - u)),
            Shape::SimpleBump => {
                let t = u - 1.0;
                smoothstep(2.0 * t) * smoothstep(2.0 - 2.0 * t)
            }
        }
    }

    /// Taylor jet of the shape at `u`, giving exact derivatives.
    pub fn eval_jet(self, u: f64) -> Jet {
        let x = Jet::variable(u);
        match self {
            Shape::BumpEq1OnUnit2 => smoothstep_jet((x + -0.5).scale(2.0)) * smoothstep_jet((-x + 2.5).scale(2.0)),
            Shape::PlateauDelta(d) => smoothstep_jet((x + -1.0).scale(d)) * smoothstep_jet((-x + 2.0).scale(d)),
            Shape::SimpleBump => smoothstep_jet((x + -1.0).scale(2.0)) * smoothstep_jet((-x + 3.0).scale(2.0) + -2.0),
        }
    }

    /// Width in `u` of the steepest transition; sets the Mellin bandwidth.
    pub fn ramp_width(self) -> f64 {
        match self {
            Shape::PlateauDelta(d) => 1.0 / d,
            _ => 0.5,
        }
    }
}

/// `phi(x) = shape(x / Y) e(beta_r x)`, with derivative-size parameter `P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothWeight {
    pub shape: Shape,
    pub scale: f64,
    pub twist: f64,
    pub derivative_bound: f64,
}

impl SmoothWeight {
    pub fn new(shape: Shape, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidArgument(format!("weight scale must be positive, got {scale}")));
        }
        if let Shape::PlateauDelta(d) = shape {
            if !(d > 2.0) {
                return Err(Error::InvalidArgument(format!("plateau parameter must exceed 2, got {d}")));
            }
        }
        Ok(Self {
            shape,
            scale,
            twist: 0.0,
            derivative_bound: 1.0 / scale,
        })
    }

    pub fn simple(scale: f64) -> Result<Self> {
        Self::new(Shape::SimpleBump, scale)
    }

    pub fn with_twist(mut self, beta_r: f64) -> Self {
        self.twist = beta_r;
        self
    }

    pub fn with_derivative_bound(mut self, p: f64) -> Self {
        self.derivative_bound = p;
        self
    }

    pub fn is_real(&self) -> bool {
        self.twist == 0.0
    }

    /// Support `[a Y, b Y]`.
    pub fn support(&self) -> (f64, f64) {
        let (a, b) = self.shape.support();
        (a * self.scale, b * self.scale)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let v = self.shape.eval(x / self.scale);
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if self.twist == 0.0 {
            Complex64::new(v, 0.0)
        } else {
            e(self.twist * x) * v
        }
    }

    /// Untwisted real part `shape(x / Y)`.
    pub fn eval_real(&self, x: f64) -> f64 {
        self.shape.eval(x / self.scale)
    }

    /// The unit-scale integrand `shape(u) e(beta_r Y u)`.
    pub fn unit(&self, u: f64) -> Complex64 {
        let v = self.shape.eval(u);
        if v == 0.0 || self.twist == 0.0 {
            Complex64::new(v, 0.0)
        } else {
            e(self.twist * self.scale * u) * v
        }
    }

    /// Twist frequency in unit coordinates, `|beta_r| Y`.
    pub fn unit_frequency(&self) -> f64 {
        (self.twist * self.scale).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn derivative(f: &dyn Fn(f64) -> f64, x: f64, j: u32, h: f64) -> f64 {
        match j {
            0 => f(x),
            _ => (derivative(f, x + h, j - 1, h) - derivative(f, x - h, j - 1, h)) / (2.0 * h),
        }
    }

    #[test]
    fn supports_and_plateaus() {
        for shape in [Shape::BumpEq1OnUnit2, Shape::PlateauDelta(8.0), Shape::SimpleBump] {
            let (a, b) = shape.support();
            assert_eq!(shape.eval(a), 0.0);
            assert_eq!(shape.eval(b), 0.0);
            assert_eq!(shape.eval(a - 0.1), 0.0);
            assert_eq!(shape.eval(b + 0.1), 0.0);
            assert!(shape.eval(0.5 * (a + b)) > 0.0);
        }
        for u in [1.0, 1.3, 2.0] {
            assert_eq!(Shape::BumpEq1OnUnit2.eval(u), 1.0);
        }
        assert_eq!(Shape::PlateauDelta(8.0).eval(1.125), 1.0);
        assert_eq!(Shape::PlateauDelta(8.0).eval(1.875), 1.0);
        assert!(Shape::PlateauDelta(8.0).eval(1.1) < 1.0);
        assert_eq!(Shape::SimpleBump.eval(1.5), 1.0);
    }

    #[test]
    fn plateau_derivatives_scale_with_delta() {
        // max |U^{(j)}| / Delta^j stays bounded as Delta grows
        for j in 1..=3u32 {
            let ratio = |d: f64| {
                let h = 1e-3 / d;
                (0..2000)
                    .map(|i| 1.0 + i as f64 / 1999.0)
                    .map(|u| derivative(&|x| Shape::PlateauDelta(d).eval(x), u, j, h).abs())
                    .fold(0.0, f64::max)
                    / d.powi(j as i32)
            };
            let (r1, r2) = (ratio(8.0), ratio(32.0));
            assert!(r2 < 1.5 * r1 && r1 < 1.5 * r2, "j={j}: {r1} {r2}");
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        for shape in [Shape::BumpEq1OnUnit2, Shape::PlateauDelta(5.0), Shape::SimpleBump] {
            for u in [0.8, 1.1, 1.33, 1.9, 2.2] {
                let jet = shape.eval_jet(u);
                assert_eq!(jet.value(), shape.eval(u));
                for j in 1..=2u32 {
                    let fd = derivative(&|x| shape.eval(x), u, j, 1e-4);
                    let d = jet.derivative(j as usize);
                    assert!((fd - d).abs() < 1e-5 * (1.0 + d.abs()), "{shape:?} {u} {j}: {fd} {d}");
                }
            }
        }
    }

    #[test]
    fn twist_and_scale() {
        let w = SmoothWeight::simple(100.0).unwrap().with_twist(0.01);
        let z = w.eval(150.0);
        assert!((z.norm() - 1.0).abs() < 1e-15);
        assert!((z - e(1.5)).norm() < 1e-14);
        assert!(SmoothWeight::simple(-1.0).is_err());
        assert!(SmoothWeight::new(Shape::PlateauDelta(1.5), 1.0).is_err());
    }
}
