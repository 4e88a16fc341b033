//! GL(2) Voronoi kernels.
//!
//! For a holomorphic form of weight `k` the dual side has only the `-`
//! sign, with `Psi^-(y) = 2 pi i^k int psi(v) J_{k-1}(4 pi sqrt(yv)) dv`.
//! The Maass kernels with `Y_{+-2i mu}` and `K_{2i mu}` need the `maass`
//! feature.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::bessel_j_dd;
use super::quad::adaptive_complex_panels;
use super::spectral::SpectralParams;
use super::weight::SmoothWeight;
use crate::error::{Error, Result};

/// `Psi^+` is `None` where the kernel is identically absent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiPair {
    pub plus: Option<Complex64>,
    pub minus: Complex64,
}

#[derive(Clone, Debug)]
pub struct Gl2Kernel {
    params: SpectralParams,
    weight: SmoothWeight,
    tolerance: f64,
}

impl Gl2Kernel {
    pub fn new(params: SpectralParams, weight: SmoothWeight, tolerance: f64) -> Result<Self> {
        match params {
            SpectralParams::Gl2Holomorphic { .. } => {}
            SpectralParams::Gl2Maass { .. } => {
                if !cfg!(feature = "maass") {
                    return Err(Error::UnsupportedKernel(
                        "Maass-form kernels need the `maass` feature",
                    ));
                }
            }
            SpectralParams::Gl3(_) => return Err(Error::UnsupportedKernel("GL(3) parameters given to a GL(2) kernel")),
        }
        Ok(Self {
            params,
            weight,
            tolerance,
        })
    }

    pub fn weight(&self) -> &SmoothWeight {
        &self.weight
    }

    /// `Y int w(u) e(...) B(4 pi sqrt(z u)) du` with `z = yY`.
    fn transform<B: Fn(f64, f64) -> f64>(&self, y: f64, bessel: B) -> Result<Complex64> {
        let scale = self.weight.scale;
        let z = y * scale;
        let (a, b) = self.weight.shape.support();
        let phase = 4.0 * PI * z.sqrt() * (b.sqrt() - a.sqrt());
        let panels = (phase / PI).ceil() as usize + (2.0 * PI * self.weight.unit_frequency()).ceil() as usize + 8;
        let w = self.weight;
        let v = adaptive_complex_panels(
            |u| {
                let (hi, lo) = bessel_argument(z, u);
                w.unit(u) * bessel(hi, lo)
            },
            a,
            b,
            self.tolerance,
            panels,
        )?;
        Ok(v * scale)
    }

    pub fn eval(&self, y: f64) -> Result<PsiPair> {
        if y < 0.0 {
            return Err(Error::InvalidArgument(format!("Psi needs y >= 0, got {y}")));
        }
        match self.params {
            SpectralParams::Gl2Holomorphic { k } => {
                let ik = match k % 4 {
                    0 => 1.0,
                    2 => -1.0,
                    _ => unreachable!("holomorphic weight is even"),
                };
                let v = self.transform(y, |hi, lo| bessel_j_dd(k - 1, hi, lo))?;
                Ok(PsiPair {
                    plus: None,
                    minus: v * (2.0 * PI * ik),
                })
            }
            #[cfg(feature = "maass")]
            SpectralParams::Gl2Maass { mu } => {
                use super::bessel::{bessel_k_imag, bessel_y_imag_pair};
                let nu = 2.0 * mu;
                let minus = if y == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    self.transform(y, |hi, lo| bessel_y_imag_pair(nu, hi + lo))? * (-PI / (PI * mu).cosh())
                };
                let plus = if y == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    self.transform(y, |hi, lo| bessel_k_imag(nu, hi + lo))? * (4.0 * (PI * mu).cosh())
                };
                Ok(PsiPair {
                    plus: Some(plus),
                    minus,
                })
            }
            _ => Err(Error::UnsupportedKernel("kernel not available in this build")),
        }
    }
}

/// `(Psi^+(y), Psi^-(y))` for GL(2) data `params`.
pub fn psi_pm(y: f64, params: SpectralParams, weight: &SmoothWeight, tolerance: f64) -> Result<PsiPair> {
    Gl2Kernel::new(params, *weight, tolerance)?.eval(y)
}

/// `4 pi sqrt(z u)` as an unevaluated sum `hi + lo`.
fn bessel_argument(z: f64, u: f64) -> (f64, f64) {
    const FOUR_PI_HI: f64 = 12.566370614359172;
    const FOUR_PI_LO: f64 = 4.898587196589413e-16;
    let p = z * u;
    let pe = z.mul_add(u, -p);
    let r = p.sqrt();
    if r == 0.0 {
        return (0.0, 0.0);
    }
    let re = ((-r).mul_add(r, p) + pe) / (2.0 * r);
    let hi = FOUR_PI_HI * r;
    let lo = FOUR_PI_HI.mul_add(r, -hi) + FOUR_PI_HI * re + FOUR_PI_LO * r;
    let x = hi + lo;
    (x, lo - (x - hi))
}
